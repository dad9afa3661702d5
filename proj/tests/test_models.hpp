#pragma once

#include "hbral/hmm.hpp"

// Hand-entered models shared across test files.

namespace fixtures {

// The published three-scenario model: states Kitchen / LivingRoom /
// Bathroom, transition and initial rows as given, emission completed by
// cyclic rotation of the single given row (0.1, 0.7, 0.2).
inline hbral::HmmModel paper_model() {
    hbral::HmmModel m;
    m.n_states = 3;
    m.n_symbols = 3;
    m.transition = {{0.1, 0.8, 0.1}, {0.05, 0.9, 0.05}, {0.05, 0.15, 0.8}};
    m.emission = {{0.7, 0.2, 0.1}, {0.1, 0.7, 0.2}, {0.2, 0.1, 0.7}};
    m.initial = {0.7, 0.2, 0.1};
    m.state_labels = {"Kitchen", "LivingRoom", "Bathroom"};
    m.symbol_labels = {"Kitchen", "LivingRoom", "Bathroom"};
    return m;
}

// Same transition/initial but noiseless observation of the state.
inline hbral::HmmModel paper_model_identity_emission() {
    hbral::HmmModel m = paper_model();
    m.emission = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    return m;
}

inline hbral::HmmModel identity_model(int n) {
    hbral::HmmModel m;
    m.n_states = n;
    m.n_symbols = n;
    m.transition.assign(n, hbral::Vector(n, 0.0));
    m.emission.assign(n, hbral::Vector(n, 0.0));
    for (int i = 0; i < n; ++i) m.transition[i][i] = m.emission[i][i] = 1.0;
    m.initial.assign(n, 1.0 / n);
    return m;
}

}  // namespace fixtures
