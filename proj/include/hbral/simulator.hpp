#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbral/grammar.hpp"
#include "hbral/hmm.hpp"
#include "hbral/rng.hpp"

// Seeded daily-living simulation: a hidden room path sampled from the
// model, observed through an additive-noise channel
//     O_n = Q_n + V_n,   V_n ~ Normal(0, sigma^2) i.i.d.
// (the state-to-observation map is the identity on state indices).
// Real-valued observations are quantized to symbols by rounding to the
// nearest state index and clamping to [0, N-1].

namespace hbral {

struct SimulationConfig {
    HbralHierarchy hierarchy;
    HmmModel model;            // states must be labeled with room types
    int start_minutes = 420;   // 07:00
    int end_minutes = 720;     // 12:00
    int step_minutes = 1;
    double noise_sigma = 0.5;  // in state-index units; not a measured value
    std::uint64_t seed = 0;
};

struct SimulationTrace {
    std::vector<int> times;            // minute stamps, start + i*step
    std::vector<int> hidden_states;    // Q_n
    std::vector<double> observations;  // O_n = Q_n + V_n
    std::vector<int> quantized_observations;
    std::vector<std::string> state_labels;  // copied from the model
};

namespace detail {

// splitmix streams: 0 = hidden path, 1 = observation noise; stream 2 is
// reserved for activity choice in trace_to_scenario.
inline constexpr std::uint64_t kPathStream = 0;
inline constexpr std::uint64_t kNoiseStream = 1;
inline constexpr std::uint64_t kActivityStream = 2;

}  // namespace detail

inline int quantize_observation(double value, int n_states) {
    const long rounded = std::lround(value);
    if (rounded < 0) return 0;
    if (rounded > n_states - 1) return n_states - 1;
    return static_cast<int>(rounded);
}

inline void check_config(const SimulationConfig& config) {
    if (config.end_minutes <= config.start_minutes)
        throw std::invalid_argument("end_minutes (" + std::to_string(config.end_minutes) +
                                    ") must exceed start_minutes (" +
                                    std::to_string(config.start_minutes) + ")");
    if (config.step_minutes < 1)
        throw std::invalid_argument("step_minutes must be at least 1, got " +
                                    std::to_string(config.step_minutes));
    if (config.step_minutes > config.end_minutes - config.start_minutes)
        throw std::invalid_argument("step_minutes larger than the simulation window");
    if (!(config.noise_sigma >= 0.0))
        throw std::invalid_argument("noise_sigma must be non-negative");
    auto model_report = validate_model(config.model);
    if (!model_report.ok())
        throw std::invalid_argument("model: " + model_report.violations.front().text());
}

// Deterministic under (config, seed): the hidden path comes from one
// derived stream, the noise from another, so changing sigma alone never
// changes the hidden states.
inline SimulationTrace simulate(const SimulationConfig& config) {
    check_config(config);

    const std::size_t n_steps = static_cast<std::size_t>(
        (config.end_minutes - config.start_minutes) / config.step_minutes);

    auto [path, symbols] = sample_path(config.model, n_steps,
                                       derive_seed(config.seed, detail::kPathStream));
    (void)symbols;  // the observation channel below replaces discrete emission

    SimulationTrace trace;
    trace.times.reserve(n_steps);
    trace.observations.reserve(n_steps);
    trace.quantized_observations.reserve(n_steps);
    trace.hidden_states = std::move(path.states);
    trace.state_labels = config.model.state_labels;

    std::mt19937_64 noise_rng(derive_seed(config.seed, detail::kNoiseStream));
    for (std::size_t i = 0; i < n_steps; ++i) {
        trace.times.push_back(config.start_minutes +
                              static_cast<int>(i) * config.step_minutes);
        const double noise = config.noise_sigma * standard_normal(noise_rng);
        const double observed = static_cast<double>(trace.hidden_states[i]) + noise;
        trace.observations.push_back(observed);
        trace.quantized_observations.push_back(
            quantize_observation(observed, config.model.n_states));
    }
    return trace;
}

// Collapses maximal same-state runs into timed events. The room comes
// from the state label; the activity is drawn uniformly from that
// room's activity list (seeded), with the activity's full object set.
inline Scenario trace_to_scenario(const SimulationTrace& trace, const HbralHierarchy& h,
                                  std::uint64_t seed) {
    if (trace.times.empty()) throw std::invalid_argument("empty trace");
    if (trace.hidden_states.size() != trace.times.size())
        throw std::invalid_argument("trace times and hidden_states differ in length");

    const int step = trace.times.size() >= 2 ? trace.times[1] - trace.times[0] : 1;
    Scenario scenario;
    scenario.start = trace.times.front();
    scenario.end = trace.times.back() + step;

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trace.hidden_states.size();) {
        const int state = trace.hidden_states[i];
        if (state < 0 || static_cast<std::size_t>(state) >= trace.state_labels.size())
            throw std::invalid_argument("trace state " + std::to_string(state) +
                                        " has no label");
        const std::string& room = trace.state_labels[state];
        if (!h.find_room(room))
            throw std::invalid_argument("state label '" + room +
                                        "' has no matching room in the hierarchy");
        auto acts = h.activities.find(room);
        if (acts == h.activities.end() || acts->second.empty())
            throw std::invalid_argument("room '" + room + "' has no activities");

        const auto& choices = acts->second;
        auto pick = static_cast<std::size_t>(uniform01(rng) *
                                             static_cast<double>(choices.size()));
        if (pick >= choices.size()) pick = choices.size() - 1;
        const std::string& activity = choices[pick];

        TimedEvent event;
        event.timestamp = trace.times[i];
        event.room = room;
        event.activity = activity;
        auto objs = h.activity_objects.find(activity);
        if (objs != h.activity_objects.end())
            event.objects.insert(objs->second.begin(), objs->second.end());
        scenario.events.push_back(std::move(event));

        while (i < trace.hidden_states.size() && trace.hidden_states[i] == state) ++i;
    }
    return scenario;
}

}  // namespace hbral
