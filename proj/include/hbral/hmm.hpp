#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hbral/rng.hpp"
#include "hbral/validation.hpp"

// Discrete hidden Markov model: representation, validation and exact
// inference (forward likelihood, Viterbi decoding, forward-backward
// smoothing, ancestral sampling). All recursions run in log space so
// that sequences of several hundred steps do not underflow; log(0) is
// represented as -infinity and never turns into NaN.

namespace hbral {

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Absolute tolerance on each row sum. Loose enough for matrices entered
// as short decimals, tight enough to catch genuine mistakes.
inline constexpr double kRowSumTolerance = 1e-9;

struct HmmModel {
    int n_states = 0;
    int n_symbols = 0;
    Matrix transition;  // n_states x n_states, row stochastic
    Matrix emission;    // n_states x n_symbols, row stochastic
    Vector initial;     // length n_states
    std::vector<std::string> state_labels;
    std::vector<std::string> symbol_labels;
};

// A decoded (or sampled) hidden-state sequence together with its joint
// log-probability log P(states, observations | model), natural log.
struct StatePath {
    std::vector<int> states;
    double log_probability = 0.0;
};

namespace detail {

inline double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

inline double log_sum_exp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Structural consistency only (no row-sum checks); throwing here keeps
// the inference routines free of out-of-bounds access on models that
// were never validated.
inline void check_shape(const HmmModel& m) {
    if (m.n_states <= 0 || m.n_symbols <= 0)
        throw std::invalid_argument("model: n_states and n_symbols must be positive");
    auto check_matrix = [&](const Matrix& mat, std::size_t rows, std::size_t cols,
                            const char* name) {
        if (mat.size() != rows)
            throw std::invalid_argument(std::string("model: ") + name + " has " +
                                        std::to_string(mat.size()) + " rows; expected " +
                                        std::to_string(rows));
        for (const auto& row : mat) {
            if (row.size() != cols)
                throw std::invalid_argument(std::string("model: ") + name +
                                            " row has " + std::to_string(row.size()) +
                                            " entries; expected " + std::to_string(cols));
        }
    };
    check_matrix(m.transition, m.n_states, m.n_states, "transition");
    check_matrix(m.emission, m.n_states, m.n_symbols, "emission");
    if (m.initial.size() != static_cast<std::size_t>(m.n_states))
        throw std::invalid_argument("model: initial has " +
                                    std::to_string(m.initial.size()) +
                                    " entries; expected " + std::to_string(m.n_states));
}

inline void check_observations(const HmmModel& m, std::span<const int> obs) {
    if (obs.empty()) throw std::invalid_argument("empty observation sequence");
    for (std::size_t t = 0; t < obs.size(); ++t) {
        if (obs[t] < 0 || obs[t] >= m.n_symbols)
            throw std::invalid_argument("observation symbol " + std::to_string(obs[t]) +
                                        " at position " + std::to_string(t) +
                                        " is outside [0, " + std::to_string(m.n_symbols) +
                                        ")");
    }
}

inline void check_stochastic_row(ValidationReport& report, std::span<const double> row,
                                 const std::string& where) {
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] < 0.0 || row[i] > 1.0)
            report.add(where, "entry " + std::to_string(i) + " = " +
                                  std::to_string(row[i]) + " is outside [0, 1]");
        sum += row[i];
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
        report.add(where, "sums to " + std::to_string(sum) + ", expected 1");
}

}  // namespace detail

// Checks dimensions, label lists and row-stochasticity. Never throws;
// every problem is reported as a Violation.
inline ValidationReport validate_model(const HmmModel& m) {
    ValidationReport report;
    if (m.n_states <= 0) report.add("n_states", "must be positive");
    if (m.n_symbols <= 0) report.add("n_symbols", "must be positive");
    if (!report.ok()) return report;

    const auto n = static_cast<std::size_t>(m.n_states);
    const auto k = static_cast<std::size_t>(m.n_symbols);

    auto check_matrix = [&](const Matrix& mat, std::size_t cols, const std::string& name) {
        if (mat.size() != n) {
            report.add(name, "has " + std::to_string(mat.size()) + " rows; expected " +
                                 std::to_string(n) + " (one per state)");
            return;
        }
        for (std::size_t r = 0; r < mat.size(); ++r) {
            const std::string where = name + " row " + std::to_string(r);
            if (mat[r].size() != cols) {
                report.add(where, "has " + std::to_string(mat[r].size()) +
                                      " entries; expected " + std::to_string(cols));
                continue;
            }
            detail::check_stochastic_row(report, mat[r], where);
        }
    };
    check_matrix(m.transition, n, "transition");
    check_matrix(m.emission, k, "emission");

    if (m.initial.size() != n)
        report.add("initial", "has " + std::to_string(m.initial.size()) +
                                  " entries; expected " + std::to_string(n));
    else
        detail::check_stochastic_row(report, m.initial, "initial");

    if (!m.state_labels.empty() && m.state_labels.size() != n)
        report.add("state_labels", "has " + std::to_string(m.state_labels.size()) +
                                       " names; expected " + std::to_string(n));
    if (!m.symbol_labels.empty() && m.symbol_labels.size() != k)
        report.add("symbol_labels", "has " + std::to_string(m.symbol_labels.size()) +
                                        " names; expected " + std::to_string(k));
    return report;
}

// log P(observations | model) by the forward recursion.
inline double forward_likelihood(const HmmModel& m, std::span<const int> obs) {
    detail::check_shape(m);
    detail::check_observations(m, obs);

    const int n = m.n_states;
    Vector alpha(n), next(n);
    for (int i = 0; i < n; ++i)
        alpha[i] = detail::safe_log(m.initial[i]) +
                   detail::safe_log(m.emission[i][obs[0]]);

    Vector terms(n);
    for (std::size_t t = 1; t < obs.size(); ++t) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i)
                terms[i] = alpha[i] + detail::safe_log(m.transition[i][j]);
            next[j] = detail::log_sum_exp(terms) +
                      detail::safe_log(m.emission[j][obs[t]]);
        }
        alpha.swap(next);
    }
    return detail::log_sum_exp(alpha);
}

// Maximum-probability state path. Ties are broken toward the lowest
// state index, both at each backtrack step and at the final state, so
// the result is deterministic.
inline StatePath viterbi_decode(const HmmModel& m, std::span<const int> obs) {
    detail::check_shape(m);
    detail::check_observations(m, obs);

    const int n = m.n_states;
    const std::size_t len = obs.size();
    Matrix delta(len, Vector(n));
    std::vector<std::vector<int>> psi(len, std::vector<int>(n, 0));

    for (int i = 0; i < n; ++i)
        delta[0][i] = detail::safe_log(m.initial[i]) +
                      detail::safe_log(m.emission[i][obs[0]]);

    for (std::size_t t = 1; t < len; ++t) {
        for (int j = 0; j < n; ++j) {
            double best = delta[t - 1][0] + detail::safe_log(m.transition[0][j]);
            int arg = 0;
            for (int i = 1; i < n; ++i) {
                const double cand = delta[t - 1][i] + detail::safe_log(m.transition[i][j]);
                if (cand > best) {
                    best = cand;
                    arg = i;
                }
            }
            delta[t][j] = best + detail::safe_log(m.emission[j][obs[t]]);
            psi[t][j] = arg;
        }
    }

    int last = 0;
    for (int j = 1; j < n; ++j)
        if (delta[len - 1][j] > delta[len - 1][last]) last = j;

    StatePath path;
    path.states.resize(len);
    path.states[len - 1] = last;
    for (std::size_t t = len - 1; t > 0; --t)
        path.states[t - 1] = psi[t][path.states[t]];
    path.log_probability = delta[len - 1][last];
    return path;
}

// Forward-backward smoothing: per-step posterior distribution over
// states given the whole observation sequence. Each returned row is
// normalized to sum to 1.
inline Matrix posterior_marginals(const HmmModel& m, std::span<const int> obs) {
    detail::check_shape(m);
    detail::check_observations(m, obs);

    const int n = m.n_states;
    const std::size_t len = obs.size();
    Matrix alpha(len, Vector(n)), beta(len, Vector(n, 0.0));
    Vector terms(n);

    for (int i = 0; i < n; ++i)
        alpha[0][i] = detail::safe_log(m.initial[i]) +
                      detail::safe_log(m.emission[i][obs[0]]);
    for (std::size_t t = 1; t < len; ++t) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i)
                terms[i] = alpha[t - 1][i] + detail::safe_log(m.transition[i][j]);
            alpha[t][j] = detail::log_sum_exp(terms) +
                          detail::safe_log(m.emission[j][obs[t]]);
        }
    }
    for (std::size_t t = len - 1; t > 0; --t) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                terms[j] = detail::safe_log(m.transition[i][j]) +
                           detail::safe_log(m.emission[j][obs[t]]) + beta[t][j];
            beta[t - 1][i] = detail::log_sum_exp(terms);
        }
    }

    const double log_likelihood = detail::log_sum_exp(alpha[len - 1]);
    if (log_likelihood == kNegInf)
        throw std::domain_error(
            "observation sequence has zero probability under the model");

    Matrix gamma(len, Vector(n));
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            gamma[t][i] = std::exp(alpha[t][i] + beta[t][i] - log_likelihood);
            sum += gamma[t][i];
        }
        for (int i = 0; i < n; ++i) gamma[t][i] /= sum;
    }
    return gamma;
}

// Joint log-probability of a specific (states, observations) pairing.
inline double path_log_probability(const HmmModel& m, std::span<const int> states,
                                   std::span<const int> obs) {
    detail::check_shape(m);
    detail::check_observations(m, obs);
    if (states.size() != obs.size())
        throw std::invalid_argument("state path length " + std::to_string(states.size()) +
                                    " does not match observation length " +
                                    std::to_string(obs.size()));
    for (int s : states)
        if (s < 0 || s >= m.n_states)
            throw std::invalid_argument("state index " + std::to_string(s) +
                                        " is outside [0, " + std::to_string(m.n_states) +
                                        ")");

    double lp = detail::safe_log(m.initial[states[0]]) +
                detail::safe_log(m.emission[states[0]][obs[0]]);
    for (std::size_t t = 1; t < states.size(); ++t)
        lp += detail::safe_log(m.transition[states[t - 1]][states[t]]) +
              detail::safe_log(m.emission[states[t]][obs[t]]);
    return lp;
}

// Draws a hidden path from (initial, transition) and a symbol per step
// from the emission rows. Bit-identical output for identical
// (model, length, seed) triples; one state draw then one symbol draw
// per step.
inline std::pair<StatePath, std::vector<int>> sample_path(const HmmModel& m,
                                                          std::size_t length,
                                                          std::uint64_t seed) {
    detail::check_shape(m);
    if (length == 0) throw std::invalid_argument("sample length must be at least 1");

    std::mt19937_64 rng(seed);
    StatePath path;
    path.states.reserve(length);
    std::vector<int> symbols;
    symbols.reserve(length);

    double lp = 0.0;
    int state = static_cast<int>(sample_index(m.initial, rng));
    for (std::size_t t = 0; t < length; ++t) {
        if (t > 0) state = static_cast<int>(sample_index(m.transition[state], rng));
        const int symbol = static_cast<int>(sample_index(m.emission[state], rng));
        lp += (t == 0 ? detail::safe_log(m.initial[state])
                      : detail::safe_log(m.transition[path.states[t - 1]][state])) +
              detail::safe_log(m.emission[state][symbol]);
        path.states.push_back(state);
        symbols.push_back(symbol);
    }
    path.log_probability = lp;
    return {std::move(path), std::move(symbols)};
}

}  // namespace hbral
