#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbral/hmm.hpp"
#include "hbral/simulator.hpp"

// Prediction-quality measurements: per-step error series
//     E_t = R_t - P_t
// (real state minus predicted state), error counting, and the
// end-to-end simulate -> decode -> compare experiment.

namespace hbral {

struct ErrorSeries {
    std::vector<int> times;
    std::vector<int> real_states;
    std::vector<int> predicted_states;
    std::vector<int> errors;  // errors[i] = real_states[i] - predicted_states[i]
};

struct EvaluationReport {
    std::size_t steps = 0;
    std::size_t error_count = 0;  // steps with E_t != 0
    double error_rate = 0.0;
    int min_error = 0;
    int max_error = 0;
    double log_likelihood = 0.0;  // forward log P(O | model), natural log

    bool within_unit_range() const { return min_error >= -1 && max_error <= 1; }
};

inline ErrorSeries compare(const std::vector<int>& real,
                           const std::vector<int>& predicted,
                           const std::vector<int>& times) {
    if (real.size() != predicted.size())
        throw std::invalid_argument("sequence lengths differ: real has " +
                                    std::to_string(real.size()) + ", predicted has " +
                                    std::to_string(predicted.size()));
    if (times.size() != real.size())
        throw std::invalid_argument("sequence lengths differ: real has " +
                                    std::to_string(real.size()) + ", times has " +
                                    std::to_string(times.size()));
    if (real.empty()) throw std::invalid_argument("empty sequences");

    ErrorSeries series;
    series.times = times;
    series.real_states = real;
    series.predicted_states = predicted;
    series.errors.reserve(real.size());
    for (std::size_t i = 0; i < real.size(); ++i)
        series.errors.push_back(real[i] - predicted[i]);
    return series;
}

inline EvaluationReport summarize(const ErrorSeries& series, const HmmModel& model,
                                  const std::vector<int>& observations) {
    EvaluationReport report;
    report.steps = series.errors.size();
    report.min_error = *std::min_element(series.errors.begin(), series.errors.end());
    report.max_error = *std::max_element(series.errors.begin(), series.errors.end());
    for (int e : series.errors)
        if (e != 0) ++report.error_count;
    report.error_rate =
        static_cast<double>(report.error_count) / static_cast<double>(report.steps);
    report.log_likelihood = forward_likelihood(model, observations);
    return report;
}

// Log-likelihood advantage of `model` over a maximally uninformative
// model of the same dimensions (uniform initial, transition and
// emission). Stands in for a likelihood ratio when no alternative
// model is given.
inline double log_likelihood_vs_uniform(const HmmModel& model,
                                        const std::vector<int>& observations) {
    HmmModel uniform;
    uniform.n_states = model.n_states;
    uniform.n_symbols = model.n_symbols;
    uniform.transition.assign(model.n_states, Vector(model.n_states, 1.0 / model.n_states));
    uniform.emission.assign(model.n_states, Vector(model.n_symbols, 1.0 / model.n_symbols));
    uniform.initial.assign(model.n_states, 1.0 / model.n_states);
    return forward_likelihood(model, observations) -
           forward_likelihood(uniform, observations);
}

enum class Decoder { viterbi, posterior_argmax };

inline Decoder decoder_from_name(const std::string& name) {
    if (name == "viterbi") return Decoder::viterbi;
    if (name == "posterior") return Decoder::posterior_argmax;
    throw std::invalid_argument("unknown decoder '" + name +
                                "' (expected 'viterbi' or 'posterior')");
}

inline StatePath decode_observations(const HmmModel& model,
                                     const std::vector<int>& observations,
                                     Decoder decoder) {
    if (decoder == Decoder::viterbi) return viterbi_decode(model, observations);

    const Matrix gamma = posterior_marginals(model, observations);
    StatePath path;
    path.states.reserve(gamma.size());
    for (const auto& row : gamma) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(row.size()); ++i)
            if (row[i] > row[best]) best = i;
        path.states.push_back(best);
    }
    path.log_probability = path_log_probability(model, path.states, observations);
    return path;
}

struct ExperimentResult {
    SimulationTrace trace;
    StatePath decoded;
    ErrorSeries series;
    EvaluationReport report;
    std::uint64_t seed = 0;
};

// End to end: simulate a trace, decode its quantized observations with
// the same model, compare the decoded path against the true hidden
// states. CSV/JSON emission lives in csv.hpp / json_io.hpp.
inline ExperimentResult run_experiment(const SimulationConfig& config, Decoder decoder) {
    ExperimentResult result;
    result.seed = config.seed;
    result.trace = simulate(config);
    result.decoded =
        decode_observations(config.model, result.trace.quantized_observations, decoder);
    result.series =
        compare(result.trace.hidden_states, result.decoded.states, result.trace.times);
    result.report = summarize(result.series, config.model,
                              result.trace.quantized_observations);
    return result;
}

// Error rates for `n_seeds` runs with seeds base, base+1, ...
inline std::vector<EvaluationReport> sweep_reports(SimulationConfig config,
                                                   Decoder decoder,
                                                   std::size_t n_seeds) {
    if (n_seeds == 0) throw std::invalid_argument("sweep needs at least one seed");
    std::vector<EvaluationReport> reports;
    reports.reserve(n_seeds);
    const std::uint64_t base = config.seed;
    for (std::size_t i = 0; i < n_seeds; ++i) {
        config.seed = base + i;
        reports.push_back(run_experiment(config, decoder).report);
    }
    return reports;
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

inline double median_error_rate(const std::vector<EvaluationReport>& reports) {
    std::vector<double> rates;
    rates.reserve(reports.size());
    for (const auto& r : reports) rates.push_back(r.error_rate);
    return median(std::move(rates));
}

}  // namespace hbral
