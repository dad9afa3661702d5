#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "hbral/evaluation.hpp"
#include "hbral/fixtures.hpp"
#include "test_models.hpp"

using hbral::compare;
using hbral::SimulationConfig;

namespace {

SimulationConfig paper_config() {
    SimulationConfig config;
    config.hierarchy = hbral::fixtures::default_hierarchy();
    config.model = fixtures::paper_model();
    config.seed = 1;
    return config;
}

std::vector<int> iota_times(std::size_t n) {
    std::vector<int> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<int>(i);
    return t;
}

}  // namespace

TEST_CASE("identical sequences give an all-zero error series") {
    auto series = compare({1, 2, 0}, {1, 2, 0}, iota_times(3));
    CHECK(series.errors == std::vector<int>{0, 0, 0});
}

TEST_CASE("errors are real minus predicted") {
    auto series = compare({2, 1, 0}, {0, 1, 2}, iota_times(3));
    CHECK(series.errors == std::vector<int>{2, 0, -2});
}

TEST_CASE("length mismatches report both lengths") {
    CHECK_THROWS_WITH(compare({1, 2}, {1}, iota_times(2)),
                      Catch::Matchers::ContainsSubstring("2") &&
                          Catch::Matchers::ContainsSubstring("1"));
}

TEST_CASE("compare is antisymmetric") {
    std::mt19937_64 rng(8080);
    std::uniform_int_distribution<int> state(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> a(50), b(50);
        for (int& x : a) x = state(rng);
        for (int& x : b) x = state(rng);
        auto ab = compare(a, b, iota_times(50));
        auto ba = compare(b, a, iota_times(50));
        for (std::size_t i = 0; i < ab.errors.size(); ++i)
            CHECK(ab.errors[i] == -ba.errors[i]);
    }
}

TEST_CASE("nine wrong steps out of three hundred is a three percent rate") {
    std::vector<int> real(300, 1), predicted(300, 1);
    for (int i : {10, 42, 77, 101, 150, 199, 230, 260, 290}) predicted[i] = 2;
    auto series = compare(real, predicted, iota_times(300));
    auto report = hbral::summarize(series, fixtures::paper_model(),
                                   std::vector<int>(300, 1));
    CHECK(report.steps == 300);
    CHECK(report.error_count == 9);
    CHECK(report.error_rate == Catch::Approx(0.03));
    CHECK(report.min_error == -1);
    CHECK(report.max_error == 0);
    CHECK(report.within_unit_range());
}

TEST_CASE("an all-zero series summarizes to a zero rate") {
    auto series = compare({1, 1, 1}, {1, 1, 1}, iota_times(3));
    auto report = hbral::summarize(series, fixtures::paper_model(),
                                   std::vector<int>{1, 1, 1});
    CHECK(report.error_count == 0);
    CHECK(report.error_rate == 0.0);
    CHECK(std::isfinite(report.log_likelihood));
}

TEST_CASE("error count is zero exactly when the sequences match") {
    std::mt19937_64 rng(2222);
    std::uniform_int_distribution<int> state(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> a(20), b(20);
        for (int& x : a) x = state(rng);
        for (int& x : b) x = state(rng);
        auto series = compare(a, b, iota_times(20));
        std::size_t nonzero = 0;
        for (int e : series.errors)
            if (e != 0) ++nonzero;
        CHECK((nonzero == 0) == (a == b));
    }
}

TEST_CASE("a noiseless channel with identity emission decodes perfectly") {
    auto config = paper_config();
    config.model = fixtures::paper_model_identity_emission();
    config.noise_sigma = 0.0;
    for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
        config.seed = seed;
        for (auto decoder : {hbral::Decoder::viterbi, hbral::Decoder::posterior_argmax}) {
            auto result = hbral::run_experiment(config, decoder);
            CHECK(result.report.error_rate == 0.0);
            CHECK(result.report.error_count == 0);
        }
    }
}

TEST_CASE("experiments replay identically under a fixed seed") {
    auto config = paper_config();
    auto a = hbral::run_experiment(config, hbral::Decoder::viterbi);
    auto b = hbral::run_experiment(config, hbral::Decoder::viterbi);
    CHECK(a.report.error_count == b.report.error_count);
    CHECK(a.report.log_likelihood == b.report.log_likelihood);
    CHECK(a.decoded.states == b.decoded.states);
    CHECK(a.series.errors == b.series.errors);
}

TEST_CASE("median error rate does not decrease with noise") {
    auto config = paper_config();
    std::vector<double> medians;
    for (double sigma : {0.0, 0.25, 0.5, 1.0}) {
        config.noise_sigma = sigma;
        auto reports = hbral::sweep_reports(config, hbral::Decoder::viterbi, 30);
        medians.push_back(hbral::median_error_rate(reports));
    }
    for (std::size_t i = 1; i < medians.size(); ++i)
        CHECK(medians[i] >= medians[i - 1]);
}

TEST_CASE("the model beats the uniform baseline on its own data") {
    auto config = paper_config();
    auto trace = hbral::simulate(config);
    const double advantage = hbral::log_likelihood_vs_uniform(
        config.model, trace.quantized_observations);
    CHECK(std::isfinite(advantage));
    CHECK(advantage > 0.0);
}

TEST_CASE("posterior-argmax decoding is available and sane") {
    auto config = paper_config();
    auto result = hbral::run_experiment(config, hbral::Decoder::posterior_argmax);
    CHECK(result.decoded.states.size() == 300);
    CHECK(result.report.error_rate <= 1.0);
}

TEST_CASE("the median helper handles odd and even counts") {
    CHECK(hbral::median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(hbral::median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(hbral::median({}), std::invalid_argument);
}
