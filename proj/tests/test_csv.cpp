#include <cstring>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "hbral/csv.hpp"
#include "hbral/evaluation.hpp"
#include "hbral/fixtures.hpp"
#include "test_models.hpp"

TEST_CASE("trace CSV round-trips exactly, including noisy doubles") {
    hbral::SimulationConfig config;
    config.hierarchy = hbral::fixtures::default_hierarchy();
    config.model = fixtures::paper_model();
    config.noise_sigma = 0.7;
    config.seed = 90210;
    auto trace = hbral::simulate(config);

    std::ostringstream out;
    hbral::write_trace_csv(out, trace);
    std::istringstream in(out.str());
    auto parsed = hbral::read_trace_csv(in);

    CHECK(parsed.times == trace.times);
    CHECK(parsed.hidden_states == trace.hidden_states);
    CHECK(parsed.observations == trace.observations);  // bit-exact
    CHECK(parsed.quantized_observations == trace.quantized_observations);
}

TEST_CASE("awkward doubles survive the round trip") {
    hbral::SimulationTrace trace;
    trace.times = {0, 1, 2, 3, 4};
    trace.hidden_states = {0, 1, 2, 1, 0};
    trace.observations = {0.1 + 0.2, -1.0 / 3.0, 1e-300, 2.000000000000001, -0.0};
    trace.quantized_observations = {0, 0, 0, 2, 0};

    std::ostringstream out;
    hbral::write_trace_csv(out, trace);
    std::istringstream in(out.str());
    auto parsed = hbral::read_trace_csv(in);
    REQUIRE(parsed.observations.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::memcmp(&parsed.observations[i], &trace.observations[i],
                          sizeof(double)) == 0);
}

TEST_CASE("error CSV round-trips the full series") {
    hbral::ErrorSeries series;
    series.times = {420, 421, 422};
    series.real_states = {0, 1, 2};
    series.predicted_states = {0, 2, 0};
    series.errors = {0, -1, 2};

    std::ostringstream out;
    hbral::write_error_csv(out, series);
    std::istringstream in(out.str());
    auto parsed = hbral::read_error_csv(in);
    CHECK(parsed.times == series.times);
    CHECK(parsed.real_states == series.real_states);
    CHECK(parsed.predicted_states == series.predicted_states);
    CHECK(parsed.errors == series.errors);
}

TEST_CASE("states CSV carries one indicator column per state") {
    std::ostringstream out;
    hbral::write_states_csv(out, {10, 11, 12}, {0, 2, 1},
                            {"Kitchen", "LivingRoom", "Bathroom"});
    const std::string text = out.str();
    CHECK(text.find("minute,estimated_state,is_Kitchen,is_LivingRoom,is_Bathroom") == 0);
    CHECK(text.find("10,0,1,0,0") != std::string::npos);
    CHECK(text.find("11,2,0,0,1") != std::string::npos);

    std::istringstream in(text);
    auto [times, states] = hbral::read_states_csv(in);
    CHECK(times == std::vector<int>{10, 11, 12});
    CHECK(states == std::vector<int>{0, 2, 1});
}

TEST_CASE("malformed CSV is rejected with the line number") {
    std::istringstream in("minute,hidden_state,observation_real,observation_symbol\n"
                          "1,2,3.0\n");
    CHECK_THROWS_WITH(hbral::read_trace_csv(in),
                      Catch::Matchers::ContainsSubstring("line 2"));

    std::istringstream bad_value(
        "minute,hidden_state,observation_real,observation_symbol\n"
        "1,x,3.0,0\n");
    CHECK_THROWS_WITH(hbral::read_trace_csv(bad_value),
                      Catch::Matchers::ContainsSubstring("integer"));
}
