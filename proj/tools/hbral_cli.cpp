// hbral: command-line front door for the room-structured activity
// recognition toolkit.
//
// Subcommands: validate, simulate, decode, detect, evaluate,
// reproduce-paper. Exit codes: 0 success (or no alerts), 1 validation
// violations, 2 usage/IO/parse errors, 3 alerts present.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hbral/anomaly.hpp"
#include "hbral/csv.hpp"
#include "hbral/evaluation.hpp"
#include "hbral/fixtures.hpp"
#include "hbral/grammar.hpp"
#include "hbral/hmm.hpp"
#include "hbral/json_io.hpp"
#include "hbral/simulator.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;
constexpr int kExitAlerts = 3;

// Input files that parse but break the model/hierarchy/scenario rules.
struct ViolationsError {
    std::string origin;
    hbral::ValidationReport report;
};

int print_violations(const ViolationsError& e) {
    for (const auto& v : e.report.violations)
        std::cout << e.origin << ": " << v.text() << "\n";
    return kExitViolations;
}

hbral::json parse_file(const std::string& path) {
    return hbral::io_detail::parse_text(hbral::io_detail::read_file(path), path);
}

hbral::HmmModel load_model_checked(const std::string& path) {
    auto model = hbral::model_from_json_raw(parse_file(path));
    auto report = hbral::validate_model(model);
    if (!report.ok()) throw ViolationsError{path, std::move(report)};
    return model;
}

hbral::HbralHierarchy load_hierarchy_checked(const std::string& path) {
    auto hierarchy = hbral::hierarchy_from_json(parse_file(path));
    auto report = hbral::validate_hierarchy(hierarchy);
    if (!report.ok()) throw ViolationsError{path, std::move(report)};
    return hierarchy;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " +
                                     ec.message());
    return path;
}

std::string dump_json(const hbral::json& j) { return j.dump(2) + "\n"; }

std::string alerts_to_jsonl(const std::vector<hbral::Alert>& alerts) {
    std::string text;
    for (const auto& a : alerts) text += hbral::alert_to_json(a).dump() + "\n";
    return text;
}

void print_alerts(const std::vector<hbral::Alert>& alerts) {
    for (const auto& a : alerts)
        std::cout << a.message << " (at " << hbral::format_hhmm(a.timestamp)
                  << ", observed " << a.observed_minutes << " min > PDT "
                  << a.threshold.pdt_minutes << " min)\n";
}

void print_report(const hbral::EvaluationReport& report, std::uint64_t seed) {
    std::cout << "steps: " << report.steps << "\n"
              << "errors: " << report.error_count << " (rate "
              << report.error_rate << ")\n"
              << "error range: [" << report.min_error << ", " << report.max_error
              << "]" << (report.within_unit_range() ? " (within [-1, 1])" : "") << "\n"
              << "log-likelihood: " << report.log_likelihood << "\n"
              << "seed: " << seed << "\n";
}

// The likelihood-ratio figure: the decoding model's log-likelihood
// advantage over a uniform model of the same dimensions.
void print_likelihood_ratio(const hbral::HmmModel& model,
                            const hbral::ExperimentResult& result) {
    std::cout << "log-likelihood vs uniform baseline: "
              << hbral::log_likelihood_vs_uniform(model,
                                                  result.trace.quantized_observations)
              << "\n";
}

struct CommonOptions {
    std::string hierarchy_path;
    std::string model_path;
    std::string scenario_path;
    std::string thresholds_path;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 1;
    bool seed_given = false;
    double sigma = 0.5;
    bool sigma_given = false;
    std::string decoder = "viterbi";
    unsigned sweep = 0;
};

// A simulation setup comes either from --config (JSON mirroring the
// SimulationConfig fields) or from --hierarchy/--model; --seed and
// --sigma override whatever the config file says.
hbral::SimulationConfig build_config(const CommonOptions& opt) {
    hbral::SimulationConfig config;
    if (!opt.config_path.empty()) {
        config = hbral::load_config_file(opt.config_path);
        auto hierarchy_report = hbral::validate_hierarchy(config.hierarchy);
        if (!hierarchy_report.ok())
            throw ViolationsError{opt.config_path, std::move(hierarchy_report)};
    } else {
        if (opt.hierarchy_path.empty() || opt.model_path.empty())
            throw std::runtime_error("either --config or both --hierarchy and --model "
                                     "are required");
        config.hierarchy = load_hierarchy_checked(opt.hierarchy_path);
        config.model = load_model_checked(opt.model_path);
    }
    if (opt.sigma_given || opt.config_path.empty()) config.noise_sigma = opt.sigma;
    if (opt.seed_given || opt.config_path.empty()) config.seed = opt.seed;
    return config;
}

void write_experiment_bundle(const fs::path& out, const hbral::ExperimentResult& result,
                             const std::vector<std::string>& state_labels) {
    std::ostringstream fig2, fig3, fig4;
    hbral::write_trace_csv(fig2, result.trace);
    hbral::write_states_csv(fig3, result.trace.times, result.decoded.states, state_labels);
    hbral::write_error_csv(fig4, result.series);
    write_file(out / "figure2.csv", fig2.str());
    write_file(out / "figure3.csv", fig3.str());
    write_file(out / "figure4.csv", fig4.str());
    write_file(out / "report.json",
               dump_json(hbral::report_to_json(result.report, result.seed)));
}

// Per-seed reports plus the aggregate median, for --sweep N.
void write_sweep(const fs::path& out, hbral::SimulationConfig config,
                 hbral::Decoder decoder, unsigned n_seeds) {
    auto reports = hbral::sweep_reports(config, decoder, n_seeds);
    hbral::json rates = hbral::json::array();
    for (unsigned i = 0; i < n_seeds; ++i) {
        const std::uint64_t seed = config.seed + i;
        write_file(out / ("report_seed_" + std::to_string(seed) + ".json"),
                   dump_json(hbral::report_to_json(reports[i], seed)));
        rates.push_back(reports[i].error_rate);
    }
    const double med = hbral::median_error_rate(reports);
    write_file(out / "sweep.json",
               dump_json(hbral::json{{"base_seed", config.seed},
                                     {"n_seeds", n_seeds},
                                     {"error_rates", rates},
                                     {"median_error_rate", med}}));
    std::cout << "sweep: " << n_seeds << " seeds, median error rate " << med << "\n";
}

int cmd_validate(const CommonOptions& opt) {
    int status = kExitOk;
    auto report_for = [&status](const std::string& origin,
                                const hbral::ValidationReport& report) {
        for (const auto& v : report.violations)
            std::cout << origin << ": " << v.text() << "\n";
        if (!report.ok()) status = kExitViolations;
    };

    auto hierarchy = hbral::hierarchy_from_json(parse_file(opt.hierarchy_path));
    report_for(opt.hierarchy_path, hbral::validate_hierarchy(hierarchy));

    auto model = hbral::model_from_json_raw(parse_file(opt.model_path));
    report_for(opt.model_path, hbral::validate_model(model));

    if (!opt.scenario_path.empty()) {
        auto scenario = hbral::scenario_from_json(parse_file(opt.scenario_path));
        report_for(opt.scenario_path, hbral::validate_scenario(hierarchy, scenario));
    }

    if (status == kExitOk) std::cout << "OK\n";
    return status;
}

int cmd_simulate(const CommonOptions& opt) {
    auto config = build_config(opt);

    auto trace = hbral::simulate(config);
    auto scenario = hbral::trace_to_scenario(
        trace, config.hierarchy,
        hbral::derive_seed(config.seed, hbral::detail::kActivityStream));

    const fs::path out = prepare_out_dir(opt.out_dir);
    std::ostringstream csv;
    hbral::write_trace_csv(csv, trace);
    write_file(out / "trace.csv", csv.str());
    write_file(out / "scenario.json", dump_json(hbral::scenario_to_json(scenario)));

    std::cout << "simulated " << trace.times.size() << " steps ("
              << hbral::format_hhmm(config.start_minutes) << "-"
              << hbral::format_hhmm(config.end_minutes) << "), " << scenario.events.size()
              << " events\n"
              << "seed: " << config.seed << "\n"
              << "wrote " << (out / "trace.csv").string() << ", "
              << (out / "scenario.json").string() << "\n";
    return kExitOk;
}

int cmd_decode(const CommonOptions& opt, const std::string& trace_path) {
    auto model = load_model_checked(opt.model_path);
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) throw hbral::ParseError("cannot open '" + trace_path + "'");
    auto trace = hbral::read_trace_csv(in);

    auto decoder = hbral::decoder_from_name(opt.decoder);
    auto path = hbral::decode_observations(model, trace.quantized_observations, decoder);
    const double loglik =
        hbral::forward_likelihood(model, trace.quantized_observations);

    if (!opt.out_dir.empty()) {
        const fs::path out = prepare_out_dir(opt.out_dir);
        std::ostringstream csv;
        hbral::write_states_csv(csv, trace.times, path.states, model.state_labels);
        write_file(out / "decoded.csv", csv.str());
        std::cout << "wrote " << (out / "decoded.csv").string() << "\n";
    }
    std::cout << "decoded " << path.states.size() << " steps with " << opt.decoder
              << "\n"
              << "path log-probability: " << path.log_probability << "\n"
              << "sequence log-likelihood: " << loglik << "\n";
    return kExitOk;
}

int cmd_detect(const CommonOptions& opt) {
    auto scenario = hbral::scenario_from_json(parse_file(opt.scenario_path));
    auto usual = hbral::load_usual_minutes_file(opt.thresholds_path);
    auto thresholds = hbral::compute_pdt(usual);

    auto alerts = hbral::stream_detect(scenario, thresholds);
    print_alerts(alerts);
    if (alerts.empty()) std::cout << "no abnormal activity\n";

    if (!opt.out_dir.empty()) {
        const fs::path out = prepare_out_dir(opt.out_dir);
        write_file(out / "alerts.jsonl", alerts_to_jsonl(alerts));
        std::cout << "wrote " << (out / "alerts.jsonl").string() << "\n";
    }
    return alerts.empty() ? kExitOk : kExitAlerts;
}

int cmd_evaluate(const CommonOptions& opt) {
    auto config = build_config(opt);
    const auto decoder = hbral::decoder_from_name(opt.decoder);

    const fs::path out = prepare_out_dir(opt.out_dir);
    if (opt.sweep > 0) {
        write_sweep(out, config, decoder, opt.sweep);
        return kExitOk;
    }

    auto result = hbral::run_experiment(config, decoder);
    write_experiment_bundle(out, result, config.model.state_labels);
    print_report(result.report, result.seed);
    print_likelihood_ratio(config.model, result);
    std::cout << "wrote figure2.csv, figure3.csv, figure4.csv, report.json to "
              << out.string() << "\n";
    return kExitOk;
}

int cmd_reproduce_paper(const CommonOptions& opt) {
    hbral::SimulationConfig config;
    config.hierarchy = hbral::fixtures::default_hierarchy();
    config.model = hbral::fixtures::default_model();
    config.noise_sigma = opt.sigma;
    config.seed = opt.seed;

    auto result = hbral::run_experiment(config, hbral::Decoder::viterbi);
    auto scenario = hbral::trace_to_scenario(
        result.trace, config.hierarchy,
        hbral::derive_seed(opt.seed, hbral::detail::kActivityStream));
    auto thresholds = hbral::compute_pdt(hbral::fixtures::default_usual_minutes());
    auto alerts = hbral::stream_detect(scenario, thresholds);

    const fs::path out = prepare_out_dir(opt.out_dir);
    write_experiment_bundle(out, result, config.model.state_labels);
    write_file(out / "scenario.json", dump_json(hbral::scenario_to_json(scenario)));
    write_file(out / "alerts.jsonl", alerts_to_jsonl(alerts));

    print_report(result.report, result.seed);
    print_likelihood_ratio(config.model, result);
    std::cout << "alerts: " << alerts.size() << "\n";
    print_alerts(alerts);
    std::cout << "wrote figure2.csv, figure3.csv, figure4.csv, report.json, "
                 "scenario.json, alerts.jsonl to "
              << out.string() << "\n";

    if (opt.sweep > 0) write_sweep(out, config, hbral::Decoder::viterbi, opt.sweep);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Room-structured daily-activity recognition: simulation, decoding,\n"
                 "dwell-time anomaly detection and experiment reproduction."};
    app.require_subcommand(1);
    CommonOptions opt;
    std::string trace_path;

    auto* validate = app.add_subcommand(
        "validate", "Check a hierarchy, model and optional scenario for rule violations");
    validate->add_option("--hierarchy", opt.hierarchy_path, "Hierarchy JSON")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--model", opt.model_path, "Model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--scenario", opt.scenario_path, "Scenario JSON")
        ->check(CLI::ExistingFile);

    auto* simulate = app.add_subcommand(
        "simulate", "Generate a noisy day trace and its activity scenario");
    simulate->add_option("--hierarchy", opt.hierarchy_path, "Hierarchy JSON")
        ->check(CLI::ExistingFile);
    simulate->add_option("--model", opt.model_path, "Model JSON")
        ->check(CLI::ExistingFile);
    simulate->add_option("--config", opt.config_path,
                         "Simulation config JSON (alternative to --hierarchy/--model)")
        ->check(CLI::ExistingFile);
    simulate->add_option("--out", opt.out_dir, "Output directory")->required();
    simulate->add_option("--seed", opt.seed, "Random seed (default 1)");
    simulate->add_option("--sigma", opt.sigma, "Observation noise sigma (default 0.5)");

    auto* decode = app.add_subcommand(
        "decode", "Estimate hidden states from a trace CSV's observation symbols");
    decode->add_option("--model", opt.model_path, "Model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    decode->add_option("--trace", trace_path, "Trace CSV (as written by simulate)")
        ->required()
        ->check(CLI::ExistingFile);
    decode->add_option("--decoder", opt.decoder, "viterbi or posterior (default viterbi)");
    decode->add_option("--out", opt.out_dir, "Output directory for decoded.csv");

    auto* detect = app.add_subcommand(
        "detect", "Report rooms whose dwell time exceeds the PDT threshold");
    detect->add_option("--scenario", opt.scenario_path, "Scenario JSON")
        ->required()
        ->check(CLI::ExistingFile);
    detect->add_option("--thresholds", opt.thresholds_path, "Usual-minutes JSON")
        ->required()
        ->check(CLI::ExistingFile);
    detect->add_option("--out", opt.out_dir, "Output directory for alerts.jsonl");

    auto* evaluate = app.add_subcommand(
        "evaluate", "Simulate, decode and score prediction errors end to end");
    evaluate->add_option("--hierarchy", opt.hierarchy_path, "Hierarchy JSON")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--model", opt.model_path, "Model JSON")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--config", opt.config_path,
                         "Simulation config JSON (alternative to --hierarchy/--model)")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--out", opt.out_dir, "Output directory")->required();
    evaluate->add_option("--seed", opt.seed, "Random seed (default 1)");
    evaluate->add_option("--sigma", opt.sigma, "Observation noise sigma (default 0.5)");
    evaluate->add_option("--decoder", opt.decoder, "viterbi or posterior");
    evaluate->add_option("--sweep", opt.sweep, "Run N seeds and report the median rate");

    auto* reproduce = app.add_subcommand(
        "reproduce-paper",
        "Run the five-hour three-scenario experiment with the shipped fixtures");
    reproduce->add_option("--out", opt.out_dir, "Output directory")->required();
    reproduce->add_option("--seed", opt.seed, "Random seed (default 1)");
    reproduce->add_option("--sigma", opt.sigma, "Observation noise sigma (default 0.5)");
    reproduce->add_option("--sweep", opt.sweep, "Also run N seeds and report the median");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }
    for (auto* sub : {simulate, evaluate, reproduce}) {
        if (!app.got_subcommand(sub)) continue;
        opt.seed_given = sub->count("--seed") > 0;
        opt.sigma_given = sub->count("--sigma") > 0;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(opt);
        if (app.got_subcommand(simulate)) return cmd_simulate(opt);
        if (app.got_subcommand(decode)) return cmd_decode(opt, trace_path);
        if (app.got_subcommand(detect)) return cmd_detect(opt);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(opt);
        if (app.got_subcommand(reproduce)) return cmd_reproduce_paper(opt);
    } catch (const ViolationsError& e) {
        return print_violations(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
