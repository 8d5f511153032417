#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nqcc/runner.hpp"

namespace {

void print_checks(const nqcc::RunReport& report) {
    for (const nqcc::CheckResult& c : report.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<long long> trials, const std::string& out_path,
            const std::string& transcripts_path) {
    nqcc::ScenarioConfig cfg = nqcc::ScenarioConfig::load_file(config_path);
    if (seed.has_value()) cfg.seed = *seed;
    if (trials.has_value()) cfg.trials = *trials;

    nqcc::TranscriptSink sink;
    nqcc::TranscriptSink* sink_ptr = transcripts_path.empty() ? nullptr : &sink;
    nqcc::RunReport report = nqcc::run_scenario(cfg, sink_ptr);

    if (!transcripts_path.empty()) {
        sink.write(transcripts_path);
        report.transcript_refs.push_back(transcripts_path);
    }
    if (!out_path.empty()) {
        nqcc::emit_report(report, out_path);
    }

    std::cout << "scenario " << cfg.id << " (" << nqcc::scenario_kind_name(cfg.kind)
              << ", seed " << cfg.seed << ", trials " << cfg.trials << ")\n";
    print_checks(report);
    std::cout << (report.passed() ? "PASS" : "FAIL") << "  " << cfg.id << "\n";
    return report.passed() ? 0 : 1;
}

int cmd_verify(const std::string& dir, std::optional<std::uint64_t> seed,
               std::optional<long long> trials, const std::string& out_path) {
    nqcc::VerifyOverrides overrides;
    overrides.seed = seed;
    overrides.trials = trials;
    const nqcc::Json aggregate = nqcc::verify_directory(dir, overrides);

    for (const nqcc::Json& report : aggregate.at("reports")) {
        const std::string id = report.at("scenario").at("id").get<std::string>();
        const bool passed = report.at("passed").get<bool>();
        std::cout << (passed ? "PASS" : "FAIL") << "  " << id << "\n";
        if (!passed) {
            for (const nqcc::Json& check : report.at("checks")) {
                if (!check.at("pass").get<bool>()) {
                    std::cout << "      failed: " << check.at("name").get<std::string>() << "\n";
                }
            }
        }
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot write " + out_path);
        }
        out << aggregate.dump(2) << "\n";
    }
    const bool ok = aggregate.at("passed").get<bool>();
    std::cout << (ok ? "PASS" : "FAIL") << "  " << aggregate.at("scenario_count").get<std::size_t>()
              << " scenarios\n";
    return ok ? 0 : 1;
}

int cmd_worksheet() {
    const auto rows = nqcc::capacity_worksheet();
    std::size_t label_width = 0;
    std::size_t value_width = 0;
    for (const auto& row : rows) {
        label_width = std::max(label_width, row.label.size());
        value_width = std::max(value_width, row.value.size());
    }
    for (const auto& row : rows) {
        std::printf("%-*s  %*s  %s\n", static_cast<int>(label_width), row.label.c_str(),
                    static_cast<int>(value_width), row.value.c_str(), row.note.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and verification harness for quantum-register neurons coupled by "
                 "classical channels"};
    app.require_subcommand(1);

    std::string config_path;
    std::string dir_path;
    std::string out_path;
    std::string transcripts_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;

    CLI::App* run = app.add_subcommand("run", "Run one scenario config and report pass/fail");
    run->add_option("config", config_path, "Scenario JSON file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--trials", trials, "Override the trial count");
    run->add_option("--out", out_path, "Write the JSON report here");
    run->add_option("--transcripts", transcripts_path,
                    "Write protocol transcripts (JSON lines) here");

    CLI::App* verify = app.add_subcommand("verify", "Run every scenario in a directory");
    verify->add_option("dir", dir_path, "Directory of scenario JSON files")->required();
    verify->add_option("--seed", seed, "Override every scenario seed");
    verify->add_option("--trials", trials, "Override every trial count");
    verify->add_option("--out", out_path, "Write the aggregate JSON report here");

    app.add_subcommand("worksheet", "Print the capacity worksheet");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, seed, trials, out_path, transcripts_path);
        }
        if (verify->parsed()) {
            return cmd_verify(dir_path, seed, trials, out_path);
        }
        return cmd_worksheet();
    } catch (const nqcc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
