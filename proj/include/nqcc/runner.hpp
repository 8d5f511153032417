#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nqcc/capacity.hpp"
#include "nqcc/errors.hpp"
#include "nqcc/memnet.hpp"
#include "nqcc/protocol.hpp"
#include "nqcc/qstate.hpp"
#include "nqcc/rng.hpp"
#include "nqcc/selection.hpp"

namespace nqcc {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

enum class ScenarioKind {
    CnotEquivalence,
    ChoiceOfChannel,
    ChooseNeuron,
    PhaseLock,
    EvolveCouplings,
    Ladder,
    MadicGrid,
    Capacity,
};

inline const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::CnotEquivalence: return "CnotEquivalence";
    case ScenarioKind::ChoiceOfChannel: return "ChoiceOfChannel";
    case ScenarioKind::ChooseNeuron: return "ChooseNeuron";
    case ScenarioKind::PhaseLock: return "PhaseLock";
    case ScenarioKind::EvolveCouplings: return "EvolveCouplings";
    case ScenarioKind::Ladder: return "Ladder";
    case ScenarioKind::MadicGrid: return "MadicGrid";
    case ScenarioKind::Capacity: return "Capacity";
    }
    return "?";
}

inline bool scenario_kind_is_stochastic(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::CnotEquivalence:
    case ScenarioKind::ChoiceOfChannel:
    case ScenarioKind::ChooseNeuron:
    case ScenarioKind::PhaseLock:
        return true;
    default:
        return false;
    }
}

namespace detail {

inline ScenarioKind scenario_kind_from(const std::string& s) {
    static const std::pair<const char*, ScenarioKind> table[] = {
        {"CnotEquivalence", ScenarioKind::CnotEquivalence},
        {"ChoiceOfChannel", ScenarioKind::ChoiceOfChannel},
        {"ChooseNeuron", ScenarioKind::ChooseNeuron},
        {"PhaseLock", ScenarioKind::PhaseLock},
        {"EvolveCouplings", ScenarioKind::EvolveCouplings},
        {"Ladder", ScenarioKind::Ladder},
        {"MadicGrid", ScenarioKind::MadicGrid},
        {"Capacity", ScenarioKind::Capacity},
    };
    for (const auto& [name, kind] : table) {
        if (s == name) return kind;
    }
    throw ConfigError("/kind", "unknown scenario kind '" + s + "'");
}

template <typename T>
T field(const Json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) {
        throw ConfigError(path + "/" + key, "missing required field");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(path + "/" + key, "wrong type");
    }
}

template <typename T>
T field_or(const Json& j, const std::string& path, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(path + "/" + key, "wrong type");
    }
}

} // namespace detail

/// One declarative experiment: a kind, a seed, a trial count, and
/// kind-specific parameters.
struct ScenarioConfig {
    std::string id;
    ScenarioKind kind = ScenarioKind::Capacity;
    std::uint64_t seed = 0;
    long long trials = 1;
    Json params = Json::object();

    static ScenarioConfig parse(const Json& j, const std::string& id) {
        ScenarioConfig cfg;
        cfg.id = id;
        cfg.kind = detail::scenario_kind_from(detail::field<std::string>(j, "", "kind"));
        if (scenario_kind_is_stochastic(cfg.kind)) {
            cfg.seed = detail::field<std::uint64_t>(j, "", "seed");
        } else {
            cfg.seed = detail::field_or<std::uint64_t>(j, "", "seed", 0);
        }
        cfg.trials = detail::field_or<long long>(j, "", "trials", 1);
        if (cfg.trials < 1) {
            throw ConfigError("/trials", "must be >= 1");
        }
        if (j.contains("params")) {
            if (!j.at("params").is_object()) {
                throw ConfigError("/params", "must be an object");
            }
            cfg.params = j.at("params");
        }
        return cfg;
    }

    static ScenarioConfig load_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError(path.string(), "cannot open scenario file");
        }
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
        }
        return parse(j, path.stem().string());
    }

    Json echo() const {
        Json j;
        j["id"] = id;
        j["kind"] = scenario_kind_name(kind);
        j["seed"] = seed;
        j["trials"] = trials;
        j["params"] = params;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Structured, reproducible output of one scenario run. Contains no
/// timestamps or machine state, so identical configs serialize to identical
/// bytes.
struct RunReport {
    ScenarioConfig scenario;
    Json outcomes = Json::object();
    std::vector<CheckResult> checks;
    std::vector<std::string> transcript_refs;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    }

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }

    Json to_json() const {
        Json j;
        j["schema_version"] = 1;
        j["scenario"] = scenario.echo();
        j["outcomes"] = outcomes;
        Json checks_json = Json::array();
        for (const CheckResult& c : checks) {
            Json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            if (!c.detail.empty()) cj["detail"] = c.detail;
            checks_json.push_back(cj);
        }
        j["checks"] = checks_json;
        j["transcripts"] = transcript_refs;
        j["passed"] = passed();
        return j;
    }
};

inline void emit_report(const RunReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write report to " + path.string());
    }
    out << report.to_json().dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

/// Sink that keeps the first few transcripts of a run for audit.
struct TranscriptSink {
    std::size_t limit = 100;
    std::vector<ProtocolTranscript> transcripts;

    void offer(const ProtocolTranscript& t) {
        if (transcripts.size() < limit) transcripts.push_back(t);
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot write transcripts to " + path.string());
        }
        for (const ProtocolTranscript& t : transcripts) {
            out << t.to_jsonl();
        }
    }
};

// ---------------------------------------------------------------------------
// Scenario runners
// ---------------------------------------------------------------------------

namespace detail {

inline RunReport run_cnot_equivalence(const ScenarioConfig& cfg, TranscriptSink* sink) {
    RunReport report;
    report.scenario = cfg;
    RandomSource rng(cfg.seed);

    long long matches = 0;
    long long replay_ok = 0;
    long long two_bit_runs = 0;
    Json table = Json::array();

    for (long long trial = 0; trial < cfg.trials; ++trial) {
        for (int c = 0; c <= 1; ++c) {
            for (int t = 0; t <= 1; ++t) {
                NeuronNode control = make_control_node("n1", c);
                NeuronNode target = make_target_node("n2", t);
                const CnotRunResult run = run_cnot_protocol(control, target, c == 1, rng,
                                                            wire_complete(control, target));
                if (sink != nullptr) sink->offer(run.transcript);

                const QuantumRegister joint = QuantumRegister::basis(
                    2, static_cast<std::size_t>(c) | (static_cast<std::size_t>(t) << 1));
                const auto oracle = measure(quantum_cnot_oracle(joint), {0, 1}, rng);
                const int oc = oracle.outcome[0] - '0';
                const int ot = oracle.outcome[1] - '0';

                const bool match = static_cast<int>(run.control_bit()) == oc &&
                                   static_cast<int>(run.target_bit()) == ot;
                if (match) ++matches;
                if (run.transcript.transmitted_bits() == 2) ++two_bit_runs;

                std::map<std::string, NeuronNode> nodes;
                nodes.emplace("n1", make_control_node("n1", 0));
                nodes.emplace("n2", make_target_node("n2", 0));
                const auto restored = replay_backward(run.transcript, std::move(nodes));
                if (restored.at("n1").current_eigenstate() == static_cast<std::size_t>(c) &&
                    restored.at("n2").current_eigenstate() == static_cast<std::size_t>(t)) {
                    ++replay_ok;
                }

                if (trial == 0) {
                    table.push_back({{"in", {c, t}},
                                     {"protocol", {run.control_bit(), run.target_bit()}},
                                     {"oracle", {oc, ot}}});
                }
            }
        }
    }

    const long long total = 4 * cfg.trials;
    report.outcomes["truth_table"] = table;
    report.outcomes["matches"] = matches;
    report.outcomes["runs"] = total;
    report.check("protocol equals quantum oracle on all basis inputs", matches == total,
                 std::to_string(matches) + "/" + std::to_string(total));
    report.check("transcripts replay backward to the initial state", replay_ok == total,
                 std::to_string(replay_ok) + "/" + std::to_string(total));
    report.check("every run transmits exactly 2 classical bits", two_bit_runs == total);
    return report;
}

inline RunReport run_choice_of_channel(const ScenarioConfig& cfg, TranscriptSink* sink) {
    RunReport report;
    report.scenario = cfg;
    RandomSource rng(cfg.seed);
    const int control_bit = field_or<int>(cfg.params, "/params", "control_bit", 1);
    const int target_bit = field_or<int>(cfg.params, "/params", "target_bit", 1);

    std::map<std::string, long long> latch_histogram;
    long long unique_latches = 0;
    long long mutated_runs = 0;
    long long mutated_crossed = 0; // mutated runs that latched the crossed channel
    long long mutated_cnot = 0;

    for (long long trial = 0; trial < cfg.trials; ++trial) {
        const ChannelChoiceResult r = choice_of_channel(
            make_control_node("n1", control_bit), make_target_node("n2", target_bit), rng);
        if (sink != nullptr) sink->offer(r.transcript);

        int agreements = 0;
        for (const auto& [incoming, channel] : r.loop.comparisons) {
            if (incoming == r.loop.local_symbol) ++agreements;
        }
        if (agreements == 1 && r.latched_channel.has_value()) ++unique_latches;
        if (r.latched_channel.has_value()) {
            ++latch_histogram[r.latched_conversion];
        }
        if (r.target_mutated) {
            ++mutated_runs;
            const std::string expected =
                control_bit == 1 ? std::string("[a<->b']") : std::string("[a'<->b']");
            if (r.latched_conversion == expected) ++mutated_crossed;
            if (r.matches_cnot == (control_bit == 1)) ++mutated_cnot;
        }
    }

    report.outcomes["latched"] = latch_histogram;
    report.outcomes["mutated_runs"] = mutated_runs;
    report.check("exactly one channel latches per run", unique_latches == cfg.trials,
                 std::to_string(unique_latches) + "/" + std::to_string(cfg.trials));
    report.check("mutated runs latch the mutator conversion", mutated_crossed == mutated_runs,
                 std::to_string(mutated_crossed) + "/" + std::to_string(mutated_runs));
    if (control_bit == 1) {
        report.check("mutated runs reproduce the cNOT result", mutated_cnot == mutated_runs);
    }
    return report;
}

inline RunReport run_choose_neuron(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    RandomSource rng(cfg.seed);
    const int n = field<int>(cfg.params, "/params", "targets");
    if (n < 1) {
        throw ConfigError("/params/targets", "must be >= 1");
    }

    const NeuronNode control = make_control_node("n1", 1);
    std::vector<NeuronNode> targets;
    for (int i = 0; i < n; ++i) {
        targets.push_back(make_target_node("t" + std::to_string(i), 1));
    }

    long long coupled = 0;
    std::map<std::string, long long> winner_histogram;
    for (long long trial = 0; trial < cfg.trials; ++trial) {
        const NeuronChoiceResult r = choose_neuron(control, targets, rng);
        if (r.coupled_target.has_value()) {
            ++coupled;
            ++winner_histogram[*r.coupled_target];
        }
    }

    const double freq = static_cast<double>(coupled) / static_cast<double>(cfg.trials);
    const double p = mutation_probability(n);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
    report.outcomes["coupling_frequency"] = freq;
    report.outcomes["expected_probability"] = p;
    report.outcomes["three_sigma"] = 3.0 * sigma;
    report.outcomes["winners"] = winner_histogram;
    std::ostringstream detail;
    detail << "freq " << freq << " vs p " << p << " +- " << 3.0 * sigma;
    report.check("coupling rate within 3 sigma of 1 - 0.5^n", std::abs(freq - p) <= 3.0 * sigma,
                 detail.str());
    return report;
}

inline RunReport run_phase_lock(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    RandomSource rng(cfg.seed);
    const int period = field_or<int>(cfg.params, "/params", "period", 4);
    const std::vector<int> control_phases =
        field<std::vector<int>>(cfg.params, "/params", "control_phases");
    const std::vector<int> target_phases =
        field<std::vector<int>>(cfg.params, "/params", "target_phases");
    const bool expect_lock = field_or<bool>(cfg.params, "/params", "expect_lock", true);

    std::vector<QuantumOscillator> candidates;
    for (std::size_t i = 0; i < control_phases.size(); ++i) {
        candidates.push_back(
            {"A" + std::string(i + 1, '\''), 0, i + 1, period, control_phases[i]});
    }
    std::vector<QuantumOscillator> targets;
    for (std::size_t i = 0; i < target_phases.size(); ++i) {
        targets.push_back({"t" + std::to_string(i), 0, 1, period, target_phases[i]});
    }

    long long locks = 0;
    long long stable = 0;
    std::map<std::string, long long> lock_histogram;
    for (long long trial = 0; trial < cfg.trials; ++trial) {
        const auto lock = induced_fit_phase_lock(candidates, targets, rng);
        if (!lock.has_value()) continue;
        ++locks;
        ++lock_histogram[lock->target.node_id];
        if (phases_stay_locked(lock->control, lock->target, 3 * period)) ++stable;
    }

    report.outcomes["locks"] = locks;
    report.outcomes["lock_targets"] = lock_histogram;
    if (expect_lock) {
        report.check("every trial finds a phase lock", locks == cfg.trials,
                     std::to_string(locks) + "/" + std::to_string(cfg.trials));
        report.check("locked pairs hold phase for 3 full periods", stable == locks);
    } else {
        report.check("no phase lock exists", locks == 0,
                     std::to_string(locks) + " unexpected locks");
    }
    return report;
}

inline RunReport run_evolve_couplings(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    const int steps = field<int>(cfg.params, "/params", "steps");
    const int threshold = field_or<int>(cfg.params, "/params", "extinction_threshold", 3);
    const int period = field_or<int>(cfg.params, "/params", "period", 4);
    const int control_phase = field_or<int>(cfg.params, "/params", "control_phase", 0);
    const std::vector<int> target_phases =
        field<std::vector<int>>(cfg.params, "/params", "target_phases");

    CouplingNetwork net;
    net.oscillators.emplace("c", QuantumOscillator{"c", 0, 1, period, control_phase});
    std::vector<std::string> consistent;
    for (std::size_t i = 0; i < target_phases.size(); ++i) {
        const std::string id = "t" + std::to_string(i);
        net.oscillators.emplace(id, QuantumOscillator{id, 0, 1, period, target_phases[i]});
        const std::string channel = "ch" + std::to_string(i);
        net.candidates.push_back({"c", id, channel});
        if (target_phases[i] == control_phase) consistent.push_back(channel);
    }

    const EvolveResult result = evolve_couplings(net, steps, threshold);

    Json ledger = Json::array();
    for (const CouplingCandidate& c : result.ledger) {
        ledger.push_back({{"channel", c.channel_id},
                          {"fitness", c.fitness},
                          {"alive", c.alive},
                          {"death_step", c.death_step}});
    }
    report.outcomes["ledger"] = ledger;
    report.outcomes["survivors"] = result.surviving_channels;

    if (steps > 2 * threshold) {
        report.check("survivors are exactly the phase-consistent couplings",
                     result.surviving_channels == consistent);
    }
    bool monotone = true;
    for (int prefix = 1; prefix <= steps; ++prefix) {
        const EvolveResult partial = evolve_couplings(net, prefix, threshold);
        for (const CouplingCandidate& c : partial.ledger) {
            if (!c.alive) {
                bool alive_later = false;
                for (const CouplingCandidate& later : result.ledger) {
                    if (later.channel_id == c.channel_id && later.alive) alive_later = true;
                }
                if (alive_later) monotone = false;
            }
        }
    }
    report.check("extinction is permanent", monotone);
    return report;
}

inline RunReport run_ladder(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    const int rungs = field<int>(cfg.params, "/params", "rungs");
    const std::vector<int> skips = field<std::vector<int>>(cfg.params, "/params", "skips");
    const bool closed = field_or<bool>(cfg.params, "/params", "closed", false);

    const LadderNetwork net = build_ladder(rungs, skips, closed);
    const int measured = measure_periodicity(net);
    long long oracle = 1;
    for (int k : skips) oracle = std::lcm(oracle, static_cast<long long>(k));

    report.outcomes["measured_period"] = measured;
    report.outcomes["lcm_oracle"] = oracle;
    report.outcomes["edge_count"] = net.edges().size();

    if (!closed) {
        report.check("propagation period equals the lcm of the skips", measured == oracle,
                     std::to_string(measured) + " vs " + std::to_string(oracle));
    } else {
        report.check("propagation period found", measured >= 1,
                     "period " + std::to_string(measured));
    }
    if (skips.size() >= 2) {
        report.check("periodicity is independent of construction order",
                     history_independence_check(rungs, skips));
    }
    return report;
}

inline RunReport run_madic_grid(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    const auto base = field_or<std::uint64_t>(cfg.params, "/params", "base", 2);
    const int count = field_or<int>(cfg.params, "/params", "count", 4);

    const std::vector<std::uint64_t> knots = madic_knot_positions(base, count);
    report.outcomes["knot_positions"] = knots;
    if (cfg.params.contains("expected_knots")) {
        const auto expected =
            field<std::vector<std::uint64_t>>(cfg.params, "/params", "expected_knots");
        report.check("knot positions match the geometric-sum closed form", knots == expected);
    }

    if (cfg.params.contains("rows")) {
        HopfieldGrid grid;
        for (const Json& row : field<Json>(cfg.params, "/params", "rows")) {
            grid.rows.push_back({field<std::string>(row, "/params/rows", "id"),
                                 Frequency::make(field<long long>(row, "/params/rows", "hz"))});
        }
        for (const Json& col : field<Json>(cfg.params, "/params", "columns")) {
            grid.columns.push_back(
                {field<std::string>(col, "/params/columns", "id"),
                 Frequency::make(field<long long>(col, "/params/columns", "hz"))});
        }
        for (const Json& inter : field<Json>(cfg.params, "/params", "intersections")) {
            if (!inter.is_array() || inter.size() != 3) {
                throw ConfigError("/params/intersections", "expected [row, column, knot] triples");
            }
            grid.intersections.emplace_back(inter[0].get<std::string>(),
                                            inter[1].get<std::string>(),
                                            inter[2].get<std::string>());
        }
        const std::string stimulated = field<std::string>(cfg.params, "/params", "stimulate");
        const std::set<std::string> recalled = resonance_recall(grid, stimulated);
        report.outcomes["recalled"] = recalled;

        report.check("recall contains the stimulated loop", recalled.count(stimulated) == 1);
        bool fixed_point = true;
        for (const std::string& member : recalled) {
            for (const std::string& id : resonance_recall(grid, member)) {
                if (recalled.count(id) == 0) fixed_point = false;
            }
        }
        report.check("recall closure is a fixed point", fixed_point);
        if (cfg.params.contains("expected_recall")) {
            const auto expected =
                field<std::vector<std::string>>(cfg.params, "/params", "expected_recall");
            report.check("recalled set matches expectation",
                         recalled == std::set<std::string>(expected.begin(), expected.end()));
        }
    }
    return report;
}

inline RunReport run_capacity(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = cfg;
    DecoherenceParams params;
    params.temperature_kelvin =
        field_or<double>(cfg.params, "/params", "temperature_kelvin", 310.0);
    params.charges_for_opening = field_or<int>(cfg.params, "/params", "charges", 6);
    const double neuron_area = field_or<double>(cfg.params, "/params", "neuron_area", 1e-9);
    const double module_area = field_or<double>(cfg.params, "/params", "module_area", 1e-17);
    const long long lipids = field_or<long long>(cfg.params, "/params", "lipids_per_module", 100);

    const DecoherenceThreshold th = decoherence_threshold(params);
    const BudgetReport budget = frohlich_budget(neuron_area, module_area, lipids);

    Json worksheet = Json::array();
    for (const WorksheetRow& row : capacity_worksheet(params, neuron_area, module_area, lipids)) {
        worksheet.push_back({{"label", row.label}, {"value", row.value}, {"note", row.note}});
    }
    report.outcomes["worksheet"] = worksheet;
    report.outcomes["potential_volts"] = th.potential_volts;
    report.outcomes["energy_joules"] = th.energy_joules;
    report.outcomes["frequency_hz"] = th.frequency_hz;

    auto within = [](double v, double ref, double tol) {
        return std::abs(v - ref) / ref <= tol;
    };
    report.check("U = kT/ne within 15% of 5 mV", within(th.potential_volts, 5e-3, 0.15));
    report.check("E = kT/n within 15% of 8e-22 J", within(th.energy_joules, 8e-22, 0.15));
    report.check("nu = E/h within 15% of 1e12 Hz", within(th.frequency_hz, 1e12, 0.15));
    report.check("U*e = E to machine precision",
                 std::abs(th.potential_volts * kConstants.elementary_charge - th.energy_joules) <=
                     1e-14 * th.energy_joules);
    report.check("compression: 2e4 channels give 1e8 qubits exactly",
                 compress_qubits(20000) == 100000000);
    report.check("clock: 20 ms delay gives 50 Hz exactly", clock_frequency(0.020) == 50.0);
    report.check("membrane budget: 1e8 modules", budget.modules_per_neuron == 100000000);
    report.check("membrane budget: 1e10 lipids", budget.total_lipids == 10000000000LL);
    return report;
}

} // namespace detail

/// Dispatch a scenario to its module and collect the report. Optionally keeps
/// the first transcripts of protocol-bearing scenarios in `sink`.
inline RunReport run_scenario(const ScenarioConfig& cfg, TranscriptSink* sink = nullptr) {
    switch (cfg.kind) {
    case ScenarioKind::CnotEquivalence: return detail::run_cnot_equivalence(cfg, sink);
    case ScenarioKind::ChoiceOfChannel: return detail::run_choice_of_channel(cfg, sink);
    case ScenarioKind::ChooseNeuron: return detail::run_choose_neuron(cfg);
    case ScenarioKind::PhaseLock: return detail::run_phase_lock(cfg);
    case ScenarioKind::EvolveCouplings: return detail::run_evolve_couplings(cfg);
    case ScenarioKind::Ladder: return detail::run_ladder(cfg);
    case ScenarioKind::MadicGrid: return detail::run_madic_grid(cfg);
    case ScenarioKind::Capacity: return detail::run_capacity(cfg);
    }
    throw std::logic_error("unhandled scenario kind");
}

// ---------------------------------------------------------------------------
// Batch verification
// ---------------------------------------------------------------------------

struct VerifyOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
};

/// Run every *.json scenario in a directory (sorted by filename) and collect
/// an aggregate report. Scenario order and payload are deterministic.
inline Json verify_directory(const std::filesystem::path& dir,
                             const VerifyOverrides& overrides = {}) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError(dir.string(), "not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    Json aggregate;
    aggregate["schema_version"] = 1;
    Json reports = Json::array();
    bool all_passed = true;
    for (const auto& file : files) {
        ScenarioConfig cfg = ScenarioConfig::load_file(file);
        if (overrides.seed.has_value()) cfg.seed = *overrides.seed;
        if (overrides.trials.has_value()) cfg.trials = *overrides.trials;
        const RunReport report = run_scenario(cfg);
        all_passed = all_passed && report.passed();
        reports.push_back(report.to_json());
    }
    aggregate["reports"] = reports;
    aggregate["passed"] = all_passed;
    aggregate["scenario_count"] = files.size();
    return aggregate;
}

} // namespace nqcc
