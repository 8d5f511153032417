#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nqcc {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Constants and parameter bundles
// ---------------------------------------------------------------------------

/// CODATA 2018 exact values.
struct PhysicalConstants {
    double boltzmann_k = 1.380649e-23;        // J/K
    double elementary_charge = 1.602176634e-19; // C
    double planck_h = 6.62607015e-34;          // J s
};

inline constexpr PhysicalConstants kConstants{};

struct DecoherenceParams {
    double temperature_kelvin = 310.0;
    int charges_for_opening = 6;

    void validate() const {
        if (temperature_kelvin <= 0.0) {
            throw std::invalid_argument("temperature must be positive");
        }
        if (charges_for_opening < 1) {
            throw std::invalid_argument("charge count must be >= 1");
        }
    }
};

// ---------------------------------------------------------------------------
// Calculators
// ---------------------------------------------------------------------------

/// f = 2^q: input/output channels addressed by a q-qubit register.
inline BigInt channel_count(int qubits) {
    if (qubits < 0) {
        throw std::invalid_argument("qubit count must be >= 0");
    }
    return BigInt(1) << qubits;
}

/// q = (n/2)^2: qubits fed by n classical channels split into two sets.
inline BigInt compress_qubits(long long channels) {
    if (channels < 2) {
        throw std::invalid_argument("channel count must be >= 2");
    }
    if (channels % 2 != 0) {
        throw std::invalid_argument("channel count must be even");
    }
    const BigInt half = BigInt(channels) / 2;
    return half * half;
}

/// Switching rate of a stage with the given input-to-output delay.
inline double clock_frequency(double delay_seconds) {
    if (delay_seconds <= 0.0) {
        throw std::invalid_argument("delay must be positive");
    }
    return 1.0 / delay_seconds;
}

struct DecoherenceThreshold {
    double potential_volts;  // U = kT / (n e)
    double energy_joules;    // E = U e = kT / n
    double frequency_hz;     // nu = E / h
};

/// Lower bound for oscillation modes that outrun thermal decoherence: the
/// potential step of moving one charge against kT spread over n gating
/// charges, the corresponding energy, and its frequency.
inline DecoherenceThreshold decoherence_threshold(const DecoherenceParams& p) {
    p.validate();
    const double kt = kConstants.boltzmann_k * p.temperature_kelvin;
    const double energy = kt / p.charges_for_opening;
    const double potential = energy / kConstants.elementary_charge;
    const double frequency = energy / kConstants.planck_h;
    return {potential, energy, frequency};
}

/// Average gap between synchronous signals arriving within one millisecond.
inline double coincidence_interval(long long signals_per_ms) {
    if (signals_per_ms < 1) {
        throw std::invalid_argument("signal count must be >= 1");
    }
    return 1e-3 / static_cast<double>(signals_per_ms);
}

/// Membrane budget: one coherent module (one channel protein plus its lipid
/// shell) per module_area patch of the neuron surface.
struct BudgetReport {
    double neuron_membrane_area = 0.0; // m^2
    double module_area = 0.0;          // m^2
    long long modules_per_neuron = 0;
    long long channel_proteins = 0;
    long long lipids_per_module = 0;
    long long total_lipids = 0;
    long long qubit_estimate = 0;
};

inline BudgetReport frohlich_budget(double neuron_membrane_area, double module_area,
                                    long long lipids_per_module,
                                    long long qubits_per_module = 100) {
    if (neuron_membrane_area <= 0.0 || module_area <= 0.0) {
        throw std::invalid_argument("areas must be positive");
    }
    if (lipids_per_module < 0 || qubits_per_module < 0) {
        throw std::invalid_argument("counts must be >= 0");
    }

    BudgetReport report;
    report.neuron_membrane_area = neuron_membrane_area;
    report.module_area = module_area;
    report.lipids_per_module = lipids_per_module;

    if (module_area > neuron_membrane_area) {
        return report; // zero-module report
    }
    const double ratio = neuron_membrane_area / module_area;
    const double rounded = std::nearbyint(ratio);
    // Quotients of power-of-ten areas land a hair off the integer; snap
    // within relative 1e-9 before flooring.
    report.modules_per_neuron = (std::abs(ratio - rounded) <= 1e-9 * ratio)
                                    ? static_cast<long long>(rounded)
                                    : static_cast<long long>(std::floor(ratio));
    report.channel_proteins = report.modules_per_neuron;
    report.total_lipids = report.modules_per_neuron * lipids_per_module;
    report.qubit_estimate = report.modules_per_neuron * qubits_per_module;
    return report;
}

// ---------------------------------------------------------------------------
// Worksheet
// ---------------------------------------------------------------------------

struct WorksheetRow {
    std::string label;
    std::string value;
    std::string note;
};

namespace detail {

inline std::string sci(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", digits, v);
    return buf;
}

} // namespace detail

/// The full capacity worksheet: channel counts, compression, clocks, the
/// decoherence thresholds, coincidence intervals, and the membrane budget.
/// The two qubits-per-cycle derivations disagree by an order of magnitude in
/// the source numbers; both are printed, neither is reconciled.
inline std::vector<WorksheetRow> capacity_worksheet(
    const DecoherenceParams& params = DecoherenceParams{},
    double neuron_membrane_area = 1e-9, double module_area = 1e-17,
    long long lipids_per_module = 100) {
    std::vector<WorksheetRow> rows;

    rows.push_back({"channels f = 2^q, q=12", channel_count(12).str(), "register fan-out"});
    rows.push_back({"channels f = 2^q, q=14", channel_count(14).str(), "~10^4 channels/neuron"});
    rows.push_back({"compression q = (n/2)^2, n=2e4", compress_qubits(20000).str(),
                    "two sets of 10^4 neurons -> 10^8 qubits"});
    rows.push_back({"clock, 20 ms delay", detail::sci(clock_frequency(0.020), 1) + " Hz",
                    "axon/dendrite loop"});
    rows.push_back({"clock, 1 ms delay", detail::sci(clock_frequency(0.001), 1) + " Hz",
                    "dendritic-spine regime"});

    const DecoherenceThreshold th = decoherence_threshold(params);
    rows.push_back({"U = kT/ne", detail::sci(th.potential_volts) + " V", "vs rounded 5 mV"});
    rows.push_back({"E = kT/n", detail::sci(th.energy_joules) + " J", "vs rounded 8e-22 J"});
    rows.push_back({"nu = E/h", detail::sci(th.frequency_hz) + " Hz", "vs rounded 1e12 Hz"});

    rows.push_back({"coincidence, 1e4 signals/ms", detail::sci(coincidence_interval(10000), 1) + " s",
                    "dendritic tree, lower bound"});
    rows.push_back({"coincidence, 1e5 signals/ms", detail::sci(coincidence_interval(100000), 1) + " s",
                    "dendritic tree, upper bound"});

    const BudgetReport budget =
        frohlich_budget(neuron_membrane_area, module_area, lipids_per_module);
    rows.push_back({"membrane modules", std::to_string(budget.modules_per_neuron),
                    detail::sci(neuron_membrane_area, 0) + " m^2 / " +
                        detail::sci(module_area, 0) + " m^2"});
    rows.push_back({"channel proteins", std::to_string(budget.channel_proteins),
                    "one per module"});
    rows.push_back({"total lipids", std::to_string(budget.total_lipids),
                    std::to_string(lipids_per_module) + " per module"});

    // Qubits per 20 ms cycle, both derivations.
    rows.push_back({"qubits/cycle (per-neuron registers)", (BigInt(10000) * 1000000).str(),
                    "10^4 qubits in each of 10^6 neurons"});
    rows.push_back({"qubits/cycle (compressed input)", compress_qubits(1000000).str(),
                    "(10^6/2)^2 from 10^6 signals/cycle"});
    return rows;
}

} // namespace nqcc
