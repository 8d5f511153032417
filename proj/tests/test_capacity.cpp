#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nqcc/capacity.hpp"

using namespace nqcc;

TEST_CASE("channel count f = 2^q", "[capacity]") {
    CHECK(channel_count(0) == 1);
    CHECK(channel_count(2) == 4);   // the four orthogonal states per neuron
    CHECK(channel_count(14) == 16384);
    CHECK(channel_count(100) == BigInt("1267650600228229401496703205376"));
    CHECK_THROWS_AS(channel_count(-1), std::invalid_argument);
}

TEST_CASE("compression q = (n/2)^2", "[capacity]") {
    CHECK(compress_qubits(20000) == 100000000); // 2*10^4 channels -> 10^8 qubits
    CHECK(compress_qubits(2) == 1);
    CHECK(compress_qubits(200) == 10000);
    CHECK_THROWS_AS(compress_qubits(7), std::invalid_argument);
    CHECK_THROWS_AS(compress_qubits(0), std::invalid_argument);

    SECTION("strictly increasing in n") {
        BigInt last = 0;
        for (long long n = 2; n <= 40; n += 2) {
            const BigInt q = compress_qubits(n);
            CHECK(q > last);
            last = q;
        }
    }
}

TEST_CASE("clock frequency", "[capacity]") {
    CHECK(clock_frequency(0.020) == Catch::Approx(50.0));
    CHECK(clock_frequency(1.0) == 1.0);
    CHECK(clock_frequency(0.001) == Catch::Approx(1000.0));
    CHECK_THROWS_AS(clock_frequency(0.0), std::invalid_argument);
}

TEST_CASE("decoherence thresholds at body temperature", "[capacity]") {
    const DecoherenceThreshold th = decoherence_threshold({310.0, 6});

    // formula values with CODATA constants
    CHECK(th.potential_volts == Catch::Approx(4.452e-3).epsilon(1e-3));
    CHECK(th.energy_joules == Catch::Approx(7.133e-22).epsilon(1e-3));
    CHECK(th.frequency_hz == Catch::Approx(1.0765e12).epsilon(1e-3));

    // within 15% of the rounded headline values 5 mV / 8e-22 J / 1e12 Hz
    CHECK(std::abs(th.potential_volts - 5e-3) / 5e-3 < 0.15);
    CHECK(std::abs(th.energy_joules - 8e-22) / 8e-22 < 0.15);
    CHECK(std::abs(th.frequency_hz - 1e12) / 1e12 < 0.15);

    SECTION("dimensional identities hold to machine precision") {
        for (double t : {77.0, 310.0, 400.0}) {
            for (int n : {1, 6, 12}) {
                const DecoherenceThreshold x = decoherence_threshold({t, n});
                CHECK(x.potential_volts * kConstants.elementary_charge ==
                      Catch::Approx(x.energy_joules).epsilon(1e-14));
                CHECK(x.energy_joules / kConstants.planck_h ==
                      Catch::Approx(x.frequency_hz).epsilon(1e-14));
            }
        }
    }
    SECTION("monotone: frequency falls with n, rises with T") {
        CHECK(decoherence_threshold({310.0, 7}).frequency_hz <
              decoherence_threshold({310.0, 6}).frequency_hz);
        CHECK(decoherence_threshold({320.0, 6}).frequency_hz >
              decoherence_threshold({310.0, 6}).frequency_hz);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(decoherence_threshold({0.0, 6}), std::invalid_argument);
        CHECK_THROWS_AS(decoherence_threshold({310.0, 0}), std::invalid_argument);
    }
}

TEST_CASE("coincidence interval", "[capacity]") {
    CHECK(coincidence_interval(100000) == Catch::Approx(1e-8));
    CHECK(coincidence_interval(1) == Catch::Approx(1e-3));
    CHECK(coincidence_interval(10000) == Catch::Approx(1e-7));
    CHECK_THROWS_AS(coincidence_interval(0), std::invalid_argument);
}

TEST_CASE("membrane module budget", "[capacity]") {
    SECTION("headline totals: 1e8 modules, 1e10 lipids") {
        const BudgetReport r = frohlich_budget(1e-9, 1e-17, 100);
        CHECK(r.modules_per_neuron == 100000000);
        CHECK(r.channel_proteins == 100000000);
        CHECK(r.total_lipids == 10000000000LL);
        CHECK(r.qubit_estimate == 10000000000LL); // default allowance = lipid count
    }
    SECTION("equal areas give one module") {
        CHECK(frohlich_budget(1e-17, 1e-17, 100).modules_per_neuron == 1);
    }
    SECTION("half the lipids") {
        CHECK(frohlich_budget(1e-9, 1e-17, 50).total_lipids == 5000000000LL);
    }
    SECTION("module larger than the neuron = zero-module report") {
        const BudgetReport r = frohlich_budget(1e-18, 1e-17, 100);
        CHECK(r.modules_per_neuron == 0);
        CHECK(r.total_lipids == 0);
    }
    SECTION("non-integer ratios floor") {
        CHECK(frohlich_budget(2.5e-17, 1e-17, 100).modules_per_neuron == 2);
    }
    SECTION("invariant: total lipids = modules x lipids per module") {
        const BudgetReport r = frohlich_budget(3e-12, 1e-17, 73);
        CHECK(r.total_lipids == r.modules_per_neuron * r.lipids_per_module);
    }
    CHECK_THROWS_AS(frohlich_budget(-1e-9, 1e-17, 100), std::invalid_argument);
}

TEST_CASE("capacity worksheet assembles every headline number", "[capacity]") {
    const std::vector<WorksheetRow> rows = capacity_worksheet();
    auto value_of = [&](const std::string& label) {
        for (const WorksheetRow& r : rows) {
            if (r.label == label) return r.value;
        }
        FAIL("missing row: " << label);
        return std::string{};
    };
    CHECK(value_of("channels f = 2^q, q=14") == "16384");
    CHECK(value_of("compression q = (n/2)^2, n=2e4") == "100000000");
    CHECK(value_of("membrane modules") == "100000000");
    CHECK(value_of("total lipids") == "10000000000");
    CHECK(value_of("qubits/cycle (per-neuron registers)") == "10000000000");
    CHECK(value_of("qubits/cycle (compressed input)") == "250000000000");
}
