#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "nqcc/qstate.hpp"

using namespace nqcc;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

QuantumRegister bell_state() {
    // (|00> + |11>)/sqrt(2), built from gates
    QuantumRegister reg(2);
    reg = apply_gate(reg, Gate::hadamard(0));
    return apply_gate(reg, Gate::cnot(0, 1));
}

DensityMatrix werner(double p) {
    DensityMatrix rho = density_of(bell_state());
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            rho.at(r, c) *= p;
            if (r == c) rho.at(r, c) += (1.0 - p) * 0.25;
        }
    }
    return rho;
}

/// Random single-qubit density via a Bloch vector drawn inside the unit ball.
DensityMatrix random_qubit_density(RandomSource& rng) {
    double x = 0.0, y = 0.0, z = 0.0;
    do {
        x = rng.uniform(-1.0, 1.0);
        y = rng.uniform(-1.0, 1.0);
        z = rng.uniform(-1.0, 1.0);
    } while (x * x + y * y + z * z > 1.0);
    DensityMatrix rho;
    rho.dim = 2;
    rho.entries = {Complex(0.5 * (1 + z), 0), Complex(0.5 * x, -0.5 * y),
                   Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1 - z), 0)};
    return rho;
}

} // namespace

TEST_CASE("basis construction and ket strings", "[qstate]") {
    const QuantumRegister reg = QuantumRegister::from_bits("10");
    REQUIRE(reg.qubit_count() == 2);
    CHECK(reg.probability(1) == 1.0); // qubit 0 set -> index 1
    CHECK_THROWS_AS(QuantumRegister::basis(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(QuantumRegister(0), std::invalid_argument);
    CHECK_THROWS_AS(QuantumRegister(13), std::invalid_argument);
}

TEST_CASE("single-qubit gates", "[qstate]") {
    SECTION("NOT flips the basis state") {
        const QuantumRegister out = apply_gate(QuantumRegister::from_bits("0"), Gate::not_gate(0));
        CHECK(std::abs(out.amplitude(1) - Complex{1, 0}) < 1e-15);
    }
    SECTION("Hadamard makes the balanced superposition") {
        const QuantumRegister out = apply_gate(QuantumRegister(1), Gate::hadamard(0));
        CHECK(out.amplitude(0).real() == Catch::Approx(kInvSqrt2).epsilon(1e-12));
        CHECK(out.amplitude(1).real() == Catch::Approx(kInvSqrt2).epsilon(1e-12));
    }
    SECTION("CNOT on |10> gives |11>") {
        const QuantumRegister out =
            apply_gate(QuantumRegister::from_bits("10"), Gate::cnot(0, 1));
        CHECK(std::abs(out.amplitude(3) - Complex{1, 0}) < 1e-15);
    }
    SECTION("gate/register mismatch is rejected") {
        CHECK_THROWS_AS(apply_gate(QuantumRegister(1), Gate::not_gate(1)), GateMismatchError);
        CHECK_THROWS_AS(apply_gate(QuantumRegister(2), Gate::cnot(0, 0)), GateMismatchError);
        CHECK_THROWS_AS(apply_gate(QuantumRegister(2), Gate::cnot(0, 2)), GateMismatchError);
    }
}

TEST_CASE("every gate matrix is unitary and invertible on states", "[qstate][property]") {
    RandomSource rng(2024);
    const std::vector<Gate> gates = {
        Gate::not_gate(0),       Gate::hadamard(1),          Gate::rotation(2, 0.7341),
        Gate::cnot(1, 3),        Gate::sqrt_swap(0, 2),      Gate::rotation(0, -2.25),
    };
    for (int trial = 0; trial < 50; ++trial) {
        // random 4-qubit state
        std::vector<Complex> amps(16);
        double norm = 0.0;
        for (Complex& a : amps) {
            a = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            norm += std::norm(a);
        }
        for (Complex& a : amps) a /= std::sqrt(norm);
        const QuantumRegister reg(4, amps);

        for (const Gate& g : gates) {
            const QuantumRegister forward = apply_gate(reg, g);
            CHECK(std::abs(forward.norm_squared() - 1.0) < 1e-12);
            const QuantumRegister back = g.kind == GateKind::Rotation
                                             ? apply_gate(forward, g.inverse())
                                             : apply_gate_adjoint(forward, g);
            for (std::size_t i = 0; i < reg.dimension(); ++i) {
                CHECK(std::abs(back.amplitude(i) - reg.amplitude(i)) < 1e-10);
            }
        }
    }
}

TEST_CASE("measurement follows the Born rule", "[qstate]") {
    SECTION("eigenstate is certain") {
        RandomSource rng(1);
        const auto [outcome, collapsed] = measure(QuantumRegister::from_bits("1"), {0}, rng);
        CHECK(outcome == "1");
        CHECK(collapsed.probability(1) == Catch::Approx(1.0));
    }
    SECTION("balanced superposition over 1e5 seeded trials") {
        RandomSource rng(99);
        const QuantumRegister plus = apply_gate(QuantumRegister(1), Gate::hadamard(0));
        int ones = 0;
        for (int i = 0; i < 100000; ++i) {
            const auto [outcome, collapsed] = measure(plus, {0}, rng);
            if (outcome == "1") ++ones;
        }
        const double freq = ones / 1e5;
        // 3 sigma of binomial(1e5, 0.5)
        CHECK(freq >= 0.494);
        CHECK(freq <= 0.506);
    }
    SECTION("Bell state outcomes are perfectly correlated") {
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            RandomSource rng(seed);
            const auto first = measure(bell_state(), {0}, rng);
            const auto second = measure(first.collapsed, {1}, rng);
            CHECK(first.outcome == second.outcome);
        }
    }
    SECTION("probabilities sum to one on random states") {
        RandomSource rng(512);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Complex> amps(8);
            double norm = 0.0;
            for (Complex& a : amps) {
                a = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
                norm += std::norm(a);
            }
            for (Complex& a : amps) a /= std::sqrt(norm);
            const QuantumRegister reg(3, amps);
            const std::vector<double> probs = measure_probabilities(reg, {2, 0});
            double total = 0.0;
            for (double p : probs) total += p;
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    }
    SECTION("index validation") {
        RandomSource rng(3);
        CHECK_THROWS_AS(measure(QuantumRegister(1), {1}, rng), std::invalid_argument);
        CHECK_THROWS_AS(measure(QuantumRegister(2), {0, 0}, rng), std::invalid_argument);
    }
}

TEST_CASE("reduced density matrices", "[qstate]") {
    SECTION("product state reduces to a pure component") {
        const DensityMatrix rho = reduced_density(QuantumRegister::from_bits("00"), {0});
        CHECK(std::abs(rho.at(0, 0) - Complex{1, 0}) < 1e-15);
        CHECK(purity(rho) == Catch::Approx(1.0));
    }
    SECTION("Bell state reduces to the maximally mixed qubit") {
        const DensityMatrix rho = reduced_density(bell_state(), {0});
        CHECK(rho.at(0, 0).real() == Catch::Approx(0.5).margin(1e-12));
        CHECK(rho.at(1, 1).real() == Catch::Approx(0.5).margin(1e-12));
        CHECK(std::abs(rho.at(0, 1)) < 1e-12);
        CHECK(purity(rho) == Catch::Approx(0.5).margin(1e-10));
    }
    SECTION("|+> tensor |1> keeps qubit 0 pure") {
        const QuantumRegister plus = apply_gate(QuantumRegister(1), Gate::hadamard(0));
        const QuantumRegister one = QuantumRegister::from_bits("1");
        const DensityMatrix rho = reduced_density(tensor(plus, one), {0});
        CHECK(purity(rho) == Catch::Approx(1.0).margin(1e-10));
        CHECK(rho.at(0, 1).real() == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("partial trace preserves trace for every keep set") {
        RandomSource rng(77);
        std::vector<Complex> amps(16);
        double norm = 0.0;
        for (Complex& a : amps) {
            a = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            norm += std::norm(a);
        }
        for (Complex& a : amps) a /= std::sqrt(norm);
        const QuantumRegister reg(4, amps);
        const std::vector<std::vector<int>> keeps = {{0}, {1}, {3}, {0, 1}, {2, 3}, {0, 1, 2, 3}};
        for (const auto& keep : keeps) {
            const DensityMatrix rho = reduced_density(reg, keep);
            CHECK(std::abs(rho.trace_real() - 1.0) < 1e-12);
            CHECK(density_invariants_hold(rho));
        }
    }
    SECTION("empty keep list is rejected") {
        CHECK_THROWS_AS(reduced_density(QuantumRegister(2), {}), std::invalid_argument);
    }
}

TEST_CASE("hermitian eigenvalues against hand-computed spectra", "[qstate]") {
    SECTION("pauli x") {
        DensityMatrix m;
        m.dim = 2;
        m.entries = {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
        const std::vector<double> eig = hermitian_eigenvalues(m);
        CHECK(eig[0] == Catch::Approx(-1.0).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("pauli y (complex entries)") {
        DensityMatrix m;
        m.dim = 2;
        m.entries = {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}};
        const std::vector<double> eig = hermitian_eigenvalues(m);
        CHECK(eig[0] == Catch::Approx(-1.0).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("4x4 diagonal plus off-diagonal block") {
        // [[0.5,0,0,0],[0,0,0.5,0],[0,0.5,0,0],[0,0,0,0.5]] has spectrum
        // {-0.5, 0, 0.5, 0.5} ... computed by hand: block {0,0.5;0.5,0} -> +-0.5
        DensityMatrix m;
        m.dim = 4;
        m.entries.assign(16, Complex{0, 0});
        m.at(0, 0) = 0.5;
        m.at(3, 3) = 0.5;
        m.at(1, 2) = 0.5;
        m.at(2, 1) = 0.5;
        const std::vector<double> eig = hermitian_eigenvalues(m);
        CHECK(eig[0] == Catch::Approx(-0.5).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(0.5).margin(1e-12));
        CHECK(eig[2] == Catch::Approx(0.5).margin(1e-12));
        CHECK(eig[3] == Catch::Approx(0.5).margin(1e-12));
    }
}

TEST_CASE("ppt separability criterion", "[qstate]") {
    SECTION("product basis state is separable with min eigenvalue 0") {
        const PptResult r = ppt_separability(density_of(QuantumRegister::from_bits("01")));
        CHECK(r.verdict == SeparabilityVerdict::Separable);
        CHECK(r.min_partial_transpose_eigenvalue == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("Bell state is entangled with min eigenvalue -0.5") {
        // oracle: the partial transpose of the Bell density has spectrum
        // {1/2, 1/2, 1/2, -1/2}
        const PptResult r = ppt_separability(density_of(bell_state()));
        CHECK(r.verdict == SeparabilityVerdict::Entangled);
        CHECK(r.min_partial_transpose_eigenvalue == Catch::Approx(-0.5).margin(1e-9));
    }
    SECTION("Werner states cross at p = 1/3") {
        // oracle: PT spectrum of p Bell + (1-p) I/4 is {(1+p)/4 x3, (1-3p)/4}
        CHECK(ppt_separability(werner(0.25)).verdict == SeparabilityVerdict::Separable);
        CHECK(ppt_separability(werner(0.50)).verdict == SeparabilityVerdict::Entangled);
        const PptResult at_half = ppt_separability(werner(0.50));
        CHECK(at_half.min_partial_transpose_eigenvalue ==
              Catch::Approx((1.0 - 3 * 0.50) / 4.0).margin(1e-10));
    }
    SECTION("random product states never flag as entangled") {
        RandomSource rng(31337);
        for (int i = 0; i < 1000; ++i) {
            const DensityMatrix rho = tensor(random_qubit_density(rng), random_qubit_density(rng));
            CHECK(ppt_separability(rho).verdict == SeparabilityVerdict::Separable);
        }
    }
    SECTION("wrong dimension is rejected") {
        DensityMatrix rho;
        rho.dim = 2;
        rho.entries = {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};
        CHECK_THROWS_AS(ppt_separability(rho), std::invalid_argument);
    }
}

TEST_CASE("purity", "[qstate]") {
    CHECK(purity(density_of(QuantumRegister(1))) == Catch::Approx(1.0));
    DensityMatrix mixed;
    mixed.dim = 2;
    mixed.entries = {Complex{0.5, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0.5, 0}};
    CHECK(purity(mixed) == Catch::Approx(0.5));
    CHECK(purity(reduced_density(bell_state(), {0})) == Catch::Approx(0.5).margin(1e-10));
}
