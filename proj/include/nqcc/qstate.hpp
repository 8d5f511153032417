#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nqcc/errors.hpp"
#include "nqcc/rng.hpp"

namespace nqcc {

using Complex = std::complex<double>;

constexpr int kMaxQubits = 12; // exact dense vectors stay desk-sized
constexpr double kNormTolerance = 1e-12;

// ---------------------------------------------------------------------------
// QuantumRegister
// ---------------------------------------------------------------------------

/// Exact state vector over `qubit_count` qubits. Basis index convention:
/// bit i of the index is the value of qubit i, so |10> (qubit 0 set,
/// qubit 1 clear) lives at index 1.
class QuantumRegister {
public:
    explicit QuantumRegister(int qubit_count)
        : qubit_count_(check_count(qubit_count)),
          amplitudes_(std::size_t{1} << qubit_count, Complex{0.0, 0.0}) {
        amplitudes_[0] = Complex{1.0, 0.0};
    }

    QuantumRegister(int qubit_count, std::vector<Complex> amplitudes)
        : qubit_count_(check_count(qubit_count)), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != (std::size_t{1} << qubit_count_)) {
            throw std::invalid_argument("amplitude vector length must be 2^qubit_count");
        }
        if (std::abs(norm_squared() - 1.0) > 1e-9) {
            throw std::invalid_argument("amplitude vector is not normalized");
        }
        renormalize();
    }

    /// Register prepared in the computational basis state `index`.
    static QuantumRegister basis(int qubit_count, std::size_t index) {
        QuantumRegister reg(qubit_count);
        if (index >= reg.dimension()) {
            throw std::invalid_argument("basis index out of range");
        }
        reg.amplitudes_[0] = Complex{0.0, 0.0};
        reg.amplitudes_[index] = Complex{1.0, 0.0};
        return reg;
    }

    /// Register from a ket string, leftmost character = qubit 0 ("10" sets
    /// qubit 0 and clears qubit 1).
    static QuantumRegister from_bits(const std::string& bits) {
        if (bits.empty()) {
            throw std::invalid_argument("empty bit string");
        }
        std::size_t index = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                index |= std::size_t{1} << i;
            } else if (bits[i] != '0') {
                throw std::invalid_argument("bit string must be 0s and 1s");
            }
        }
        return basis(static_cast<int>(bits.size()), index);
    }

    int qubit_count() const { return qubit_count_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex& a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    bool is_normalized(double tol = kNormTolerance) const {
        return std::abs(norm_squared() - 1.0) <= tol;
    }

    /// Probability that the register is found in basis state `index`.
    double probability(std::size_t index) const { return std::norm(amplitudes_.at(index)); }

    void renormalize() {
        const double n = std::sqrt(norm_squared());
        for (Complex& a : amplitudes_) {
            a /= n;
        }
    }

    std::vector<Complex>& mutable_amplitudes() { return amplitudes_; }

private:
    static int check_count(int n) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("qubit_count must be in [1, 12]");
        }
        return n;
    }

    int qubit_count_;
    std::vector<Complex> amplitudes_;
};

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

enum class GateKind { Not, Hadamard, Rotation, Cnot, SqrtSwap };

/// Named unitary plus the qubits it acts on. Rotation carries an angle and is
/// the phase rotation exp(i*theta*Z/2); SqrtSwap is the standard square-root
/// of SWAP on a qubit pair.
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    double angle = 0.0;

    static Gate not_gate(int q) { return {GateKind::Not, {q}}; }
    static Gate hadamard(int q) { return {GateKind::Hadamard, {q}}; }
    static Gate rotation(int q, double theta) { return {GateKind::Rotation, {q}, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::Cnot, {control, target}}; }
    static Gate sqrt_swap(int a, int b) { return {GateKind::SqrtSwap, {a, b}}; }

    int arity() const { return (kind == GateKind::Cnot || kind == GateKind::SqrtSwap) ? 2 : 1; }

    /// Dense unitary, row-major, dimension 2^arity. Two-qubit matrices index
    /// their local basis as (bit 0 = first target, bit 1 = second target).
    std::vector<Complex> matrix() const {
        const double s = 1.0 / std::sqrt(2.0);
        switch (kind) {
        case GateKind::Not:
            return {0, 1, 1, 0};
        case GateKind::Hadamard:
            return {s, s, s, -s};
        case GateKind::Rotation: {
            const Complex up = std::polar(1.0, angle / 2.0);
            const Complex dn = std::polar(1.0, -angle / 2.0);
            return {up, 0, 0, dn};
        }
        case GateKind::Cnot:
            // control = first target (local bit 0), target = second.
            return {1, 0, 0, 0,
                    0, 0, 0, 1,
                    0, 0, 1, 0,
                    0, 1, 0, 0};
        case GateKind::SqrtSwap: {
            const Complex p{0.5, 0.5};
            const Complex m{0.5, -0.5};
            return {1, 0, 0, 0,
                    0, p, m, 0,
                    0, m, p, 0,
                    0, 0, 0, 1};
        }
        }
        throw std::logic_error("unknown gate kind");
    }

    /// Gate whose matrix is the adjoint of this one.
    Gate inverse() const {
        switch (kind) {
        case GateKind::Rotation:
            return rotation(targets[0], -angle);
        default:
            return *this; // adjoint handled by apply_gate_adjoint for SqrtSwap
        }
    }

    void validate_for(const QuantumRegister& reg) const {
        if (static_cast<int>(targets.size()) != arity()) {
            throw GateMismatchError("gate arity does not match target list");
        }
        for (int q : targets) {
            if (q < 0 || q >= reg.qubit_count()) {
                throw GateMismatchError("gate target index out of range for register");
            }
        }
        if (arity() == 2 && targets[0] == targets[1]) {
            throw GateMismatchError("gate target indices must be distinct");
        }
    }
};

namespace detail {

inline void apply_1q(std::vector<Complex>& amps, int q, const std::vector<Complex>& u) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = u[0] * a0 + u[1] * a1;
        amps[i | bit] = u[2] * a0 + u[3] * a1;
    }
}

inline void apply_2q(std::vector<Complex>& amps, int qa, int qb, const std::vector<Complex>& u) {
    const std::size_t ba = std::size_t{1} << qa;
    const std::size_t bb = std::size_t{1} << qb;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ba) || (i & bb)) continue;
        const std::size_t i00 = i;
        const std::size_t i10 = i | ba; // local bit 0 = qa
        const std::size_t i01 = i | bb;
        const std::size_t i11 = i | ba | bb;
        const Complex a00 = amps[i00], a10 = amps[i10], a01 = amps[i01], a11 = amps[i11];
        // local basis order: 00, 10, 01, 11 mapped to rows 0..3 via bit0=qa, bit1=qb
        amps[i00] = u[0] * a00 + u[1] * a10 + u[2] * a01 + u[3] * a11;
        amps[i10] = u[4] * a00 + u[5] * a10 + u[6] * a01 + u[7] * a11;
        amps[i01] = u[8] * a00 + u[9] * a10 + u[10] * a01 + u[11] * a11;
        amps[i11] = u[12] * a00 + u[13] * a10 + u[14] * a01 + u[15] * a11;
    }
}

inline std::vector<Complex> adjoint(const std::vector<Complex>& u, std::size_t dim) {
    std::vector<Complex> out(u.size());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[c * dim + r] = std::conj(u[r * dim + c]);
        }
    }
    return out;
}

} // namespace detail

/// Apply `g` to `reg`, returning the new register. Norm is preserved.
inline QuantumRegister apply_gate(const QuantumRegister& reg, const Gate& g) {
    g.validate_for(reg);
    QuantumRegister out = reg;
    const std::vector<Complex> u = g.matrix();
    if (g.arity() == 1) {
        detail::apply_1q(out.mutable_amplitudes(), g.targets[0], u);
    } else {
        detail::apply_2q(out.mutable_amplitudes(), g.targets[0], g.targets[1], u);
    }
    return out;
}

/// Apply the adjoint of `g` (exact inverse for every gate in the set).
inline QuantumRegister apply_gate_adjoint(const QuantumRegister& reg, const Gate& g) {
    g.validate_for(reg);
    QuantumRegister out = reg;
    const std::size_t dim = std::size_t{1} << g.arity();
    const std::vector<Complex> u = detail::adjoint(g.matrix(), dim);
    if (g.arity() == 1) {
        detail::apply_1q(out.mutable_amplitudes(), g.targets[0], u);
    } else {
        detail::apply_2q(out.mutable_amplitudes(), g.targets[0], g.targets[1], u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

struct MeasureResult {
    std::string outcome; // one character per measured qubit, in request order
    QuantumRegister collapsed;
};

inline void check_qubit_indices(const QuantumRegister& reg, const std::vector<int>& qubits) {
    if (qubits.empty()) {
        throw std::invalid_argument("qubit index list must be non-empty");
    }
    for (int q : qubits) {
        if (q < 0 || q >= reg.qubit_count()) {
            throw std::invalid_argument("qubit index out of range");
        }
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("qubit indices must be distinct");
            }
        }
    }
}

/// Born-rule outcome probabilities for measuring `qubits` jointly. Entry k
/// is the probability of the outcome whose bit i equals bit i of k (ordered
/// as in `qubits`). Sums to 1.
inline std::vector<double> measure_probabilities(const QuantumRegister& reg,
                                                 const std::vector<int>& qubits) {
    check_qubit_indices(reg, qubits);
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < reg.dimension(); ++i) {
        std::size_t k = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            if (i & (std::size_t{1} << qubits[b])) {
                k |= std::size_t{1} << b;
            }
        }
        probs[k] += std::norm(reg.amplitude(i));
    }
    return probs;
}

/// Projective measurement of `qubits` in the computational basis. The
/// collapsed register is renormalized and consistent with the outcome.
inline MeasureResult measure(const QuantumRegister& reg, const std::vector<int>& qubits,
                             RandomSource& rng) {
    const std::vector<double> probs = measure_probabilities(reg, qubits);
    const double draw = rng.uniform();
    double acc = 0.0;
    std::size_t picked = probs.size() - 1;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (draw < acc) {
            picked = k;
            break;
        }
    }

    QuantumRegister collapsed = reg;
    auto& amps = collapsed.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t k = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            if (i & (std::size_t{1} << qubits[b])) {
                k |= std::size_t{1} << b;
            }
        }
        if (k != picked) {
            amps[i] = Complex{0.0, 0.0};
        }
    }
    collapsed.renormalize();

    std::string outcome(qubits.size(), '0');
    for (std::size_t b = 0; b < qubits.size(); ++b) {
        if (picked & (std::size_t{1} << b)) {
            outcome[b] = '1';
        }
    }
    return {std::move(outcome), std::move(collapsed)};
}

// ---------------------------------------------------------------------------
// Density matrices and the PPT criterion
// ---------------------------------------------------------------------------

/// Dense Hermitian matrix with unit trace, row-major storage.
struct DensityMatrix {
    std::size_t dim = 0;
    std::vector<Complex> entries;

    Complex at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
    Complex& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }

    double trace_real() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            t += at(i, i).real();
        }
        return t;
    }

    bool is_hermitian(double tol = 1e-12) const {
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
};

/// Partial trace of a pure register onto the qubits in `keep` (request order
/// defines the local bit order of the result).
inline DensityMatrix reduced_density(const QuantumRegister& reg, const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("keep list must be non-empty");
    }
    check_qubit_indices(reg, keep);

    const std::size_t kd = std::size_t{1} << keep.size();
    DensityMatrix rho;
    rho.dim = kd;
    rho.entries.assign(kd * kd, Complex{0.0, 0.0});

    auto local_index = [&](std::size_t full) {
        std::size_t k = 0;
        for (std::size_t b = 0; b < keep.size(); ++b) {
            if (full & (std::size_t{1} << keep[b])) {
                k |= std::size_t{1} << b;
            }
        }
        return k;
    };
    auto rest_index = [&](std::size_t full) {
        std::size_t k = 0;
        std::size_t out = 0;
        for (int q = 0; q < reg.qubit_count(); ++q) {
            if (std::find(keep.begin(), keep.end(), q) != keep.end()) continue;
            if (full & (std::size_t{1} << q)) {
                k |= std::size_t{1} << out;
            }
            ++out;
        }
        return k;
    };

    // rho[i,j] = sum over traced-out configurations of psi_i psi_j^*
    const std::size_t n = reg.dimension();
    std::vector<std::size_t> loc(n), rest(n);
    for (std::size_t i = 0; i < n; ++i) {
        loc[i] = local_index(i);
        rest[i] = rest_index(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (reg.amplitude(i) == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (rest[i] != rest[j]) continue;
            rho.at(loc[i], loc[j]) += reg.amplitude(i) * std::conj(reg.amplitude(j));
        }
    }
    return rho;
}

/// Density matrix of the full register, |psi><psi|.
inline DensityMatrix density_of(const QuantumRegister& reg) {
    DensityMatrix rho;
    rho.dim = reg.dimension();
    rho.entries.assign(rho.dim * rho.dim, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < rho.dim; ++r) {
        for (std::size_t c = 0; c < rho.dim; ++c) {
            rho.at(r, c) = reg.amplitude(r) * std::conj(reg.amplitude(c));
        }
    }
    return rho;
}

/// trace(rho^2); equals 1 exactly for pure states.
inline double purity(const DensityMatrix& rho) {
    double p = 0.0;
    for (const Complex& e : rho.entries) {
        p += std::norm(e); // Hermitian: tr(rho^2) = sum |rho_ij|^2
    }
    return p;
}

namespace detail {

/// Cyclic Jacobi eigenvalues of a real symmetric matrix (row-major, n x n).
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = r + 1; c < n; ++c) {
                off += at(r, c) * at(r, c);
            }
        }
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Computed by embedding
/// H = A + iB into the real symmetric [[A, -B], [B, A]], whose spectrum is
/// that of H with every eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
    const std::size_t n = m.dim;
    std::vector<double> big(4 * n * n, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return big[r * 2 * n + c]; };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Complex e = m.at(r, c);
            at(r, c) = e.real();
            at(r + n, c + n) = e.real();
            at(r, c + n) = -e.imag();
            at(r + n, c) = e.imag();
        }
    }
    const std::vector<double> doubled = detail::symmetric_eigenvalues(std::move(big), 2 * n);
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return eig;
}

/// Full density-matrix invariant check (Hermitian, unit trace, PSD). The
/// eigenvalue part is skipped above `eig_dim_limit` to keep it cheap.
inline bool density_invariants_hold(const DensityMatrix& rho, std::size_t eig_dim_limit = 64) {
    if (!rho.is_hermitian(1e-12)) return false;
    if (std::abs(rho.trace_real() - 1.0) > 1e-12) return false;
    if (rho.dim <= eig_dim_limit) {
        const std::vector<double> eig = hermitian_eigenvalues(rho);
        if (!eig.empty() && eig.front() < -1e-10) return false;
    }
    return true;
}

enum class SeparabilityVerdict { Separable, Entangled };

struct PptResult {
    SeparabilityVerdict verdict;
    double min_partial_transpose_eigenvalue;
};

/// Peres-Horodecki test for a two-qubit density matrix. Partial transpose is
/// taken over the second qubit (local bit 1); for 2x2 systems the criterion
/// is exact, so the verdict is definitive.
inline PptResult ppt_separability(const DensityMatrix& rho, double tol = 1e-10) {
    if (rho.dim != 4) {
        throw std::invalid_argument("ppt_separability supports two-qubit (4x4) densities only");
    }
    DensityMatrix pt;
    pt.dim = 4;
    pt.entries.assign(16, Complex{0.0, 0.0});
    for (std::size_t q0 = 0; q0 < 2; ++q0) {
        for (std::size_t q1 = 0; q1 < 2; ++q1) {
            for (std::size_t p0 = 0; p0 < 2; ++p0) {
                for (std::size_t p1 = 0; p1 < 2; ++p1) {
                    // swap the second-qubit indices between row and column
                    pt.at(q0 + 2 * q1, p0 + 2 * p1) = rho.at(q0 + 2 * p1, p0 + 2 * q1);
                }
            }
        }
    }
    const std::vector<double> eig = hermitian_eigenvalues(pt);
    const double min_eig = eig.front();
    return {min_eig < -tol ? SeparabilityVerdict::Entangled : SeparabilityVerdict::Separable,
            min_eig};
}

/// Tensor product of two registers; qubits of `a` come first (low bits).
inline QuantumRegister tensor(const QuantumRegister& a, const QuantumRegister& b) {
    const int n = a.qubit_count() + b.qubit_count();
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t j = 0; j < b.dimension(); ++j) {
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            amps[(j << a.qubit_count()) | i] = a.amplitude(i) * b.amplitude(j);
        }
    }
    return QuantumRegister(n, std::move(amps));
}

/// Kronecker product of two density matrices (first factor = low bits).
inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    DensityMatrix out;
    out.dim = a.dim * b.dim;
    out.entries.assign(out.dim * out.dim, Complex{0.0, 0.0});
    for (std::size_t rb = 0; rb < b.dim; ++rb) {
        for (std::size_t cb = 0; cb < b.dim; ++cb) {
            for (std::size_t ra = 0; ra < a.dim; ++ra) {
                for (std::size_t ca = 0; ca < a.dim; ++ca) {
                    out.at(rb * a.dim + ra, cb * a.dim + ca) = a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    return out;
}

} // namespace nqcc
