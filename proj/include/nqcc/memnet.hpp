#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nqcc/errors.hpp"

namespace nqcc {

// ---------------------------------------------------------------------------
// Ladder networks
// ---------------------------------------------------------------------------

/// Ladder of rungs 0..rung_count-1 with nearest-neighbour stile pairs and
/// skip overlays: overlay k ties rung N to rung N+k, synchronizing every k-th
/// rung into one firing class.
struct LadderNetwork {
    int rung_count = 0;
    std::vector<int> overlays; // skip values, insertion order preserved
    bool closed = false;

    /// Directed edge set (base chain plus overlay connections).
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int n = 0; n < rung_count; ++n) {
            if (n + 1 < rung_count) {
                e.emplace_back(n, n + 1);
            } else if (closed) {
                e.emplace_back(n, 0);
            }
        }
        for (int k : overlays) {
            for (int n = 0; n < rung_count; ++n) {
                if (n + k < rung_count) {
                    e.emplace_back(n, n + k);
                } else if (closed) {
                    e.emplace_back(n, (n + k) % rung_count);
                }
            }
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        return e;
    }
};

inline LadderNetwork build_ladder(int rungs, const std::vector<int>& skips, bool closed) {
    if (rungs < 2) {
        throw ConstructionError("ladder needs at least 2 rungs");
    }
    for (int k : skips) {
        if (k < 2) {
            throw ConstructionError("overlay skip values must be >= 2");
        }
        if (k >= rungs) {
            throw ConstructionError("overlay skip must be smaller than the rung count");
        }
        if (rungs < 2 * k) {
            throw ConstructionError("rung count must be at least twice the largest skip");
        }
    }
    return LadderNetwork{rungs, skips, closed};
}

struct AperiodicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Activation propagation from rung 0, synchronous discrete ticks. The base
/// wavefront advances one rung per tick (draining off the open end or
/// circulating a closed ring). Each overlay is its own ladder riding on the
/// first: a span-k stile pair carries a pulse through k relay segments and
/// re-enters, so the overlay's activation circulates with its skip as period
/// and lights every base rung congruent to its phase. The activation
/// bit-vector spans base rungs plus the overlay relays, and the returned
/// period is the smallest P > 0 with pattern(t + P) = pattern(t) after the
/// transient; it is measured, never assumed from the skip arithmetic.
inline int measure_periodicity(const LadderNetwork& net) {
    const int r = net.rung_count;
    const long long budget = static_cast<long long>(r) * r;

    int relay_bits = 0;
    for (int k : net.overlays) relay_bits += k;

    int wavefront = 0; // -1 once drained off an open end
    std::vector<int> phase(net.overlays.size(), 0);

    auto pattern = [&]() {
        std::vector<bool> bits(r + relay_bits, false);
        if (wavefront >= 0) bits[wavefront] = true;
        int offset = r;
        for (std::size_t i = 0; i < net.overlays.size(); ++i) {
            for (int m = phase[i]; m < r; m += net.overlays[i]) {
                bits[m] = true; // synchronized base rungs of this overlay
            }
            bits[offset + phase[i]] = true; // pulse position on the overlay ladder
            offset += net.overlays[i];
        }
        return bits;
    };

    auto tick = [&]() {
        if (wavefront >= 0) {
            ++wavefront;
            if (wavefront >= r) {
                wavefront = net.closed ? 0 : -1;
            }
        }
        for (std::size_t i = 0; i < net.overlays.size(); ++i) {
            phase[i] = (phase[i] + 1) % net.overlays[i];
        }
    };

    // A pattern can coincide twice during the transient without the sequence
    // being periodic yet, so recurrence is detected on the underlying state
    // and the period then read off the pattern sequence over one full cycle.
    std::map<std::pair<int, std::vector<int>>, long long> seen;
    std::vector<std::vector<bool>> history;
    long long cycle_start = -1;
    long long cycle_length = -1;
    for (long long t = 0; t <= budget; ++t) {
        const auto [it, inserted] = seen.emplace(std::make_pair(wavefront, phase), t);
        if (!inserted) {
            cycle_start = it->second;
            cycle_length = t - it->second;
            break;
        }
        history.push_back(pattern());
        tick();
    }
    if (cycle_start < 0) {
        throw AperiodicError("no activation period within rung_count^2 steps");
    }

    // Smallest P such that pattern(t + P) = pattern(t) for all t in the
    // cycle: a divisor of the state-cycle length with shift-invariant
    // patterns.
    for (long long p = 1; p <= cycle_length; ++p) {
        if (cycle_length % p != 0) continue;
        bool ok = true;
        for (long long i = 0; i < cycle_length && ok; ++i) {
            ok = history[cycle_start + i] ==
                 history[cycle_start + (i + p) % cycle_length];
        }
        if (ok) {
            return static_cast<int>(p);
        }
    }
    return static_cast<int>(cycle_length);
}

/// Builds the network under every permutation of overlay insertion order and
/// reports whether all of them measure the same periodicity.
inline bool history_independence_check(int rungs, const std::vector<int>& skips) {
    if (skips.size() < 2) {
        throw std::invalid_argument("history independence needs at least 2 overlays");
    }
    std::vector<int> order = skips;
    std::sort(order.begin(), order.end());
    bool first = true;
    int reference = 0;
    do {
        const int p = measure_periodicity(build_ladder(rungs, order, false));
        if (first) {
            reference = p;
            first = false;
        } else if (p != reference) {
            return false;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return true;
}

// ---------------------------------------------------------------------------
// m-adic loop strings
// ---------------------------------------------------------------------------

/// Concatemer of loops sharing knot neurons at strictly increasing positions.
struct LoopString {
    std::vector<std::uint64_t> loops; // loop lengths, in string order
    std::vector<std::uint64_t> knot_neurons;
    std::uint64_t m = 2; // adicity

    void validate() const {
        for (std::size_t i = 1; i < knot_neurons.size(); ++i) {
            if (knot_neurons[i] <= knot_neurons[i - 1]) {
                throw std::invalid_argument("knot positions must be strictly increasing");
            }
        }
    }
};

/// Knot positions of an m-adic string: the partial geometric sums
/// 1, 1+base, 1+base+base^2, ... (base 2 gives 1, 3, 7, 15, ...).
inline std::vector<std::uint64_t> madic_knot_positions(std::uint64_t base, int count) {
    if (base < 2) {
        throw std::invalid_argument("adicity base must be >= 2");
    }
    if (count < 1) {
        throw std::invalid_argument("count must be >= 1");
    }
    std::vector<std::uint64_t> positions;
    positions.reserve(count);
    std::uint64_t sum = 0;
    std::uint64_t power = 1;
    for (int i = 0; i < count; ++i) {
        if (sum > std::numeric_limits<std::uint64_t>::max() - power) {
            throw std::overflow_error("knot position exceeds 64 bits");
        }
        sum += power;
        positions.push_back(sum);
        if (i + 1 < count && power > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("knot position exceeds 64 bits");
        }
        power *= base;
    }
    return positions;
}

inline LoopString make_madic_string(std::uint64_t base, int count) {
    LoopString s;
    s.m = base;
    s.knot_neurons = madic_knot_positions(base, count);
    s.loops.reserve(s.knot_neurons.size());
    std::uint64_t prev = 0;
    for (std::uint64_t knot : s.knot_neurons) {
        s.loops.push_back(knot - prev);
        prev = knot;
    }
    s.validate();
    return s;
}

/// Closed-form triadic-string periodicity, 2 + 2N. Exposed as stated; what N
/// indexes is not pinned down, so this is not cross-checked against any
/// propagation run.
inline std::uint64_t triadic_period(std::uint64_t n) {
    if (n < 1) {
        throw std::invalid_argument("triadic_period requires N >= 1");
    }
    return 2 + 2 * n;
}

// ---------------------------------------------------------------------------
// Hopfield grid resonance
// ---------------------------------------------------------------------------

/// Exact rational frequency in Hz. Integer-ratio tests on doubles would be
/// tolerance-dependent, so recall stays in integer arithmetic throughout.
struct Frequency {
    long long num = 0;
    long long den = 1;

    static Frequency make(long long num, long long den = 1) {
        if (den == 0) {
            throw std::invalid_argument("frequency denominator must be nonzero");
        }
        if (num <= 0 || (num > 0) != (den > 0)) {
            throw std::invalid_argument("frequency must be positive");
        }
        const long long g = std::gcd(num, den);
        return Frequency{num / g, den / g};
    }
};

/// True iff f1/f2 is an integer or the reciprocal of one.
inline bool integer_frequency_ratio(const Frequency& f1, const Frequency& f2) {
    const __int128 a = static_cast<__int128>(f1.num) * f2.den; // f1/f2 = a/b
    const __int128 b = static_cast<__int128>(f1.den) * f2.num;
    return a % b == 0 || b % a == 0;
}

struct GridLoop {
    std::string id;
    Frequency frequency;
};

/// Rows and columns of closed loops meeting at knot neurons.
struct HopfieldGrid {
    std::vector<GridLoop> rows;
    std::vector<GridLoop> columns;
    // (row id, column id, knot neuron id)
    std::vector<std::tuple<std::string, std::string, std::string>> intersections;

    const GridLoop* find(const std::string& id) const {
        for (const GridLoop& l : rows) {
            if (l.id == id) return &l;
        }
        for (const GridLoop& l : columns) {
            if (l.id == id) return &l;
        }
        return nullptr;
    }

    void validate() const {
        for (const auto& [row, col, knot] : intersections) {
            const GridLoop* r = nullptr;
            const GridLoop* c = nullptr;
            for (const GridLoop& l : rows) {
                if (l.id == row) r = &l;
            }
            for (const GridLoop& l : columns) {
                if (l.id == col) c = &l;
            }
            if (r == nullptr || c == nullptr) {
                throw std::invalid_argument("intersection references unknown loop: " + row +
                                            " x " + col);
            }
        }
    }
};

/// Associative recall: starting from the stimulated loop, activation spreads
/// across intersections whose loops oscillate at an integer frequency ratio,
/// to transitive closure. The result always contains the stimulus and is a
/// fixed point under re-stimulation from any member.
inline std::set<std::string> resonance_recall(const HopfieldGrid& grid,
                                              const std::string& stimulated) {
    grid.validate();
    if (grid.find(stimulated) == nullptr) {
        throw std::invalid_argument("unknown loop id: " + stimulated);
    }

    std::set<std::string> active{stimulated};
    std::vector<std::string> frontier{stimulated};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& current : frontier) {
            const GridLoop* cur = grid.find(current);
            for (const auto& [row, col, knot] : grid.intersections) {
                std::string other_id;
                if (row == current) {
                    other_id = col;
                } else if (col == current) {
                    other_id = row;
                } else {
                    continue;
                }
                if (active.count(other_id) != 0) continue;
                const GridLoop* other = grid.find(other_id);
                if (integer_frequency_ratio(cur->frequency, other->frequency)) {
                    active.insert(other_id);
                    next.push_back(other_id);
                }
            }
        }
        frontier = std::move(next);
    }
    return active;
}

/// A knot neuron fires only on synchronous input: every feeder loop's pulse
/// must sit at the shared knot neuron, which is phase 0 of each loop. Feeders
/// of periods p1..pf therefore fire the knot exactly at multiples of
/// lcm(p1..pf).
inline bool knot_fire(const std::vector<int>& feeder_phases) {
    if (feeder_phases.empty()) {
        throw std::invalid_argument("knot_fire requires at least one feeder");
    }
    return std::all_of(feeder_phases.begin(), feeder_phases.end(),
                       [](int p) { return p == 0; });
}

} // namespace nqcc
