#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nqcc/errors.hpp"
#include "nqcc/protocol.hpp"
#include "nqcc/rng.hpp"

namespace nqcc {

// ---------------------------------------------------------------------------
// Feedback loop and choice of channel
// ---------------------------------------------------------------------------

/// Audit record of the AND-gate feedback loop: the local readout, every
/// incoming comparison, and the channel it latched. At most one channel may
/// ever latch.
struct FeedbackLoop {
    std::string control_id;
    std::string local_symbol;
    std::vector<std::pair<std::string, std::string>> comparisons; // (incoming symbol, channel id)
    std::optional<std::string> latched_channel;

    void compare(const std::string& incoming, const std::string& channel_id) {
        comparisons.emplace_back(incoming, channel_id);
        if (incoming == local_symbol) {
            if (latched_channel.has_value()) {
                throw std::logic_error("feedback loop latched a second channel: " + channel_id);
            }
            latched_channel = channel_id;
        }
    }
};

struct ChannelChoiceResult {
    std::optional<std::string> latched_channel; // empty = not coupled this run
    std::string latched_conversion;             // e.g. "[a<->b']" when latched
    bool target_mutated = false;
    bool matches_cnot = false;
    NeuronNode control;
    NeuronNode target;
    FeedbackLoop loop;
    ProtocolTranscript transcript;
};

/// Choice of channel (feedback-loop selection). All wired channels whose
/// target endpoint matches the target's state fire back at once; the control
/// measures itself and its AND gate admits only the delivery that agrees with
/// the local readout. With the complete four-conversion wiring exactly one
/// channel latches; with partial wiring the run may end not coupled.
inline ChannelChoiceResult choice_of_channel(NeuronNode control, NeuronNode target,
                                             RandomSource& rng,
                                             std::vector<ClassicalChannel> wiring) {
    if (!control.current_symbol() || !target.current_symbol()) {
        throw std::invalid_argument("choice_of_channel requires nodes in pointer eigenstates");
    }

    ProtocolTranscript t;
    t.initial[control.id] = control.current_eigenstate();
    t.initial[target.id] = target.current_eigenstate();
    const std::size_t c0 = control.current_eigenstate();
    const std::size_t t0 = target.current_eigenstate();

    // The target's free quantum decision.
    const bool mutated = rng.coin();
    if (mutated) {
        target = mutate(std::move(target));
        t.steps.push_back({StepKind::Mutate, target.id, "", "", "", -1});
    }

    // Local readout on the control; readout on the target feeds the channels.
    auto [control_symbol, control_after] = translate_readout(std::move(control), rng);
    control = std::move(control_after);
    t.steps.push_back({StepKind::Translate, control.id, control_symbol, "", "",
                       static_cast<int>(control.index_for(control_symbol))});

    auto [target_symbol, target_after] = translate_readout(std::move(target), rng);
    target = std::move(target_after);
    t.steps.push_back({StepKind::Translate, target.id, target_symbol, "", "",
                       static_cast<int>(target.index_for(target_symbol))});

    FeedbackLoop loop;
    loop.control_id = control.id;
    loop.local_symbol = control_symbol;

    std::string latched_conversion;
    for (ClassicalChannel& ch : wiring) {
        const ChannelEndpoint* near = nullptr;
        if (ch.endpoint_a.node_id == target.id && ch.endpoint_a.symbol == target_symbol) {
            near = &ch.endpoint_a;
        } else if (ch.endpoint_b.node_id == target.id && ch.endpoint_b.symbol == target_symbol) {
            near = &ch.endpoint_b;
        }
        if (near == nullptr) continue;

        const std::string delivered = convert(ch, target_symbol);
        t.steps.push_back({StepKind::Convert, ch.id, target_symbol, delivered, "",
                           static_cast<int>(control.index_for(delivered))});
        const bool match = delivered == control_symbol;
        loop.compare(delivered, ch.id);
        t.steps.push_back(
            {StepKind::AndGate, control.id, control_symbol, delivered, "", match ? 1 : 0});
        if (match) latched_conversion = ch.conversion_name();
    }

    if (loop.latched_channel.has_value()) {
        const std::string prior = *control.current_symbol();
        control = reset_state(std::move(control), control_symbol);
        t.steps.push_back({StepKind::Reset, control.id, control_symbol, "", prior,
                           static_cast<int>(control.index_for(control_symbol))});
    }

    t.final_state[control.id] = control.current_eigenstate();
    t.final_state[target.id] = target.current_eigenstate();

    const std::size_t c1 = control.current_eigenstate();
    const std::size_t t1 = target.current_eigenstate();
    const bool cnot_match =
        loop.latched_channel.has_value() && c1 == c0 && t1 == (c0 == 1 ? t0 ^ 1 : t0);

    ChannelChoiceResult result{loop.latched_channel, latched_conversion, mutated,
                               cnot_match,           std::move(control), std::move(target),
                               std::move(loop),      std::move(t)};
    return result;
}

inline ChannelChoiceResult choice_of_channel(NeuronNode control, NeuronNode target,
                                             RandomSource& rng) {
    std::vector<ClassicalChannel> wiring = wire_complete(control, target);
    return choice_of_channel(std::move(control), std::move(target), rng, std::move(wiring));
}

// ---------------------------------------------------------------------------
// Probability law and choice of neuron
// ---------------------------------------------------------------------------

/// p = 1 - 0.5^n: the chance that at least one of n target neurons mutates.
inline double mutation_probability(int n) {
    if (n < 1) {
        throw std::invalid_argument("mutation_probability requires n >= 1");
    }
    return 1.0 - std::pow(0.5, n);
}

struct NeuronChoiceResult {
    std::optional<std::string> coupled_target;
    std::optional<std::string> coupled_channel;
    std::vector<std::string> mutated_targets;
};

/// Deterministic core of choose_neuron: couple to the lowest-id target whose
/// mutate flag is set (mutation is mandatory for coupling).
inline NeuronChoiceResult choose_neuron_with(const NeuronNode& control,
                                             const std::vector<NeuronNode>& targets,
                                             const std::vector<bool>& mutate_flags) {
    if (mutate_flags.size() != targets.size()) {
        throw std::invalid_argument("one mutate flag per target required");
    }
    const std::string control_symbol = [&] {
        const auto sym = control.current_symbol();
        if (!sym) throw std::invalid_argument("choose_neuron requires control in an eigenstate");
        return *sym;
    }();

    NeuronChoiceResult result;
    const NeuronNode* winner = nullptr;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!mutate_flags[i]) continue;
        const NeuronNode& target = targets[i];
        result.mutated_targets.push_back(target.id);
        if (winner == nullptr || target.id < winner->id) {
            winner = &target;
        }
    }
    if (winner != nullptr) {
        // The coupled conversion pairs the control's readout with the
        // target's post-mutation symbol.
        const auto sym = winner->current_symbol();
        if (!sym) throw std::invalid_argument("choose_neuron requires targets in eigenstates");
        const std::string mutated_symbol = winner->symbol_for(winner->index_for(*sym) ^ 1);
        result.coupled_target = winner->id;
        result.coupled_channel =
            control.id + "." + control_symbol + "<->" + winner->id + "." + mutated_symbol;
    }
    return result;
}

/// "Choice of channel is choice of neuron": every target flips an independent
/// fair mutate coin; among the mutated targets exactly one couples (lowest
/// node id). No mutation, no coupling.
inline NeuronChoiceResult choose_neuron(const NeuronNode& control,
                                        const std::vector<NeuronNode>& targets,
                                        RandomSource& rng) {
    std::vector<bool> flags(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        flags[i] = rng.coin();
    }
    return choose_neuron_with(control, targets, flags);
}

// ---------------------------------------------------------------------------
// Quantum oscillators: induced fit and Darwinian evolution of couplings
// ---------------------------------------------------------------------------

/// Periodic fluctuation between a ground and one mutator eigenstate, with a
/// discrete phase advancing one slot per tick.
struct QuantumOscillator {
    std::string node_id;
    std::size_t ground_index = 0;
    std::size_t mutator_index = 1;
    int period = 1;
    int phase = 0;

    void validate() const {
        if (ground_index == mutator_index) {
            throw std::invalid_argument("oscillator ground and mutator states must differ");
        }
        if (period < 1 || phase < 0 || phase >= period) {
            throw std::invalid_argument("oscillator phase must lie in [0, period)");
        }
    }

    void tick() { phase = (phase + 1) % period; }
};

struct PhaseLockResult {
    QuantumOscillator control; // the selected control mutation, phase aligned
    QuantumOscillator target;
    int lock_tick = 0;
};

/// Induced fit: the control's first mutation choice is free (drawn from rng
/// among its candidate oscillations); that oscillation then drifts one phase
/// slot per tick relative to the targets until it coincides with one of them
/// or a full period elapses without a match. A lock requires equal periods;
/// ties go to the earliest target in the list.
inline std::optional<PhaseLockResult> induced_fit_phase_lock(
    const std::vector<QuantumOscillator>& control_candidates,
    const std::vector<QuantumOscillator>& targets, RandomSource& rng) {
    if (control_candidates.empty() || targets.empty()) {
        throw std::invalid_argument("induced_fit_phase_lock requires candidates and targets");
    }
    for (const QuantumOscillator& osc : control_candidates) osc.validate();
    for (const QuantumOscillator& osc : targets) osc.validate();

    const QuantumOscillator& chosen =
        control_candidates[static_cast<std::size_t>(rng.below(control_candidates.size()))];

    for (int tick = 0; tick < chosen.period; ++tick) {
        const int search_phase = (chosen.phase + tick) % chosen.period;
        for (const QuantumOscillator& target : targets) {
            if (target.period == chosen.period && target.phase == search_phase) {
                QuantumOscillator locked = chosen;
                locked.phase = search_phase;
                return PhaseLockResult{locked, target, tick};
            }
        }
    }
    return std::nullopt;
}

/// True iff the two oscillators stay in phase for `ticks` further steps.
inline bool phases_stay_locked(QuantumOscillator a, QuantumOscillator b, int ticks) {
    if (a.period != b.period || a.phase != b.phase) return false;
    for (int i = 0; i < ticks; ++i) {
        a.tick();
        b.tick();
        if (a.phase != b.phase) return false;
    }
    return true;
}

/// A control->target coupling under selection pressure. Fitness moves by +-1
/// per step; extinction (alive = false) is permanent within a run.
struct CouplingCandidate {
    std::string control_id;
    std::string target_id;
    std::string channel_id;
    long long fitness = 0;
    bool alive = true;
    int death_step = -1; // step at which the candidate died, -1 if alive
};

struct CouplingNetwork {
    std::map<std::string, QuantumOscillator> oscillators; // node id -> oscillator
    std::vector<CouplingCandidate> candidates;
};

struct EvolveResult {
    std::vector<CouplingCandidate> ledger; // final fitness and death record
    std::vector<std::string> surviving_channels;
};

/// Darwinian superselection: each step, phase-consistent couplings gain one
/// fitness point and inconsistent ones lose one; a candidate whose fitness
/// reaches -extinction_threshold is extinguished for good. Consistency means
/// equal period and equal phase at the step's tick, so after more than
/// 2*threshold steps the survivors are exactly the always-consistent set.
inline EvolveResult evolve_couplings(CouplingNetwork net, int steps,
                                     int extinction_threshold = 3) {
    if (steps < 0 || extinction_threshold < 1) {
        throw std::invalid_argument("evolve_couplings requires steps >= 0 and threshold >= 1");
    }
    for (const auto& [id, osc] : net.oscillators) osc.validate();
    for (const CouplingCandidate& c : net.candidates) {
        if (net.oscillators.find(c.control_id) == net.oscillators.end() ||
            net.oscillators.find(c.target_id) == net.oscillators.end()) {
            throw std::invalid_argument("coupling references unknown oscillator: " + c.channel_id);
        }
    }

    for (int step = 1; step <= steps; ++step) {
        for (CouplingCandidate& c : net.candidates) {
            if (!c.alive) continue;
            const QuantumOscillator& control = net.oscillators.at(c.control_id);
            const QuantumOscillator& target = net.oscillators.at(c.target_id);
            const bool consistent =
                control.period == target.period && control.phase == target.phase;
            c.fitness += consistent ? 1 : -1;
            if (c.fitness <= -static_cast<long long>(extinction_threshold)) {
                c.alive = false;
                c.death_step = step;
            }
        }
        for (auto& [id, osc] : net.oscillators) osc.tick();
    }

    EvolveResult result;
    result.ledger = net.candidates;
    for (const CouplingCandidate& c : net.candidates) {
        if (c.alive) result.surviving_channels.push_back(c.channel_id);
    }
    return result;
}

} // namespace nqcc
