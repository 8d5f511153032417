#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nqcc/errors.hpp"
#include "nqcc/qstate.hpp"
#include "nqcc/rng.hpp"

namespace nqcc {

// ---------------------------------------------------------------------------
// Pointer states, nodes, channels
// ---------------------------------------------------------------------------

/// Classical symbol mirroring one orthogonal eigenstate of a node's register.
struct PointerState {
    std::string symbol;
    std::size_t eigenstate_index;
};

enum class NodeRole { Control, Target };

/// A neuron: quantum register (the genotype), pointer-state table (the
/// environment's classical mirror), and the channels it is wired to.
struct NeuronNode {
    std::string id;
    QuantumRegister reg;
    std::vector<PointerState> pointer_table;
    NodeRole role = NodeRole::Control;
    std::vector<std::string> channels;
    int designated_qubit = 0; // the qubit mutation acts on

    NeuronNode(std::string node_id, QuantumRegister r, std::vector<PointerState> table,
               NodeRole node_role)
        : id(std::move(node_id)), reg(std::move(r)), pointer_table(std::move(table)),
          role(node_role) {
        validate_table();
    }

    void validate_table() const {
        for (std::size_t i = 0; i < pointer_table.size(); ++i) {
            if (pointer_table[i].eigenstate_index >= reg.dimension()) {
                throw std::invalid_argument("pointer state index exceeds register dimension");
            }
            for (std::size_t j = i + 1; j < pointer_table.size(); ++j) {
                if (pointer_table[i].symbol == pointer_table[j].symbol ||
                    pointer_table[i].eigenstate_index == pointer_table[j].eigenstate_index) {
                    throw std::invalid_argument("pointer table must be a bijection");
                }
            }
        }
    }

    std::size_t index_for(const std::string& symbol) const {
        for (const PointerState& p : pointer_table) {
            if (p.symbol == symbol) return p.eigenstate_index;
        }
        throw std::invalid_argument("unknown pointer symbol: " + symbol);
    }

    const std::string& symbol_for(std::size_t index) const {
        for (const PointerState& p : pointer_table) {
            if (p.eigenstate_index == index) return p.symbol;
        }
        throw std::invalid_argument("no pointer symbol for eigenstate index");
    }

    bool has_symbol(const std::string& symbol) const {
        for (const PointerState& p : pointer_table) {
            if (p.symbol == symbol) return true;
        }
        return false;
    }

    /// The pointer symbol of the current register state, if it is a table
    /// eigenstate (within tolerance).
    std::optional<std::string> current_symbol(double tol = 1e-9) const {
        for (const PointerState& p : pointer_table) {
            if (reg.probability(p.eigenstate_index) >= 1.0 - tol) return p.symbol;
        }
        return std::nullopt;
    }

    /// Classical bit of the current eigenstate (its basis index).
    std::size_t current_eigenstate() const {
        const auto sym = current_symbol();
        if (!sym) throw std::logic_error("node " + id + " is not in a pointer eigenstate");
        return index_for(*sym);
    }
};

/// Node following the [a -> 1, a' -> 0] convention (state 1 is unmutated).
inline NeuronNode make_control_node(std::string id, int bit) {
    return NeuronNode(std::move(id), QuantumRegister::basis(1, bit),
                      {{"a", 1}, {"a'", 0}}, NodeRole::Control);
}

inline NeuronNode make_target_node(std::string id, int bit) {
    return NeuronNode(std::move(id), QuantumRegister::basis(1, bit),
                      {{"b", 1}, {"b'", 0}}, NodeRole::Target);
}

struct ChannelEndpoint {
    std::string node_id;
    std::string symbol;
};

/// One conversion wire, e.g. [a <-> b']. Bidirectional; carries one bit per
/// protocol step.
struct ClassicalChannel {
    std::string id;
    ChannelEndpoint endpoint_a;
    ChannelEndpoint endpoint_b;
    std::optional<int> payload;

    std::string conversion_name() const {
        return "[" + endpoint_a.symbol + "<->" + endpoint_b.symbol + "]";
    }
};

inline ClassicalChannel make_channel(const NeuronNode& na, const std::string& sym_a,
                                     const NeuronNode& nb, const std::string& sym_b) {
    if (!na.has_symbol(sym_a) || !nb.has_symbol(sym_b)) {
        throw std::invalid_argument("channel endpoint symbol not in node pointer table");
    }
    ClassicalChannel ch;
    ch.id = na.id + "." + sym_a + "<->" + nb.id + "." + sym_b;
    ch.endpoint_a = {na.id, sym_a};
    ch.endpoint_b = {nb.id, sym_b};
    return ch;
}

/// The operationally complete conversion set between a control/target pair:
/// [a<->b], [a'<->b'], [a<->b'], [a'<->b].
inline std::vector<ClassicalChannel> wire_complete(const NeuronNode& control,
                                                   const NeuronNode& target) {
    return {
        make_channel(control, "a", target, "b"),
        make_channel(control, "a'", target, "b'"),
        make_channel(control, "a", target, "b'"),
        make_channel(control, "a'", target, "b"),
    };
}

// ---------------------------------------------------------------------------
// Transcript
// ---------------------------------------------------------------------------

enum class StepKind { Mutate, Translate, Convert, Reset, AndGate };

inline const char* step_kind_name(StepKind k) {
    switch (k) {
    case StepKind::Mutate: return "Mutate";
    case StepKind::Translate: return "Translate";
    case StepKind::Convert: return "Convert";
    case StepKind::Reset: return "Reset";
    case StepKind::AndGate: return "AndGate";
    }
    return "?";
}

inline StepKind step_kind_from(const std::string& s) {
    if (s == "Mutate") return StepKind::Mutate;
    if (s == "Translate") return StepKind::Translate;
    if (s == "Convert") return StepKind::Convert;
    if (s == "Reset") return StepKind::Reset;
    if (s == "AndGate") return StepKind::AndGate;
    throw std::invalid_argument("unknown step kind: " + s);
}

/// One protocol event. `symbol` is what was read, sent, or written; Convert
/// also records the far-endpoint symbol in `to`; Reset records the state it
/// overwrote in `prior` so the step stays invertible; AndGate records the
/// compared incoming symbol in `to` and the match in `bit`.
struct ProtocolStep {
    StepKind kind;
    std::string id; // node or channel id
    std::string symbol;
    std::string to;
    std::string prior;
    int bit = -1;
};

/// Ordered step log of a protocol run, with classical snapshots of the node
/// eigenstates before and after. Registers are never serialized
/// mid-superposition; the snapshots are pointer-basis indices.
struct ProtocolTranscript {
    std::map<std::string, std::size_t> initial;
    std::map<std::string, std::size_t> final_state;
    std::vector<ProtocolStep> steps;

    int transmitted_bits() const {
        int n = 0;
        for (const ProtocolStep& s : steps) {
            if (s.kind == StepKind::Convert) ++n;
        }
        return n;
    }

    std::string to_jsonl() const {
        nlohmann::json head;
        head["schema"] = 1;
        head["initial"] = initial;
        head["final"] = final_state;
        std::ostringstream out;
        out << head.dump() << "\n";
        for (const ProtocolStep& s : steps) {
            nlohmann::json line;
            line["kind"] = step_kind_name(s.kind);
            line["id"] = s.id;
            if (!s.symbol.empty()) line["symbol"] = s.symbol;
            if (!s.to.empty()) line["to"] = s.to;
            if (!s.prior.empty()) line["prior"] = s.prior;
            if (s.bit >= 0) line["bit"] = s.bit;
            out << line.dump() << "\n";
        }
        return out.str();
    }

    static ProtocolTranscript from_jsonl(const std::string& text) {
        const std::vector<ProtocolTranscript> all = parse_stream(text);
        if (all.size() != 1) {
            throw std::invalid_argument("expected exactly one transcript");
        }
        return all.front();
    }

    /// Parse a stream of concatenated transcripts (each starts with its own
    /// schema header line).
    static std::vector<ProtocolTranscript> parse_stream(const std::string& text) {
        std::vector<ProtocolTranscript> out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const nlohmann::json j = nlohmann::json::parse(line);
            if (j.contains("schema")) {
                ProtocolTranscript t;
                t.initial = j.at("initial").get<std::map<std::string, std::size_t>>();
                t.final_state = j.at("final").get<std::map<std::string, std::size_t>>();
                out.push_back(std::move(t));
                continue;
            }
            if (out.empty()) {
                throw std::invalid_argument("transcript missing schema header line");
            }
            ProtocolStep s;
            s.kind = step_kind_from(j.at("kind").get<std::string>());
            s.id = j.at("id").get<std::string>();
            s.symbol = j.value("symbol", "");
            s.to = j.value("to", "");
            s.prior = j.value("prior", "");
            s.bit = j.value("bit", -1);
            out.back().steps.push_back(std::move(s));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Operator set: mutate / translate / reset / convert
// ---------------------------------------------------------------------------

/// NOT on the designated qubit; the pointer table is untouched.
inline NeuronNode mutate(NeuronNode node) {
    node.reg = apply_gate(node.reg, Gate::not_gate(node.designated_qubit));
    return node;
}

/// Readout: measure in the pointer basis and return the symbol mapped to the
/// observed eigenstate. Registers with support outside the pointer span are
/// rejected before anything is measured (readout is only for the orthogonal
/// states the table lists).
inline std::pair<std::string, NeuronNode> translate_readout(NeuronNode node, RandomSource& rng) {
    double in_span = 0.0;
    for (const PointerState& p : node.pointer_table) {
        in_span += node.reg.probability(p.eigenstate_index);
    }
    if (in_span < 1.0 - 1e-9) {
        throw TranslatorDomainError("register of " + node.id +
                                    " has support outside the pointer basis span");
    }

    const double draw = rng.uniform();
    double acc = 0.0;
    const PointerState* picked = &node.pointer_table.back();
    for (const PointerState& p : node.pointer_table) {
        acc += node.reg.probability(p.eigenstate_index) / in_span;
        if (draw < acc) {
            picked = &p;
            break;
        }
    }
    node.reg = QuantumRegister::basis(node.reg.qubit_count(), picked->eigenstate_index);
    return {picked->symbol, std::move(node)};
}

/// Reset: write the eigenstate mapped from `symbol` into the register.
inline NeuronNode reset_state(NeuronNode node, const std::string& symbol) {
    const std::size_t index = node.index_for(symbol); // throws on unknown symbol
    node.reg = QuantumRegister::basis(node.reg.qubit_count(), index);
    return node;
}

/// Conversion: carry `symbol` across the channel and return the far-endpoint
/// symbol. Exactly one bit moves per call.
inline std::string convert(ClassicalChannel& channel, const std::string& symbol) {
    if (symbol == channel.endpoint_a.symbol) {
        channel.payload = 1;
        return channel.endpoint_b.symbol;
    }
    if (symbol == channel.endpoint_b.symbol) {
        channel.payload = 1;
        return channel.endpoint_a.symbol;
    }
    throw RoutingError("symbol " + symbol + " does not match channel " + channel.id);
}

// ---------------------------------------------------------------------------
// The two-neuron cNOT protocol and its quantum oracle
// ---------------------------------------------------------------------------

struct CnotRunResult {
    NeuronNode control;
    NeuronNode target;
    ProtocolTranscript transcript;

    std::size_t control_bit() const { return control.current_eigenstate(); }
    std::size_t target_bit() const { return target.current_eigenstate(); }
};

namespace detail {

inline ClassicalChannel* find_channel(std::vector<ClassicalChannel>& wiring,
                                      const std::string& node_a, const std::string& sym_a,
                                      const std::string& node_b, const std::string& sym_b) {
    for (ClassicalChannel& ch : wiring) {
        const bool fwd = ch.endpoint_a.node_id == node_a && ch.endpoint_a.symbol == sym_a &&
                         ch.endpoint_b.node_id == node_b && ch.endpoint_b.symbol == sym_b;
        const bool rev = ch.endpoint_b.node_id == node_a && ch.endpoint_b.symbol == sym_a &&
                         ch.endpoint_a.node_id == node_b && ch.endpoint_a.symbol == sym_b;
        if (fwd || rev) return &ch;
    }
    return nullptr;
}

/// Target symbol with the same eigenstate index as the control symbol (the
/// "straight" conversion partner: a pairs b, a' pairs b').
inline std::string straight_partner(const NeuronNode& control, const std::string& control_symbol,
                                    const NeuronNode& target) {
    return target.symbol_for(control.index_for(control_symbol));
}

} // namespace detail

/// The two-neuron protocol: translate the control, convert its symbol to the
/// target, optionally mutate the target, convert the target's state back, and
/// reset the control from the returned symbol. The forward message informs
/// the target (and fixes the mutate decision under the standard policy); it
/// does not overwrite the target register. Each run transmits exactly two
/// classical bits, one per direction.
inline CnotRunResult run_cnot_protocol(NeuronNode control, NeuronNode target, bool target_mutates,
                                       RandomSource& rng,
                                       std::vector<ClassicalChannel> wiring) {
    if (!control.current_symbol() || !target.current_symbol()) {
        throw std::invalid_argument("protocol requires both nodes in pointer eigenstates");
    }

    ProtocolTranscript t;
    t.initial[control.id] = control.current_eigenstate();
    t.initial[target.id] = target.current_eigenstate();

    // Readout of the control.
    auto [control_symbol, control_after] = translate_readout(std::move(control), rng);
    control = std::move(control_after);
    t.steps.push_back({StepKind::Translate, control.id, control_symbol, "", "",
                       static_cast<int>(control.index_for(control_symbol))});

    // Forward conversion on the straight channel for that symbol.
    const std::string forward_far = detail::straight_partner(control, control_symbol, target);
    ClassicalChannel* forward =
        detail::find_channel(wiring, control.id, control_symbol, target.id, forward_far);
    if (forward == nullptr) {
        throw WiringError("no forward channel for symbol " + control_symbol);
    }
    const std::string delivered = convert(*forward, control_symbol);
    t.steps.push_back({StepKind::Convert, forward->id, control_symbol, delivered, "",
                       static_cast<int>(target.index_for(delivered))});

    // The target's free decision (bound by the caller's policy).
    if (target_mutates) {
        target = mutate(std::move(target));
        t.steps.push_back({StepKind::Mutate, target.id, "", "", "", -1});
    }

    // Readout of the target and the conversion back.
    auto [target_symbol, target_after] = translate_readout(std::move(target), rng);
    target = std::move(target_after);
    t.steps.push_back({StepKind::Translate, target.id, target_symbol, "", "",
                       static_cast<int>(target.index_for(target_symbol))});

    ClassicalChannel* back =
        detail::find_channel(wiring, target.id, target_symbol, control.id, control_symbol);
    if (back == nullptr) {
        throw WiringError("no return channel from " + target_symbol + " to " + control_symbol);
    }
    const std::string returned = convert(*back, target_symbol);
    t.steps.push_back({StepKind::Convert, back->id, target_symbol, returned, "",
                       static_cast<int>(control.index_for(returned))});

    // Reset of the control from the returned symbol (restores its state).
    const std::string prior = *control.current_symbol();
    control = reset_state(std::move(control), returned);
    t.steps.push_back({StepKind::Reset, control.id, returned, "", prior,
                       static_cast<int>(control.index_for(returned))});

    t.final_state[control.id] = control.current_eigenstate();
    t.final_state[target.id] = target.current_eigenstate();
    return {std::move(control), std::move(target), std::move(t)};
}

/// Ground truth: the exact CNOT unitary on a two-qubit register
/// (control = qubit 0, target = qubit 1).
inline QuantumRegister quantum_cnot_oracle(const QuantumRegister& joint) {
    if (joint.qubit_count() != 2) {
        throw std::invalid_argument("quantum_cnot_oracle requires a 2-qubit register");
    }
    return apply_gate(joint, Gate::cnot(0, 1));
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

namespace detail {

inline void apply_step_forward(std::map<std::string, NeuronNode>& nodes, const ProtocolStep& s) {
    switch (s.kind) {
    case StepKind::Mutate:
        nodes.at(s.id) = mutate(std::move(nodes.at(s.id)));
        break;
    case StepKind::Reset:
        nodes.at(s.id) = reset_state(std::move(nodes.at(s.id)), s.symbol);
        break;
    case StepKind::Translate: {
        // Recorded readout of an eigenstate: verify, never re-measure.
        const NeuronNode& node = nodes.at(s.id);
        if (node.reg.probability(node.index_for(s.symbol)) < 1.0 - 1e-9) {
            throw std::logic_error("transcript replay diverged at Translate on " + s.id);
        }
        break;
    }
    case StepKind::Convert:
    case StepKind::AndGate:
        break; // classical messaging, no register effect
    }
}

inline void apply_step_backward(std::map<std::string, NeuronNode>& nodes, const ProtocolStep& s) {
    switch (s.kind) {
    case StepKind::Mutate:
        nodes.at(s.id) = mutate(std::move(nodes.at(s.id))); // involution
        break;
    case StepKind::Reset:
        nodes.at(s.id) = reset_state(std::move(nodes.at(s.id)), s.prior);
        break;
    case StepKind::Translate:
    case StepKind::Convert:
    case StepKind::AndGate:
        break;
    }
}

} // namespace detail

/// Replay a transcript forward from its recorded initial snapshot. The nodes
/// supply ids and pointer tables; their registers are overwritten. Throws if
/// the run does not reproduce the recorded final snapshot.
inline std::map<std::string, NeuronNode> replay_forward(const ProtocolTranscript& t,
                                                        std::map<std::string, NeuronNode> nodes) {
    for (const auto& [id, index] : t.initial) {
        NeuronNode& n = nodes.at(id);
        n.reg = QuantumRegister::basis(n.reg.qubit_count(), index);
    }
    for (const ProtocolStep& s : t.steps) {
        detail::apply_step_forward(nodes, s);
    }
    for (const auto& [id, index] : t.final_state) {
        if (nodes.at(id).current_eigenstate() != index) {
            throw std::logic_error("forward replay did not reach the recorded final state");
        }
    }
    return nodes;
}

/// Replay inverse steps in reverse order from the recorded final snapshot.
/// Returns nodes restored to the initial state.
inline std::map<std::string, NeuronNode> replay_backward(const ProtocolTranscript& t,
                                                         std::map<std::string, NeuronNode> nodes) {
    for (const auto& [id, index] : t.final_state) {
        NeuronNode& n = nodes.at(id);
        n.reg = QuantumRegister::basis(n.reg.qubit_count(), index);
    }
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
        detail::apply_step_backward(nodes, *it);
    }
    return nodes;
}

} // namespace nqcc
