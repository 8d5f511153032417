#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "nqcc/protocol.hpp"

using namespace nqcc;

namespace {

/// Hand-rolled 4x4 CNOT matrix-vector product, the test-side oracle for the
/// gate path (control = qubit 0, target = qubit 1; index bit i = qubit i).
std::vector<Complex> cnot_by_hand(const std::vector<Complex>& in) {
    std::vector<Complex> out(4);
    out[0] = in[0]; // 00 -> 00
    out[2] = in[2]; // 01 -> 01 (control clear)
    out[3] = in[1]; // 10 -> 11
    out[1] = in[3]; // 11 -> 10
    return out;
}

std::map<std::string, NeuronNode> node_map(const NeuronNode& a, const NeuronNode& b) {
    std::map<std::string, NeuronNode> m;
    m.emplace(a.id, a);
    m.emplace(b.id, b);
    return m;
}

} // namespace

TEST_CASE("mutation is a NOT on the designated qubit", "[protocol]") {
    NeuronNode target = make_target_node("n2", 1);
    target = mutate(target);
    CHECK(target.current_eigenstate() == 0); // [B] = 1 mutates to [B'] = 0
    CHECK(*target.current_symbol() == "b'");
    target = mutate(target);
    CHECK(target.current_eigenstate() == 1); // involution

    // symmetric superposition is a fixed point
    NeuronNode plus = make_control_node("n1", 0);
    plus.reg = apply_gate(plus.reg, Gate::hadamard(0));
    const NeuronNode mutated = mutate(plus);
    CHECK(std::abs(mutated.reg.amplitude(0) - plus.reg.amplitude(0)) < 1e-15);
    CHECK(std::abs(mutated.reg.amplitude(1) - plus.reg.amplitude(1)) < 1e-15);
}

TEST_CASE("translation reads out pointer symbols", "[protocol]") {
    RandomSource rng(10);
    SECTION("eigenstates map deterministically") {
        auto [sym1, node1] = translate_readout(make_control_node("n1", 1), rng);
        CHECK(sym1 == "a");
        CHECK(node1.current_eigenstate() == 1);
        auto [sym0, node0] = translate_readout(make_control_node("n1", 0), rng);
        CHECK(sym0 == "a'");
    }
    SECTION("superposition readout is Born-distributed") {
        RandomSource seeded(42);
        int a_count = 0;
        NeuronNode node = make_control_node("n1", 0);
        node.reg = apply_gate(node.reg, Gate::hadamard(0));
        for (int i = 0; i < 100000; ++i) {
            auto [sym, collapsed] = translate_readout(node, seeded);
            if (sym == "a") ++a_count;
        }
        const double freq = a_count / 1e5;
        CHECK(freq >= 0.494); // 3 sigma binomial bound
        CHECK(freq <= 0.506);
    }
    SECTION("support outside the pointer span is refused, never measured") {
        // two-qubit register whose table only covers indices 0 and 1
        NeuronNode node("wide", QuantumRegister::basis(2, 2), {{"a", 1}, {"a'", 0}},
                        NodeRole::Control);
        CHECK_THROWS_AS(translate_readout(node, rng), TranslatorDomainError);
        // ... even in superposition with in-span components
        node.reg = apply_gate(QuantumRegister::basis(2, 0), Gate::hadamard(1));
        CHECK_THROWS_AS(translate_readout(node, rng), TranslatorDomainError);
    }
}

TEST_CASE("reset writes pointer eigenstates", "[protocol]") {
    RandomSource rng(5);
    NeuronNode node = make_control_node("n1", 0);
    node = reset_state(node, "a");
    CHECK(node.current_eigenstate() == 1); // a maps to 1

    // round trip on an eigenstate
    auto [sym, read] = translate_readout(node, rng);
    CHECK(reset_state(read, sym).current_eigenstate() == 1);

    NeuronNode target = make_target_node("n2", 1);
    CHECK(reset_state(target, "b'").current_eigenstate() == 0);
    CHECK_THROWS_AS(reset_state(node, "z"), std::invalid_argument);
}

TEST_CASE("conversion carries symbols across channels", "[protocol]") {
    const NeuronNode control = make_control_node("n1", 1);
    const NeuronNode target = make_target_node("n2", 1);

    ClassicalChannel straight = make_channel(control, "a", target, "b");
    CHECK(convert(straight, "a") == "b");
    CHECK(straight.payload.has_value());

    ClassicalChannel crossed = make_channel(control, "a", target, "b'");
    CHECK(convert(crossed, "b'") == "a"); // [b' <-> a] back to neuron 1

    ClassicalChannel primed = make_channel(control, "a'", target, "b'");
    CHECK(convert(primed, "a'") == "b'");

    CHECK_THROWS_AS(convert(straight, "a'"), RoutingError);
    CHECK_THROWS_AS(make_channel(control, "q", target, "b"), std::invalid_argument);
}

TEST_CASE("worked protocol run: control 1, target mutates", "[protocol]") {
    RandomSource rng(7);
    NeuronNode control = make_control_node("n1", 1);
    NeuronNode target = make_target_node("n2", 1);
    const CnotRunResult run = run_cnot_protocol(control, target, /*target_mutates=*/true, rng,
                                                wire_complete(control, target));

    CHECK(run.control_bit() == 1); // neuron 1 does not mutate and stays 1
    CHECK(run.target_bit() == 0);  // [B] = 1 mutated to [B'] = 0

    // the message returns on [b' <-> a]
    bool returned_on_crossed = false;
    for (const ProtocolStep& s : run.transcript.steps) {
        if (s.kind == StepKind::Convert && s.symbol == "b'" && s.to == "a") {
            returned_on_crossed = true;
        }
    }
    CHECK(returned_on_crossed);
    CHECK(run.transcript.transmitted_bits() == 2); // one per direction
}

TEST_CASE("identity branch: control 0 leaves the target alone", "[protocol]") {
    RandomSource rng(8);
    NeuronNode control = make_control_node("n1", 0);
    NeuronNode target = make_target_node("n2", 1);
    const CnotRunResult run = run_cnot_protocol(control, target, /*target_mutates=*/false, rng,
                                                wire_complete(control, target));
    CHECK(run.control_bit() == 0);
    CHECK(run.target_bit() == 1);
}

TEST_CASE("protocol equals the quantum oracle on the full truth table", "[protocol]") {
    RandomSource rng(11);
    for (int c = 0; c <= 1; ++c) {
        for (int t = 0; t <= 1; ++t) {
            NeuronNode control = make_control_node("n1", c);
            NeuronNode target = make_target_node("n2", t);
            const CnotRunResult run = run_cnot_protocol(
                control, target, /*target_mutates=*/c == 1, rng, wire_complete(control, target));

            // oracle: prepare |c t>, apply the exact CNOT, measure both qubits
            const QuantumRegister joint =
                QuantumRegister::basis(2, static_cast<std::size_t>(c) | (std::size_t(t) << 1));
            const QuantumRegister evolved = quantum_cnot_oracle(joint);
            const auto [outcome, collapsed] = measure(evolved, {0, 1}, rng);

            CHECK(static_cast<int>(run.control_bit()) == outcome[0] - '0');
            CHECK(static_cast<int>(run.target_bit()) == outcome[1] - '0');
        }
    }
}

TEST_CASE("quantum cnot oracle", "[protocol]") {
    CHECK(quantum_cnot_oracle(QuantumRegister::from_bits("10")).probability(3) ==
          Catch::Approx(1.0));
    CHECK(quantum_cnot_oracle(QuantumRegister::from_bits("00")).probability(0) ==
          Catch::Approx(1.0));

    // superposed control turns into the Bell state; cross-check against the
    // hand matrix-vector product
    QuantumRegister reg(2);
    reg = apply_gate(reg, Gate::hadamard(0));
    const QuantumRegister out = quantum_cnot_oracle(reg);
    const std::vector<Complex> expected = cnot_by_hand(reg.amplitudes());
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(out.amplitude(i) - expected[i]) < 1e-12);
    }
    CHECK_THROWS_AS(quantum_cnot_oracle(QuantumRegister(1)), std::invalid_argument);
}

TEST_CASE("missing wiring is a configuration error", "[protocol]") {
    RandomSource rng(3);
    NeuronNode control = make_control_node("n1", 0);
    NeuronNode target = make_target_node("n2", 1);
    // only the two channels of the worked example: [a<->b], [a<->b']
    std::vector<ClassicalChannel> partial = {make_channel(control, "a", target, "b"),
                                             make_channel(control, "a", target, "b'")};
    CHECK_THROWS_AS(run_cnot_protocol(control, target, false, rng, partial), WiringError);
}

TEST_CASE("transcripts replay forward and backward", "[protocol]") {
    RandomSource rng(2025);
    for (int trial = 0; trial < 200; ++trial) {
        const int c = rng.coin() ? 1 : 0;
        const int t = rng.coin() ? 1 : 0;
        const bool mutates = rng.coin();
        NeuronNode control = make_control_node("n1", c);
        NeuronNode target = make_target_node("n2", t);
        const CnotRunResult run =
            run_cnot_protocol(control, target, mutates, rng, wire_complete(control, target));

        const auto forward = replay_forward(run.transcript, node_map(control, target));
        CHECK(forward.at("n1").current_eigenstate() == run.transcript.final_state.at("n1"));
        CHECK(forward.at("n2").current_eigenstate() == run.transcript.final_state.at("n2"));

        const auto backward = replay_backward(run.transcript, node_map(control, target));
        CHECK(backward.at("n1").current_eigenstate() == static_cast<std::size_t>(c));
        CHECK(backward.at("n2").current_eigenstate() == static_cast<std::size_t>(t));
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(std::abs(backward.at("n1").reg.amplitude(i) -
                           QuantumRegister::basis(1, c).amplitude(i)) < 1e-12);
        }
    }
}

TEST_CASE("transcripts round-trip through line-oriented JSON", "[protocol]") {
    RandomSource rng(77);
    NeuronNode control = make_control_node("n1", 1);
    NeuronNode target = make_target_node("n2", 0);
    const CnotRunResult run =
        run_cnot_protocol(control, target, true, rng, wire_complete(control, target));

    const std::string jsonl = run.transcript.to_jsonl();
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') ==
          static_cast<long>(run.transcript.steps.size()) + 1);

    const ProtocolTranscript parsed = ProtocolTranscript::from_jsonl(jsonl);
    REQUIRE(parsed.steps.size() == run.transcript.steps.size());
    CHECK(parsed.initial == run.transcript.initial);
    CHECK(parsed.final_state == run.transcript.final_state);
    for (std::size_t i = 0; i < parsed.steps.size(); ++i) {
        CHECK(parsed.steps[i].kind == run.transcript.steps[i].kind);
        CHECK(parsed.steps[i].id == run.transcript.steps[i].id);
        CHECK(parsed.steps[i].symbol == run.transcript.steps[i].symbol);
        CHECK(parsed.steps[i].bit == run.transcript.steps[i].bit);
    }

    // a reloaded transcript still replays
    const auto backward = replay_backward(parsed, node_map(control, target));
    CHECK(backward.at("n1").current_eigenstate() == 1);
    CHECK(backward.at("n2").current_eigenstate() == 0);
}

TEST_CASE("pointer tables must be bijections", "[protocol]") {
    CHECK_THROWS_AS(NeuronNode("x", QuantumRegister(1), {{"a", 1}, {"a", 0}}, NodeRole::Control),
                    std::invalid_argument);
    CHECK_THROWS_AS(NeuronNode("x", QuantumRegister(1), {{"a", 1}, {"a'", 1}}, NodeRole::Control),
                    std::invalid_argument);
    CHECK_THROWS_AS(NeuronNode("x", QuantumRegister(1), {{"a", 2}}, NodeRole::Control),
                    std::invalid_argument);
}
