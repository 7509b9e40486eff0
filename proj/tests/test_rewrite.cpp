// Copyright 2026 The nnqft authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "nnqft/qft_synth.hpp"
#include "nnqft/rewrite.hpp"
#include "nnqft/simulator.hpp"
#include "test_util.hpp"

using namespace nnqft;
using nnqft::testing::random_circuit;

namespace {
constexpr double kPi = std::numbers::pi;

double unitary_distance_up_to_phase(const Circuit& a, const Circuit& b) {
    return std::abs(1.0 - fidelity_up_to_phase(circuit_unitary(a), circuit_unitary(b)));
}
}

TEST_CASE("cp decomposition emits the documented sequence") {
    Circuit c(2);
    c.add(Gate::cp(0, 1, kPi / 2));
    const Circuit d = decompose_cp_all(c);
    REQUIRE(d.size() == 5);
    CHECK(d.gates()[0] == Gate::rz(0, kPi / 4));
    CHECK(d.gates()[1] == Gate::rz(1, kPi / 4));
    CHECK(d.gates()[2] == Gate::cnot(0, 1));
    CHECK(d.gates()[3] == Gate::rz(1, -kPi / 4));
    CHECK(d.gates()[4] == Gate::cnot(0, 1));
    CHECK(d.global_phase() == doctest::Approx(kPi / 8).epsilon(1e-15));
    CHECK(unitary_distance_up_to_phase(c, d) < 1e-12);
}

TEST_CASE("cp decomposition of the standard transform costs n(n-1) CNOTs") {
    const Circuit d = decompose_cp_all(build_standard_qft(5));
    CHECK(count_gates(d).cnot_total == 20);
}

TEST_CASE("zero-angle controlled phase becomes prunable rotations") {
    Circuit c(2);
    c.add(Gate::cp(0, 1, 0.0));
    const Circuit s = simplify(decompose_cp_all(c));
    CHECK(count_gates(s).count(GateKind::Rz) == 0);
    CHECK(count_gates(s).cnot_total == 0);  // the freed CNOT pair cancels
}

TEST_CASE("swap decomposition") {
    Circuit c(2);
    c.add(Gate::swap(0, 1));
    const Circuit d = decompose_swap_all(c);
    REQUIRE(d.size() == 3);

    const Statevector out = apply_circuit(Statevector::basis_state(2, 0b01), d);
    CHECK(std::abs(out[0b10] - Complex{1, 0}) < 1e-15);

    const UnitaryMatrix u = circuit_unitary(d);
    const UnitaryMatrix v = gate_matrix(Gate::swap(0, 1));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t col = 0; col < 4; ++col)
            CHECK(std::abs(u.at(r, col) - v.at(r, col)) < 1e-15);
}

TEST_CASE("swap-cascade baseline decomposes to 50 CNOTs at n=5") {
    const Circuit base = decompose_swap_all(decompose_cp_all(build_lnn_qft_baseline(5)));
    CHECK(count_gates(base).cnot_total == 50);
}

TEST_CASE("simplify cancels adjacent CNOT pairs") {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cnot(0, 1));
    CHECK(simplify(c).empty());
}

TEST_CASE("simplify merges rotations on a wire") {
    Circuit c(1);
    c.add(Gate::rz(0, 0.3));
    c.add(Gate::rz(0, 0.4));
    const Circuit s = simplify(c);
    REQUIRE(s.size() == 1);
    CHECK(s.gates()[0].angle == doctest::Approx(0.7));
}

TEST_CASE("control-side rotation commutes through for cancellation") {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::rz(0, 0.9));
    c.add(Gate::cnot(0, 1));
    const Circuit s = simplify(c);
    REQUIRE(s.size() == 1);
    CHECK(s.gates()[0] == Gate::rz(0, 0.9));
    CHECK(unitary_distance_up_to_phase(c, s) < 1e-12);
}

TEST_CASE("target-side rotation blocks cancellation") {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::rz(1, 0.9));
    c.add(Gate::cnot(0, 1));
    CHECK(simplify(c).size() == 3);
}

TEST_CASE("simplify is idempotent and sound on random circuits") {
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned n = 2 + trial % 4;
        const Circuit c = random_circuit(n, 30, 9000 + trial);
        const Circuit s = simplify(c);
        CHECK(count_gates(s).cnot_total <= count_gates(c).cnot_total);
        CHECK(unitary_distance_up_to_phase(c, s) < 1e-11);

        const Circuit s2 = simplify(s);
        REQUIRE(s2.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s2.gates()[i] == s.gates()[i]);
    }
}

TEST_CASE("rotations that are multiples of 4 pi are pruned") {
    Circuit c(1);
    c.add(Gate::rz(0, 4 * kPi));
    c.add(Gate::rx(0, -8 * kPi));
    c.add(Gate::rz(0, 2 * kPi));  // -I as a matrix, must stay
    CHECK(simplify(c).size() == 1);
}

TEST_CASE("every catalog rule passes the soundness harness") {
    for (const RewriteRule& rule : rule_catalog()) {
        const auto rep = validate_rule(rule, 5, 50, 2026);
        INFO(rule.name, ": ", rep.detail);
        CHECK(rep.passed);
        CHECK(rep.max_deviation <= 1e-10);
    }
}

TEST_CASE("the harness flags a broken rule") {
    RewriteRule broken{
        "cnot-to-identity", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            if (pos < c.gates().size() && c.gates()[pos].kind == GateKind::CNOT) return 1;
            return std::nullopt;
        },
        [](const Circuit&, std::size_t, std::size_t) { return RuleApplication{{}, 0.0}; },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex a = static_cast<QubitIndex>(rng() % n);
            QubitIndex b = static_cast<QubitIndex>(rng() % (n - 1));
            if (b >= a) ++b;
            return std::vector<Gate>{Gate::cnot(a, b)};
        }};
    const auto rep = validate_rule(broken, 4, 50, 99);
    CHECK_FALSE(rep.passed);
}

TEST_CASE("fan identity applies at a matching site and preserves the unitary") {
    const Circuit dec = build_decomposed_qft(4);
    std::size_t rewrites = 0;
    for (std::size_t i = 0; i < dec.size(); ++i) {
        auto [result, matched] = apply_fan_identity(dec, i);
        if (matched && result.size() != dec.size()) {
            ++rewrites;
            CHECK(unitary_distance_up_to_phase(result, dec) < 1e-12);
        }
    }
    CHECK(rewrites >= 2);  // fans on three and four wires are long-range
}

TEST_CASE("fan identity leaves non-matching sites unchanged") {
    Circuit c(3);
    c.add(Gate::h(0));
    c.add(Gate::cnot(0, 1));
    auto [same, matched] = apply_fan_identity(c, 0);
    CHECK_FALSE(matched);
    CHECK(same.size() == c.size());
}

TEST_CASE("pipeline on the decomposed transform reaches the published count") {
    const auto [out, trace] = run_pipeline(build_decomposed_qft(5), {"fan-chain", "simplify"});
    CHECK(count_gates(out).cnot_total == 26);
    CHECK(is_nearest_neighbor(out));
    CHECK(unitary_distance_up_to_phase(out, build_decomposed_qft(5)) < 1e-11);
    REQUIRE(trace.passes.size() == 2);
    CHECK(trace.passes[0].name == "fan-chain");
    CHECK(trace.passes[0].matches_applied >= 3);
    CHECK(trace.passes[1].cnots_after <= trace.passes[1].cnots_before);
}

TEST_CASE("empty pass list returns the input unchanged") {
    const Circuit c = build_standard_qft(3);
    const auto [out, trace] = run_pipeline(c, {});
    CHECK(out.size() == c.size());
    CHECK(trace.passes.empty());
}

TEST_CASE("unknown pass names are rejected") {
    CHECK_THROWS_AS(run_pipeline(Circuit(2), {"mystery"}), std::invalid_argument);
}

TEST_CASE("simplify never raises the CNOT count across pipeline traces") {
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = random_circuit(4, 25, 22000 + trial);
        const auto [out, trace] = run_pipeline(c, {"decompose-cp", "decompose-swap", "simplify"});
        (void)out;
        for (const PassRecord& rec : trace.passes)
            if (rec.name == "simplify") CHECK(rec.cnots_after <= rec.cnots_before);
    }
}
