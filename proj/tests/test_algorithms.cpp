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

#include <cmath>
#include <numbers>
#include <random>

#include "nnqft/algorithms.hpp"
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

TEST_CASE("phase fraction parsing and exactness") {
    const PhaseFraction half = PhaseFraction::parse("1/2");
    CHECK(half.is_rational);
    CHECK(half.value == 0.5);
    CHECK(half.exact_in_bits(1));

    const PhaseFraction third = PhaseFraction::parse("1/3");
    CHECK_FALSE(third.exact_in_bits(8));
    CHECK(third.nearest_outcome(3) == 3);

    const PhaseFraction dec = PhaseFraction::parse("0.375");
    CHECK(dec.exact_in_bits(3));
    CHECK(dec.nearest_outcome(3) == 3);

    CHECK(PhaseFraction::parse("9/8").value == doctest::Approx(0.125));  // reduced mod 1
    CHECK_THROWS_AS(PhaseFraction::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(PhaseFraction::parse("1/0"), std::invalid_argument);
}

TEST_CASE("controlled powers collapse to a single controlled phase") {
    const auto cz = build_controlled_power_u(PhaseFraction::parse("1/2"), 0, 0, 1);
    REQUIRE(cz.size() == 1);
    CHECK(cz[0].kind == GateKind::CP);
    CHECK(cz[0].angle == doctest::Approx(kPi));

    const auto quarter = build_controlled_power_u(PhaseFraction::parse("1/8"), 2, 0, 1);
    REQUIRE(quarter.size() == 1);
    CHECK(quarter[0].angle == doctest::Approx(kPi));

    CHECK(build_controlled_power_u(PhaseFraction::parse("1/8"), 3, 0, 1).empty());
}

TEST_CASE("qpe circuit on the lnn layout stays nearest-neighbor") {
    for (unsigned t = 2; t <= 4; ++t) {
        const Circuit c = build_qpe_circuit(PhaseFraction::parse("3/8"), t, Layout::Lnn);
        CHECK(is_nearest_neighbor(c));
    }
    const Circuit far = build_qpe_circuit(PhaseFraction::parse("3/8"), 3, Layout::All2All);
    CHECK_FALSE(is_nearest_neighbor(far));
    CHECK_THROWS_AS(build_qpe_circuit(PhaseFraction::parse("1/2"), 9, Layout::Lnn),
                    std::invalid_argument);
}

TEST_CASE("both qpe layouts produce the same state") {
    for (unsigned t = 2; t <= 4; ++t) {
        const PhaseFraction theta = PhaseFraction::parse("1/3");
        const Circuit a = build_qpe_circuit(theta, t, Layout::All2All);
        const Circuit l = build_qpe_circuit(theta, t, Layout::Lnn);
        const Statevector sa = apply_circuit(Statevector::basis_state(t + 1, 0), a);
        const Statevector sl = apply_circuit(Statevector::basis_state(t + 1, 0), l);
        for (std::uint64_t i = 0; i < sa.dim(); ++i) CHECK(std::abs(sa[i] - sl[i]) < 1e-9);
    }
}

TEST_CASE("qpe recovers exact three-bit phases with certainty") {
    const QPEResult res = run_qpe(PhaseFraction::parse("3/8"), 3, 1000, 7, Layout::Lnn);
    CHECK(res.best_outcome == 3);
    CHECK(res.histogram.at("011") == 1000);
    CHECK(res.success_rate == 1.0);

    const QPEResult zero = run_qpe(PhaseFraction::parse("0"), 3, 500, 7, Layout::All2All);
    CHECK(zero.histogram.at("000") == 500);
    CHECK(zero.success_rate == 1.0);
}

TEST_CASE("qpe on a non-representable phase follows the spectral weight") {
    const QPEResult res = run_qpe(PhaseFraction::parse("1/3"), 3, 10000, 11, Layout::Lnn);
    // nearest outcome 3; closed-form weight |sin(8 pi d)/(8 sin(pi d))|^2, d = 1/3 - 3/8
    const double d = 1.0 / 3.0 - 3.0 / 8.0;
    const double p = std::pow(std::sin(8 * kPi * d) / (8 * std::sin(kPi * d)), 2);
    CHECK(res.success_rate > p - 0.02);
    CHECK(res.success_rate < p + 0.02);
}

TEST_CASE("qpe is deterministic for a fixed seed") {
    const QPEResult a = run_qpe(PhaseFraction::parse("1/3"), 3, 2000, 5, Layout::Lnn);
    const QPEResult b = run_qpe(PhaseFraction::parse("1/3"), 3, 2000, 5, Layout::Lnn);
    CHECK(a.histogram == b.histogram);
    CHECK(a.best_outcome == b.best_outcome);
}

TEST_CASE("route_to_lnn moves the control and records the relabeling") {
    Circuit c(3);
    c.add(Gate::cnot(0, 2));
    const Circuit routed = route_to_lnn(c);
    REQUIRE(routed.size() == 2);
    CHECK(routed.gates()[0] == Gate::swap(0, 1));
    CHECK(routed.gates()[1] == Gate::cnot(1, 2));
    CHECK(routed.output_permutation().map == std::vector<unsigned>{1, 0, 2});

    const UnitaryMatrix lhs = circuit_unitary(routed);
    const UnitaryMatrix rhs = permutation_matrix(routed.output_permutation()) * circuit_unitary(c);
    CHECK(fidelity_up_to_phase(lhs, rhs) >= 1.0 - 1e-12);
}

TEST_CASE("route_to_lnn leaves adjacent circuits alone") {
    Circuit c(3);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::h(2));
    const Circuit routed = route_to_lnn(c);
    CHECK(routed.size() == 2);
    CHECK(routed.output_permutation().is_identity());
}

TEST_CASE("route_to_lnn is oracle-equivalent on random circuits") {
    for (int trial = 0; trial < 50; ++trial) {
        const unsigned n = 3 + trial % 4;
        const Circuit c = random_circuit(n, 20, 31000 + trial);
        const Circuit routed = route_to_lnn(c);
        CHECK(is_nearest_neighbor(routed));
        const UnitaryMatrix lhs = circuit_unitary(routed);
        const UnitaryMatrix rhs =
            permutation_matrix(routed.output_permutation()) * circuit_unitary(c);
        CHECK(fidelity_up_to_phase(lhs, rhs) >= 1.0 - 1e-11);
    }
}

TEST_CASE("a-operator amplitude matches the closed form") {
    AOperatorSpec spec{1, kPi / 2, {kPi / 2}};
    CHECK(a_exact(spec) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(measured_good_amplitude(build_a_operator(spec)) == doctest::Approx(0.75).epsilon(1e-12));

    AOperatorSpec zero{2, 0.0, {0.0, 0.0}};
    CHECK(measured_good_amplitude(build_a_operator(zero)) == doctest::Approx(0.0));

    AOperatorSpec one{0, kPi, {}};
    CHECK(measured_good_amplitude(build_a_operator(one)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a recovery over exhaustive small specs") {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        AOperatorSpec spec;
        spec.n = trial % 3;
        spec.theta_const = nnqft::testing::uniform_angle(rng);
        for (unsigned k = 0; k < spec.n; ++k)
            spec.theta_linear.push_back(nnqft::testing::uniform_angle(rng));
        CHECK(measured_good_amplitude(build_a_operator(spec)) ==
              doctest::Approx(a_exact(spec)).epsilon(1e-12));
    }
}

TEST_CASE("single controlled-Ry conversion is exact") {
    Circuit c(2);
    c.add(Gate::cry(0, 1, 0.9));
    const Circuit conv = convert_cry_chain_to_lnn(c);
    CHECK(unitary_distance_up_to_phase(conv, c) < 1e-12);
    CHECK(count_gates(conv).count(GateKind::Rx) == 2);
    CHECK(is_nearest_neighbor(conv));
}

TEST_CASE("conversion is exactly unitary-preserving for 50 random chains") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 50; ++trial) {
        AOperatorSpec spec;
        spec.n = 1 + trial % 3;
        spec.theta_const = nnqft::testing::uniform_angle(rng);
        for (unsigned k = 0; k < spec.n; ++k)
            spec.theta_linear.push_back(nnqft::testing::uniform_angle(rng));
        const Circuit a = build_a_operator(spec);
        const Circuit conv = convert_cry_chain_to_lnn(a);
        CHECK(conv.global_phase() == a.global_phase());  // no ledger change
        CHECK(unitary_distance_up_to_phase(conv, a) < 1e-11);
        CHECK(is_nearest_neighbor(conv));
        CHECK(count_gates(conv).count(GateKind::Rx) == 2);
    }
}

TEST_CASE("converted chains cost no more CNOTs than the routed baseline") {
    std::mt19937_64 rng(707);
    for (unsigned k = 1; k <= 4; ++k) {
        AOperatorSpec spec;
        spec.n = k;
        spec.theta_const = nnqft::testing::uniform_angle(rng);
        for (unsigned i = 0; i < k; ++i)
            spec.theta_linear.push_back(nnqft::testing::uniform_angle(rng));
        const Circuit a = build_a_operator(spec);
        const Circuit conv = convert_cry_chain_to_lnn(a);
        const Circuit baseline =
            decompose_swap_all(decompose_controlled_rotations_all(route_to_lnn(a)));
        CHECK(count_gates(conv).cnot_total <= count_gates(baseline).cnot_total);
    }
}

TEST_CASE("conversion rejects inputs that are not shared-target chains") {
    Circuit c(3);
    c.add(Gate::cry(0, 1, 0.4));  // target is not the last wire
    c.add(Gate::cry(0, 2, 0.4));
    CHECK_THROWS_WITH_AS(convert_cry_chain_to_lnn(c),
                         doctest::Contains("offending gate: cry 0 1"), std::invalid_argument);

    Circuit d(2);
    d.add(Gate::cnot(0, 1));
    CHECK_THROWS_AS(convert_cry_chain_to_lnn(d), std::invalid_argument);
}

TEST_CASE("grover operator at a = 1/2 rotates by a quarter turn") {
    Circuit a(1);
    a.add(Gate::ry(0, kPi / 2));
    const GroverOperator op = build_grover_operator(a);
    CHECK(op.a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(op.matrix.unitarity_defect() < 1e-10);

    const auto phases = grover_invariant_eigenphases(op, a);
    REQUIRE(phases.size() == 2);
    CHECK(phases[0] == doctest::Approx(-kPi / 2).epsilon(1e-9));
    CHECK(phases[1] == doctest::Approx(kPi / 2).epsilon(1e-9));
}

TEST_CASE("grover operator fixes the prepared state when a = 0") {
    AOperatorSpec spec{1, 0.0, {0.0}};
    const Circuit a = build_a_operator(spec);
    const GroverOperator op = build_grover_operator(a);
    const auto phases = grover_invariant_eigenphases(op, a);
    REQUIRE(phases.size() == 1);
    CHECK(std::abs(phases[0]) < 1e-9);  // eigenvalue +1 on A|0>
}

TEST_CASE("grover operators are unitary for random preparations") {
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit a = random_circuit(3, 12, 808 + trial);
        CHECK(build_grover_operator(a).matrix.unitarity_defect() < 1e-10);
    }
}

TEST_CASE("grover eigenphases follow the amplitude for random specs") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 20; ++trial) {
        AOperatorSpec spec;
        spec.n = trial % 3;
        spec.theta_const = nnqft::testing::uniform_angle(rng);
        for (unsigned k = 0; k < spec.n; ++k)
            spec.theta_linear.push_back(nnqft::testing::uniform_angle(rng));
        const Circuit a = build_a_operator(spec);
        const GroverOperator op = build_grover_operator(a);
        if (op.a < 1e-6 || op.a > 1.0 - 1e-6) continue;  // degenerate span
        const auto phases = grover_invariant_eigenphases(op, a);
        REQUIRE(phases.size() == 2);
        CHECK(phases[1] == doctest::Approx(2 * op.theta_a).epsilon(1e-9));
        CHECK(phases[0] == doctest::Approx(-2 * op.theta_a).epsilon(1e-9));
    }
}

TEST_CASE("qae recovers a = 1/2 exactly with two result bits") {
    AOperatorSpec spec{0, kPi / 2, {}};
    const QAEResult res = run_qae(spec, 2, 4000, 3);
    CHECK(res.a_hat == doctest::Approx(0.5).epsilon(1e-12));
    std::uint64_t total = 0;
    for (const auto& [bits, count] : res.histogram) {
        CHECK((bits == "01" || bits == "11"));  // y in {1, 3}
        total += count;
    }
    CHECK(total == 4000);
}

TEST_CASE("qae reports zero for an empty amplitude") {
    AOperatorSpec spec{1, 0.0, {0.0}};
    const QAEResult res = run_qae(spec, 3, 500, 21);
    CHECK(res.y == 0);
    CHECK(res.a_hat == 0.0);
    CHECK(res.histogram.at("000") == 500);
}

TEST_CASE("qae is deterministic for a fixed seed") {
    AOperatorSpec spec{1, kPi / 2, {kPi / 2}};
    const QAEResult a = run_qae(spec, 4, 2000, 17);
    const QAEResult b = run_qae(spec, 4, 2000, 17);
    CHECK(a.histogram == b.histogram);
    CHECK(a.y == b.y);
}
