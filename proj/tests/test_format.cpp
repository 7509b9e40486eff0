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

#include "nnqft/format.hpp"
#include "nnqft/qft_synth.hpp"
#include "test_util.hpp"

using namespace nnqft;
using nnqft::testing::random_circuit;

namespace {

bool structurally_equal(const Circuit& a, const Circuit& b) {
    if (a.n_qubits() != b.n_qubits()) return false;
    if (a.global_phase() != b.global_phase()) return false;
    if (!(a.output_permutation() == b.output_permutation())) return false;
    if (a.gates().size() != b.gates().size()) return false;
    for (std::size_t i = 0; i < a.gates().size(); ++i)
        if (!(a.gates()[i] == b.gates()[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("single hadamard serializes to the documented form") {
    Circuit c(1);
    c.add(Gate::h(0));
    CHECK(serialize(c) == "qubits 1\nh 0\n");
}

TEST_CASE("cp line parses control, target and angle") {
    Circuit c = parse_circuit("qubits 2\ncp 1 0 1.5707963267948966\n");
    REQUIRE(c.gates().size() == 1);
    const Gate& g = c.gates()[0];
    CHECK(g.kind == GateKind::CP);
    CHECK(g.qs[0] == 1);
    CHECK(g.qs[1] == 0);
    CHECK(g.angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("comments and blank lines are ignored") {
    Circuit c = parse_circuit("# header\nqubits 2\n\nh 0  # trailing\nswap 0 1\n");
    CHECK(c.gates().size() == 2);
}

TEST_CASE("round trip of the chain-form transform is structural identity") {
    const Circuit c = build_lnn_qft_optimized(6);
    CHECK(structurally_equal(parse_circuit(serialize(c)), c));
}

TEST_CASE("round trip preserves random circuits exactly") {
    for (int trial = 0; trial < 40; ++trial) {
        Circuit c = random_circuit(5, 25, 300 + trial);
        c.set_global_phase(0.123456789123456789 * trial);
        if (trial % 3 == 0) c.set_output_permutation(Permutation{{4, 2, 0, 1, 3}});
        CHECK(structurally_equal(parse_circuit(serialize(c)), c));
    }
}

TEST_CASE("parse errors carry line numbers and tokens") {
    try {
        parse_circuit("qubits 2\nh 0\nfrobnicate 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.token() == "frobnicate");
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_circuit("h 0\n"), ParseError);              // missing header
    CHECK_THROWS_AS(parse_circuit("qubits 2\nh 0 1\n"), ParseError);  // wrong arity
    CHECK_THROWS_AS(parse_circuit("qubits 2\nrz 0\n"), ParseError);   // missing angle
    CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 0 0\n"), ParseError); // same wires
    CHECK_THROWS_AS(parse_circuit("qubits 2\nh 5\n"), ParseError);    // out of range
    CHECK_THROWS_AS(parse_circuit("qubits 2\nperm 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit(""), ParseError);
}

TEST_CASE("perm and phase directives round trip") {
    Circuit c = parse_circuit("qubits 3\nperm 2 0 1\nphase 0.25\nh 0\n");
    CHECK(c.output_permutation().map == std::vector<unsigned>{2, 0, 1});
    CHECK(c.global_phase() == 0.25);
    CHECK(structurally_equal(parse_circuit(serialize(c)), c));
}
