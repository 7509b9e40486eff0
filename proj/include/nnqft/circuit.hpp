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

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace nnqft {

using QubitIndex = unsigned;

enum class GateKind { H, X, Rx, Ry, Rz, CNOT, CP, CRz, CRy, SWAP };

bool gate_kind_is_two_qubit(GateKind k);
bool gate_kind_has_angle(GateKind k);
const char* gate_kind_name(GateKind k);

/// One gate of the IR. Two-qubit kinds store (control, target) in qs[0], qs[1];
/// SWAP qubits carry no control/target meaning.
struct Gate {
    GateKind kind;
    std::array<QubitIndex, 2> qs{0, 0};
    double angle = 0.0;

    static Gate h(QubitIndex q) { return {GateKind::H, {q, 0}, 0.0}; }
    static Gate x(QubitIndex q) { return {GateKind::X, {q, 0}, 0.0}; }
    static Gate rx(QubitIndex q, double a) { return {GateKind::Rx, {q, 0}, a}; }
    static Gate ry(QubitIndex q, double a) { return {GateKind::Ry, {q, 0}, a}; }
    static Gate rz(QubitIndex q, double a) { return {GateKind::Rz, {q, 0}, a}; }
    static Gate cnot(QubitIndex c, QubitIndex t) { return {GateKind::CNOT, {c, t}, 0.0}; }
    static Gate cp(QubitIndex c, QubitIndex t, double a) { return {GateKind::CP, {c, t}, a}; }
    static Gate crz(QubitIndex c, QubitIndex t, double a) { return {GateKind::CRz, {c, t}, a}; }
    static Gate cry(QubitIndex c, QubitIndex t, double a) { return {GateKind::CRy, {c, t}, a}; }
    static Gate swap(QubitIndex a, QubitIndex b) { return {GateKind::SWAP, {a, b}, 0.0}; }

    bool is_two_qubit() const { return gate_kind_is_two_qubit(kind); }
    bool has_angle() const { return gate_kind_has_angle(kind); }
    std::size_t arity() const { return is_two_qubit() ? 2 : 1; }
    QubitIndex control() const { return qs[0]; }
    QubitIndex target() const { return is_two_qubit() ? qs[1] : qs[0]; }
    bool touches(QubitIndex q) const {
        return qs[0] == q || (is_two_qubit() && qs[1] == q);
    }
    bool operator==(const Gate& o) const;
    std::string str() const;
};

/// Qubit relabeling: map[wire] = index of the logical qubit whose content the
/// wire carries at circuit output.
struct Permutation {
    std::vector<unsigned> map;

    static Permutation identity(unsigned n);
    static Permutation reversal(unsigned n);
    bool is_identity() const;
    bool is_valid() const;
    Permutation inverse() const;
    unsigned size() const { return static_cast<unsigned>(map.size()); }
    bool operator==(const Permutation& o) const { return map == o.map; }
};

/// Composition matching permutation-matrix product: P_a * P_b = P_{compose(a,b)}.
Permutation compose_permutations(const Permutation& a, const Permutation& b);

struct Violation {
    std::size_t gate_index;  // npos for circuit-level violations
    std::string reason;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

class Circuit {
public:
    explicit Circuit(unsigned n_qubits);

    unsigned n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::vector<Gate>& gates() { return gates_; }
    double global_phase() const { return global_phase_; }
    void set_global_phase(double p) { global_phase_ = p; }
    void add_global_phase(double p) { global_phase_ += p; }
    const Permutation& output_permutation() const { return output_permutation_; }
    void set_output_permutation(Permutation p);

    void add(Gate g) { gates_.push_back(g); }
    void add(const std::vector<Gate>& gs) { gates_.insert(gates_.end(), gs.begin(), gs.end()); }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

private:
    unsigned n_qubits_;
    std::vector<Gate> gates_;
    double global_phase_ = 0.0;
    Permutation output_permutation_;
};

struct GateCountReport {
    std::map<GateKind, std::size_t> per_kind;
    std::size_t cnot_total = 0;

    std::size_t count(GateKind k) const {
        auto it = per_kind.find(k);
        return it == per_kind.end() ? 0 : it->second;
    }
    std::size_t two_qubit_total() const;
    std::string str() const;
};

/// Structural validation. Violations are data, not failures.
std::vector<Violation> validate_circuit(const Circuit& c);

/// Throws std::invalid_argument listing the violations if the circuit is invalid.
void require_valid(const Circuit& c);

/// True iff every two-qubit gate acts on chain-adjacent wires.
bool is_nearest_neighbor(const Circuit& c);

GateCountReport count_gates(const Circuit& c);

/// Reversed gate list with negated angles, negated phase ledger and inverted
/// output permutation; circuit_unitary(invert(c)) * circuit_unitary(c) = I.
Circuit invert(const Circuit& c);

/// Time order a then b; ledgers add, output permutations compose.
Circuit compose(const Circuit& a, const Circuit& b);

}  // namespace nnqft
