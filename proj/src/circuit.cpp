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

#include "nnqft/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace nnqft {

bool gate_kind_is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CP:
        case GateKind::CRz:
        case GateKind::CRy:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

bool gate_kind_has_angle(GateKind k) {
    switch (k) {
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::CP:
        case GateKind::CRz:
        case GateKind::CRy:
            return true;
        default:
            return false;
    }
}

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Rx: return "rx";
        case GateKind::Ry: return "ry";
        case GateKind::Rz: return "rz";
        case GateKind::CNOT: return "cx";
        case GateKind::CP: return "cp";
        case GateKind::CRz: return "crz";
        case GateKind::CRy: return "cry";
        case GateKind::SWAP: return "swap";
    }
    return "?";
}

bool Gate::operator==(const Gate& o) const {
    if (kind != o.kind) return false;
    if (qs[0] != o.qs[0]) return false;
    if (is_two_qubit() && qs[1] != o.qs[1]) return false;
    if (has_angle() && angle != o.angle) return false;
    return true;
}

std::string Gate::str() const {
    std::string s = gate_kind_name(kind);
    s += " " + std::to_string(qs[0]);
    if (is_two_qubit()) s += " " + std::to_string(qs[1]);
    if (has_angle()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, " %.17g", angle);
        s += buf;
    }
    return s;
}

Permutation Permutation::identity(unsigned n) {
    Permutation p;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), 0u);
    return p;
}

Permutation Permutation::reversal(unsigned n) {
    Permutation p;
    p.map.resize(n);
    for (unsigned i = 0; i < n; ++i) p.map[i] = n - 1 - i;
    return p;
}

bool Permutation::is_identity() const {
    for (unsigned i = 0; i < map.size(); ++i)
        if (map[i] != i) return false;
    return true;
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(map.size(), false);
    for (unsigned v : map) {
        if (v >= map.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.map.resize(map.size());
    for (unsigned i = 0; i < map.size(); ++i) p.map[map[i]] = i;
    return p;
}

Permutation compose_permutations(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("permutation size mismatch in composition");
    Permutation c;
    c.map.resize(a.size());
    for (unsigned i = 0; i < a.size(); ++i) c.map[i] = b.map[a.map[i]];
    return c;
}

Circuit::Circuit(unsigned n_qubits)
    : n_qubits_(n_qubits), output_permutation_(Permutation::identity(n_qubits)) {
    if (n_qubits == 0) throw std::invalid_argument("circuit needs at least one qubit");
}

void Circuit::set_output_permutation(Permutation p) {
    if (p.size() != n_qubits_ || !p.is_valid())
        throw std::invalid_argument("output permutation is not a permutation of the qubit range");
    output_permutation_ = std::move(p);
}

std::size_t GateCountReport::two_qubit_total() const {
    std::size_t t = 0;
    for (const auto& [k, c] : per_kind)
        if (gate_kind_is_two_qubit(k)) t += c;
    return t;
}

std::string GateCountReport::str() const {
    std::string s;
    for (const auto& [k, c] : per_kind) {
        if (!s.empty()) s += ", ";
        std::string name = gate_kind_name(k);
        for (auto& ch : name) ch = static_cast<char>(std::toupper(ch));
        s += name + ": " + std::to_string(c);
    }
    s += (s.empty() ? "" : "; ");
    s += "CNOT total: " + std::to_string(cnot_total);
    return s;
}

std::vector<Violation> validate_circuit(const Circuit& c) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        for (std::size_t a = 0; a < g.arity(); ++a) {
            if (g.qs[a] >= c.n_qubits())
                out.push_back({i, std::string(gate_kind_name(g.kind)) + ": index out of range (" +
                                      std::to_string(g.qs[a]) + " >= " +
                                      std::to_string(c.n_qubits()) + ")"});
        }
        if (g.is_two_qubit() && g.qs[0] == g.qs[1])
            out.push_back({i, std::string(gate_kind_name(g.kind)) + ": identical control/target"});
        if (g.has_angle() && !std::isfinite(g.angle))
            out.push_back({i, std::string(gate_kind_name(g.kind)) + ": non-finite angle"});
    }
    if (!std::isfinite(c.global_phase()))
        out.push_back({Violation::npos, "non-finite global phase"});
    if (!c.output_permutation().is_valid() || c.output_permutation().size() != c.n_qubits())
        out.push_back({Violation::npos, "output permutation is not a bijection on the qubit range"});
    return out;
}

void require_valid(const Circuit& c) {
    auto v = validate_circuit(c);
    if (v.empty()) return;
    std::string msg = "invalid circuit:";
    for (const auto& viol : v) {
        msg += " [";
        if (viol.gate_index != Violation::npos)
            msg += "gate " + std::to_string(viol.gate_index) + ": ";
        msg += viol.reason + "]";
    }
    throw std::invalid_argument(msg);
}

bool is_nearest_neighbor(const Circuit& c) {
    require_valid(c);
    for (const Gate& g : c.gates()) {
        if (!g.is_two_qubit()) continue;
        int d = static_cast<int>(g.qs[0]) - static_cast<int>(g.qs[1]);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

GateCountReport count_gates(const Circuit& c) {
    require_valid(c);
    GateCountReport r;
    for (const Gate& g : c.gates()) ++r.per_kind[g.kind];
    r.cnot_total = r.count(GateKind::CNOT);
    return r;
}

Circuit invert(const Circuit& c) {
    Circuit out(c.n_qubits());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        Gate g = *it;
        if (g.has_angle()) g.angle = -g.angle;
        out.add(g);
    }
    out.set_global_phase(-c.global_phase());
    out.set_output_permutation(c.output_permutation().inverse());
    return out;
}

Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("compose: qubit counts differ (" +
                                    std::to_string(a.n_qubits()) + " vs " +
                                    std::to_string(b.n_qubits()) + ")");
    Circuit out(a.n_qubits());
    out.add(a.gates());
    out.add(b.gates());
    out.set_global_phase(a.global_phase() + b.global_phase());
    out.set_output_permutation(
        compose_permutations(b.output_permutation(), a.output_permutation()));
    return out;
}

}  // namespace nnqft
