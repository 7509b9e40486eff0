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

#include "nnqft/format.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <vector>

namespace nnqft {

namespace {

std::string format_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

unsigned parse_index(const std::string& tok, std::size_t lineno) {
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || v < 0)
        throw ParseError(lineno, tok, "expected a non-negative integer");
    return static_cast<unsigned>(v);
}

double parse_angle(const std::string& tok, std::size_t lineno) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ParseError(lineno, tok, "expected an angle in radians");
    return v;
}

struct GateSpec {
    GateKind kind;
    bool two_qubit;
    bool angled;
};

std::optional<GateSpec> lookup_mnemonic(const std::string& m) {
    static const std::vector<std::pair<std::string, GateSpec>> table = {
        {"h", {GateKind::H, false, false}},     {"x", {GateKind::X, false, false}},
        {"rx", {GateKind::Rx, false, true}},    {"ry", {GateKind::Ry, false, true}},
        {"rz", {GateKind::Rz, false, true}},    {"cx", {GateKind::CNOT, true, false}},
        {"cp", {GateKind::CP, true, true}},     {"crz", {GateKind::CRz, true, true}},
        {"cry", {GateKind::CRy, true, true}},   {"swap", {GateKind::SWAP, true, false}},
    };
    for (const auto& [name, spec] : table)
        if (name == m) return spec;
    return std::nullopt;
}

}  // namespace

std::string serialize(const Circuit& c) {
    require_valid(c);
    std::ostringstream os;
    os << "qubits " << c.n_qubits() << "\n";
    if (!c.output_permutation().is_identity()) {
        os << "perm";
        for (unsigned v : c.output_permutation().map) os << " " << v;
        os << "\n";
    }
    if (c.global_phase() != 0.0) os << "phase " << format_angle(c.global_phase()) << "\n";
    for (const Gate& g : c.gates()) os << g.str() << "\n";
    return os.str();
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<Circuit> circ;
    bool saw_gate = false;

    while (std::getline(is, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];

        if (!circ) {
            if (head != "qubits")
                throw ParseError(lineno, head, "expected 'qubits <n>' as the first directive");
            if (toks.size() != 2) throw ParseError(lineno, "", "'qubits' takes exactly one argument");
            unsigned n = parse_index(toks[1], lineno);
            if (n == 0) throw ParseError(lineno, toks[1], "qubit count must be positive");
            circ.emplace(n);
            continue;
        }

        if (head == "qubits") throw ParseError(lineno, head, "duplicate 'qubits' directive");

        if (head == "perm") {
            if (saw_gate) throw ParseError(lineno, head, "'perm' must precede gate lines");
            if (toks.size() != circ->n_qubits() + 1)
                throw ParseError(lineno, "", "'perm' needs exactly " +
                                                 std::to_string(circ->n_qubits()) + " entries");
            Permutation p;
            for (std::size_t i = 1; i < toks.size(); ++i)
                p.map.push_back(parse_index(toks[i], lineno));
            if (!p.is_valid())
                throw ParseError(lineno, "", "'perm' entries are not a permutation");
            circ->set_output_permutation(std::move(p));
            continue;
        }

        if (head == "phase") {
            if (saw_gate) throw ParseError(lineno, head, "'phase' must precede gate lines");
            if (toks.size() != 2) throw ParseError(lineno, "", "'phase' takes exactly one argument");
            circ->set_global_phase(parse_angle(toks[1], lineno));
            continue;
        }

        auto spec = lookup_mnemonic(head);
        if (!spec) throw ParseError(lineno, head, "unknown gate mnemonic");
        std::size_t want = 1 + (spec->two_qubit ? 2 : 1) + (spec->angled ? 1 : 0);
        if (toks.size() != want)
            throw ParseError(lineno, head, "wrong arity: expected " + std::to_string(want - 1) +
                                               " argument(s), got " + std::to_string(toks.size() - 1));
        Gate g{spec->kind, {0, 0}, 0.0};
        g.qs[0] = parse_index(toks[1], lineno);
        std::size_t next = 2;
        if (spec->two_qubit) g.qs[1] = parse_index(toks[next++], lineno);
        if (spec->angled) g.angle = parse_angle(toks[next++], lineno);
        for (std::size_t a = 0; a < g.arity(); ++a)
            if (g.qs[a] >= circ->n_qubits())
                throw ParseError(lineno, toks[1 + a], "qubit index out of range");
        if (g.is_two_qubit() && g.qs[0] == g.qs[1])
            throw ParseError(lineno, head, "identical control/target");
        circ->add(g);
        saw_gate = true;
    }

    if (!circ) throw ParseError(lineno, "", "empty input: missing 'qubits' directive");
    return *circ;
}

}  // namespace nnqft
