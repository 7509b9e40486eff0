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

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nnqft/circuit.hpp"

namespace nnqft {

struct RuleApplication {
    std::vector<Gate> replacement;
    double phase_delta = 0.0;
};

/// A window rewrite: matcher over consecutive gates plus a replacement builder.
/// Invariant (enforced by validate_rule): replacement unitary equals
/// e^{i phase_delta} times the matched window's unitary.
struct RewriteRule {
    std::string name;
    unsigned min_size = 2;  // smallest register the rule instantiates on
    /// Returns the window length if the rule matches at `pos`.
    std::function<std::optional<std::size_t>(const Circuit&, std::size_t pos)> match;
    std::function<RuleApplication(const Circuit&, std::size_t pos, std::size_t len)> replace;
    /// Concrete LHS instance on an n-wire register (random angles/wires).
    std::function<std::vector<Gate>(unsigned n, std::mt19937_64&)> sample_lhs;
};

/// The registered rules: controlled-phase decomposition, swap decomposition,
/// adjacent-CNOT cancellation, rotation merging, control-side rotation
/// commutation, and the fan-to-chain identity.
const std::vector<RewriteRule>& rule_catalog();

const RewriteRule& find_rule(const std::string& name);

struct RuleSoundnessReport {
    std::string rule;
    double max_deviation = 0.0;
    std::size_t trials_run = 0;
    bool passed = false;
    std::string detail;
};

/// Embeds the rule's LHS in random circuit contexts for each register size up
/// to max_size, rewrites, and compares unitaries up to the recorded phase.
/// Fails if any deviation exceeds 1e-10 or the rule does not match its own LHS.
RuleSoundnessReport validate_rule(const RewriteRule& rule, unsigned max_size,
                                  std::size_t trials, std::uint64_t seed);

/// CP(theta; a, b) -> Rz(theta/2) a, Rz(theta/2) b, CNOT(a,b), Rz(-theta/2) b,
/// CNOT(a,b); ledger += theta/4 per gate.
Circuit decompose_cp_all(const Circuit& c);

/// SWAP(a, b) -> CNOT(a,b), CNOT(b,a), CNOT(a,b).
Circuit decompose_swap_all(const Circuit& c);

/// CRz/CRy -> two CNOTs plus basis rotations on the target (exact, no ledger).
Circuit decompose_controlled_rotations_all(const Circuit& c);

/// Fixpoint of adjacent-on-wire CNOT cancellation, Rz merging (with
/// control-side commutation as the reordering enabler) and zero-rotation
/// pruning. Never increases the CNOT count.
Circuit simplify(const Circuit& c);

/// Applies the fan-to-chain identity at one site. Returns the rewritten
/// circuit and whether the site matched; a non-matching site leaves the
/// circuit unchanged.
std::pair<Circuit, bool> apply_fan_identity(const Circuit& c, std::size_t site);

struct PassRecord {
    std::string name;
    std::size_t gates_before = 0;
    std::size_t gates_after = 0;
    std::size_t cnots_before = 0;
    std::size_t cnots_after = 0;
    std::size_t matches_applied = 0;
};

struct PipelineTrace {
    std::vector<PassRecord> passes;
    std::string str() const;
};

/// Runs named passes in order. Registered names: "decompose-cp",
/// "decompose-swap", "fan-chain", "simplify". Throws on unknown names.
std::pair<Circuit, PipelineTrace> run_pipeline(const Circuit& c,
                                               const std::vector<std::string>& passes);

}  // namespace nnqft
