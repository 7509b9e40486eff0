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

#include <optional>
#include <string>
#include <vector>

#include "nnqft/circuit.hpp"
#include "nnqft/simulator.hpp"

namespace nnqft {

/// Textbook transform circuit: per wire i, H(i) then the controlled-phase fan
/// CP(2 pi / 2^(j-i+1); control j, target i) for j > i. Declares the qubit
/// reversal as its output permutation; n H and n(n-1)/2 CP gates.
Circuit build_standard_qft(unsigned n);

/// The same transform with every controlled phase written in two-CNOT form,
/// interactions grouped into per-qubit fans and the single-wire rotations
/// merged; n(n-1) CNOT gates, all pointing toward the lower-indexed wire.
/// This is the input the chain pipeline rewrites into nearest-neighbor form.
Circuit build_decomposed_qft(unsigned n);

/// Swap-cascade nearest-neighbor construction: every interaction is an
/// adjacent CP followed by an adjacent SWAP, so the fully decomposed circuit
/// costs 5 n(n-1)/2 CNOTs. Identity output permutation.
Circuit build_lnn_qft_baseline(unsigned n);

/// Difference-chain nearest-neighbor construction with exactly n^2 + n - 4
/// CNOTs. Agrees in counts and unitary with running the fan-chain pipeline
/// over build_decomposed_qft. Declares the qubit reversal.
Circuit build_lnn_qft_optimized(unsigned n);

struct Table1Row {
    unsigned n = 0;
    std::size_t ours = 0;
    std::size_t ref17 = 0;
    std::optional<int> ref15;
    std::optional<int> ref16;
    double improvement_pct = 0.0;
};

/// Rows n = 5..10: measured CNOT counts for the chain and swap-cascade
/// builders next to the published prior-work constants, plus the improvement
/// over the best prior.
std::vector<Table1Row> table1_report();

std::string render_table1_text(const std::vector<Table1Row>& rows);
std::string render_table1_records(const std::vector<Table1Row>& rows);

/// Exhaustive output-permutation search (n <= 6): the relabeling under which
/// the circuit matches the target, if any reaches 1 - tol.
std::optional<Permutation> find_output_permutation(const Circuit& c, const UnitaryMatrix& target,
                                                   double tol);

}  // namespace nnqft
