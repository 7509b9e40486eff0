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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nnqft/circuit.hpp"
#include "nnqft/simulator.hpp"

namespace nnqft {

/// Phase in [0, 1), either an exact rational p/q or a real value. The
/// exactness flag depends on the register width t: theta * 2^t integral.
struct PhaseFraction {
    double value = 0.0;
    bool is_rational = false;
    long long num = 0;
    long long den = 1;

    static PhaseFraction from_real(double theta);
    static PhaseFraction from_fraction(long long num, long long den);
    /// Accepts "p/q" or a decimal literal.
    static PhaseFraction parse(const std::string& text);

    bool exact_in_bits(unsigned t) const;
    /// round(value * 2^t) mod 2^t
    std::uint64_t nearest_outcome(unsigned t) const;
};

enum class Layout { All2All, Lnn };

/// Controlled power of U = diag(1, e^{2 pi i theta}): a single CP with the
/// accumulated angle 2 pi theta 2^j mod 2 pi; empty when the angle vanishes.
std::vector<Gate> build_controlled_power_u(const PhaseFraction& theta, unsigned j,
                                           QubitIndex control, QubitIndex target);

/// Phase estimation over t control qubits plus one eigenstate qubit (wire t,
/// prepared in |1>). Control qubit j carries phase weight 2^j; after the
/// inverse transform the estimate reads off the control wires most significant
/// bit first. The Lnn layout routes the controlled powers and uses the
/// inverse of the chain-form transform; both layouts have identical unitaries.
Circuit build_qpe_circuit(const PhaseFraction& theta, unsigned t, Layout layout);

/// Greedy swap insertion: before every non-adjacent two-qubit gate the control
/// walks toward the target; the accumulated relabeling is folded into the
/// output permutation (no un-swapping).
Circuit route_to_lnn(const Circuit& c);

struct QPEResult {
    std::map<std::string, std::uint64_t> histogram;
    std::uint64_t best_outcome = 0;
    double success_rate = 0.0;
};

QPEResult run_qpe(const PhaseFraction& theta, unsigned t, std::uint64_t shots, std::uint64_t seed,
                  Layout layout);

/// State preparation A over n + 1 qubits: wires 0..n-1 are the x register,
/// wire n the rotation target. Encodes theta(x) = theta_const +
/// sum_k x_k theta_linear[k], so P(target = 1) = mean of sin^2(theta(x)/2).
struct AOperatorSpec {
    unsigned n = 0;
    double theta_const = 0.0;
    std::vector<double> theta_linear;
};

Circuit build_a_operator(const AOperatorSpec& spec);

/// Closed-form good-state amplitude of the spec.
double a_exact(const AOperatorSpec& spec);

/// P(last qubit = 1) of circuit |0...0>.
double measured_good_amplitude(const Circuit& a_circuit);

/// Rewrites a shared-target controlled-Ry chain into nearest-neighbor form:
/// the target rotations are conjugated into the z basis by a single Rx pair,
/// the controlled rotations become two-CNOT sandwiches, and the fan is
/// rewritten through the difference-chain identity. Exactly unitary-preserving.
Circuit convert_cry_chain_to_lnn(const Circuit& c);

struct GroverOperator {
    UnitaryMatrix matrix;
    double a = 0.0;
    double theta_a = 0.0;
};

/// Q = -A S0 A^dagger S_chi with S0 the zero-state reflection and S_chi the
/// phase flip on states whose last qubit is 1. Matrix-level construction.
GroverOperator build_grover_operator(const Circuit& a_circuit);

/// Eigenphases of Q restricted to span{A|0>, S_chi A|0>} (one phase when the
/// span is one-dimensional).
std::vector<double> grover_invariant_eigenphases(const GroverOperator& op,
                                                 const Circuit& a_circuit);

struct QAEResult {
    std::uint64_t y = 0;
    double a_hat = 0.0;
    unsigned m_bits = 0;
    std::map<std::string, std::uint64_t> histogram;
};

/// Canonical amplitude estimation: phase estimation of the Grover operator
/// with M result qubits and initial state A|0>; a_hat = sin^2(pi y / 2^M).
QAEResult run_qae(const AOperatorSpec& spec, unsigned m_bits, std::uint64_t shots,
                  std::uint64_t seed);

}  // namespace nnqft
