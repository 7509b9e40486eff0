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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nnqft/circuit.hpp"

namespace nnqft {

using Complex = std::complex<double>;

constexpr unsigned kMaxUnitaryQubits = 10;
constexpr unsigned kMaxStatevectorQubits = 20;

/// Dense amplitude vector. Basis index uses qubit 0 as the most significant
/// bit: bit of qubit q in index i is (i >> (n-1-q)) & 1.
class Statevector {
public:
    explicit Statevector(unsigned n_qubits);
    static Statevector basis_state(unsigned n_qubits, std::uint64_t index);

    unsigned n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
    Complex& operator[](std::uint64_t i) { return amps_[i]; }
    const Complex& operator[](std::uint64_t i) const { return amps_[i]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    double norm() const;

private:
    unsigned n_qubits_;
    std::vector<Complex> amps_;
};

/// Dense square complex matrix, row-major.
class UnitaryMatrix {
public:
    UnitaryMatrix() : dim_(0) {}
    explicit UnitaryMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    static UnitaryMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix& o) const;
    Complex trace() const;
    /// Largest entrywise deviation from U†U = I.
    double unitarity_defect() const;

private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

/// Matrix of a single gate under the project-wide conventions; 2x2, or 4x4 in
/// (control, target) tensor order.
UnitaryMatrix gate_matrix(const Gate& g);

/// Applies one gate in place (no global-phase handling).
void apply_gate(Statevector& sv, const Gate& g);

/// result = e^{i phase} * (gate product) * sv.
Statevector apply_circuit(const Statevector& sv, const Circuit& c);

/// Full-circuit unitary including the global-phase ledger. Guarded at
/// kMaxUnitaryQubits.
UnitaryMatrix circuit_unitary(const Circuit& c);

/// Reference transform, entry (j,k) = omega^{jk}/sqrt(2^n), omega = e^{2 pi i/2^n}.
UnitaryMatrix qft_matrix(unsigned n);

/// Reference action of qft_matrix(n) on a state, computed by a radix-2
/// transform; usable beyond the dense-matrix qubit guard.
Statevector qft_reference_apply(const Statevector& sv);

/// |trace(U^dagger V)| / dim; equals 1 iff U = e^{i phi} V.
double fidelity_up_to_phase(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Relabeling unitary: wire i of the output carries the input bit perm.map[i].
UnitaryMatrix permutation_matrix(const Permutation& perm);

/// Applies the relabeling directly to a state.
Statevector permute_state(const Statevector& sv, const Permutation& perm);

struct EquivalenceReport {
    double fidelity = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

/// passed iff fidelity_up_to_phase(circuit_unitary(c), P_perm * target) >= 1 - tol.
EquivalenceReport permuted_equivalence(const Circuit& c, const UnitaryMatrix& target,
                                       const Permutation& perm, double tol);

/// Multinomial draw from |amplitude|^2, deterministic for a fixed seed.
/// Keys are bitstrings with qubit 0 first.
std::map<std::string, std::uint64_t> sample(const Statevector& sv, std::uint64_t shots,
                                            std::uint64_t seed);

std::string bitstring_of_index(std::uint64_t index, unsigned n_qubits);

}  // namespace nnqft
