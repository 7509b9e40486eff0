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

#include "nnqft/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nnqft {

namespace {

constexpr double kPi = std::numbers::pi;

// Canonical double in [0,1) from a 64-bit draw; pinned so that the
// seed -> histogram map is stable across platforms.
double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Statevector::Statevector(unsigned n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxStatevectorQubits)
        throw std::invalid_argument("statevector qubit count out of supported range");
    amps_.assign(std::uint64_t{1} << n_qubits, Complex{0.0, 0.0});
}

Statevector Statevector::basis_state(unsigned n_qubits, std::uint64_t index) {
    Statevector sv(n_qubits);
    if (index >= sv.dim()) throw std::invalid_argument("basis state index out of range");
    sv[index] = Complex{1.0, 0.0};
    return sv;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    UnitaryMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    UnitaryMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    UnitaryMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = 0; k < dim_; ++k) {
            Complex v = at(r, k);
            if (v == Complex{}) continue;
            for (std::size_t c = 0; c < dim_; ++c) m.at(r, c) += v * o.at(k, c);
        }
    return m;
}

Complex UnitaryMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double UnitaryMatrix::unitarity_defect() const {
    UnitaryMatrix p = adjoint() * (*this);
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            Complex want = (r == c) ? Complex{1.0, 0.0} : Complex{};
            worst = std::max(worst, std::abs(p.at(r, c) - want));
        }
    return worst;
}

UnitaryMatrix gate_matrix(const Gate& g) {
    const double a = g.angle;
    const Complex i{0.0, 1.0};
    switch (g.kind) {
        case GateKind::H: {
            UnitaryMatrix m(2);
            const double s = 1.0 / std::sqrt(2.0);
            m.at(0, 0) = s;
            m.at(0, 1) = s;
            m.at(1, 0) = s;
            m.at(1, 1) = -s;
            return m;
        }
        case GateKind::X: {
            UnitaryMatrix m(2);
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::Rx: {
            UnitaryMatrix m(2);
            m.at(0, 0) = std::cos(a / 2);
            m.at(0, 1) = -i * std::sin(a / 2);
            m.at(1, 0) = -i * std::sin(a / 2);
            m.at(1, 1) = std::cos(a / 2);
            return m;
        }
        case GateKind::Ry: {
            UnitaryMatrix m(2);
            m.at(0, 0) = std::cos(a / 2);
            m.at(0, 1) = -std::sin(a / 2);
            m.at(1, 0) = std::sin(a / 2);
            m.at(1, 1) = std::cos(a / 2);
            return m;
        }
        case GateKind::Rz: {
            UnitaryMatrix m(2);
            m.at(0, 0) = std::exp(-i * (a / 2));
            m.at(1, 1) = std::exp(i * (a / 2));
            return m;
        }
        case GateKind::CNOT: {
            UnitaryMatrix m(4);
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            m.at(2, 3) = 1.0;
            m.at(3, 2) = 1.0;
            return m;
        }
        case GateKind::CP: {
            UnitaryMatrix m = UnitaryMatrix::identity(4);
            m.at(3, 3) = std::exp(i * a);
            return m;
        }
        case GateKind::CRz: {
            UnitaryMatrix m = UnitaryMatrix::identity(4);
            m.at(2, 2) = std::exp(-i * (a / 2));
            m.at(3, 3) = std::exp(i * (a / 2));
            return m;
        }
        case GateKind::CRy: {
            UnitaryMatrix m = UnitaryMatrix::identity(4);
            m.at(2, 2) = std::cos(a / 2);
            m.at(2, 3) = -std::sin(a / 2);
            m.at(3, 2) = std::sin(a / 2);
            m.at(3, 3) = std::cos(a / 2);
            return m;
        }
        case GateKind::SWAP: {
            UnitaryMatrix m(4);
            m.at(0, 0) = 1.0;
            m.at(1, 2) = 1.0;
            m.at(2, 1) = 1.0;
            m.at(3, 3) = 1.0;
            return m;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

void apply_gate(Statevector& sv, const Gate& g) {
    const unsigned n = sv.n_qubits();
    if (!g.is_two_qubit()) {
        const UnitaryMatrix m = gate_matrix(g);
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - g.qs[0]);
        for (std::uint64_t idx = 0; idx < sv.dim(); ++idx) {
            if (idx & bit) continue;
            const Complex a0 = sv[idx];
            const Complex a1 = sv[idx | bit];
            sv[idx] = m.at(0, 0) * a0 + m.at(0, 1) * a1;
            sv[idx | bit] = m.at(1, 0) * a0 + m.at(1, 1) * a1;
        }
        return;
    }
    const UnitaryMatrix m = gate_matrix(g);
    const std::uint64_t cbit = std::uint64_t{1} << (n - 1 - g.qs[0]);
    const std::uint64_t tbit = std::uint64_t{1} << (n - 1 - g.qs[1]);
    for (std::uint64_t idx = 0; idx < sv.dim(); ++idx) {
        if ((idx & cbit) || (idx & tbit)) continue;
        const std::uint64_t i00 = idx, i01 = idx | tbit, i10 = idx | cbit, i11 = idx | cbit | tbit;
        const Complex a00 = sv[i00], a01 = sv[i01], a10 = sv[i10], a11 = sv[i11];
        sv[i00] = m.at(0, 0) * a00 + m.at(0, 1) * a01 + m.at(0, 2) * a10 + m.at(0, 3) * a11;
        sv[i01] = m.at(1, 0) * a00 + m.at(1, 1) * a01 + m.at(1, 2) * a10 + m.at(1, 3) * a11;
        sv[i10] = m.at(2, 0) * a00 + m.at(2, 1) * a01 + m.at(2, 2) * a10 + m.at(2, 3) * a11;
        sv[i11] = m.at(3, 0) * a00 + m.at(3, 1) * a01 + m.at(3, 2) * a10 + m.at(3, 3) * a11;
    }
}

Statevector apply_circuit(const Statevector& sv, const Circuit& c) {
    require_valid(c);
    if (sv.n_qubits() != c.n_qubits())
        throw std::invalid_argument("statevector/circuit dimension mismatch");
    Statevector out = sv;
    for (const Gate& g : c.gates()) apply_gate(out, g);
    const Complex phase = std::exp(Complex{0.0, 1.0} * c.global_phase());
    for (std::uint64_t i = 0; i < out.dim(); ++i) out[i] *= phase;
    return out;
}

UnitaryMatrix circuit_unitary(const Circuit& c) {
    if (c.n_qubits() > kMaxUnitaryQubits)
        throw std::invalid_argument("circuit_unitary: capacity is " +
                                    std::to_string(kMaxUnitaryQubits) +
                                    " qubits, got " + std::to_string(c.n_qubits()));
    require_valid(c);
    const std::uint64_t dim = std::uint64_t{1} << c.n_qubits();
    UnitaryMatrix u(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        Statevector col = apply_circuit(Statevector::basis_state(c.n_qubits(), k), c);
        for (std::uint64_t r = 0; r < dim; ++r) u.at(r, k) = col[r];
    }
    return u;
}

UnitaryMatrix qft_matrix(unsigned n) {
    if (n == 0 || n > kMaxUnitaryQubits)
        throw std::invalid_argument("qft_matrix: n out of range [1, " +
                                    std::to_string(kMaxUnitaryQubits) + "]");
    const std::uint64_t dim = std::uint64_t{1} << n;
    UnitaryMatrix m(dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t j = 0; j < dim; ++j)
        for (std::uint64_t k = 0; k < dim; ++k) {
            // exponent j*k mod 2^n keeps the argument small and exact
            const std::uint64_t e = (j * k) & (dim - 1);
            const double arg = 2.0 * kPi * static_cast<double>(e) / static_cast<double>(dim);
            m.at(j, k) = Complex{std::cos(arg), std::sin(arg)} * scale;
        }
    return m;
}

Statevector qft_reference_apply(const Statevector& sv) {
    // Decimation-in-time transform of the amplitude vector:
    // out[j] = sum_k omega^{jk} in[k] / sqrt(dim).
    const std::uint64_t dim = sv.dim();
    std::vector<Complex> a(sv.amplitudes());
    // bit-reversal permutation of positions
    for (std::uint64_t i = 0, j = 0; i < dim; ++i) {
        if (i < j) std::swap(a[i], a[j]);
        std::uint64_t m = dim >> 1;
        while (m >= 1 && (j & m)) {
            j ^= m;
            m >>= 1;
        }
        j |= m;
    }
    for (std::uint64_t len = 2; len <= dim; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len);
        const Complex wlen{std::cos(ang), std::sin(ang)};
        for (std::uint64_t i = 0; i < dim; i += len) {
            Complex w{1.0, 0.0};
            for (std::uint64_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    Statevector out(sv.n_qubits());
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) out[i] = a[i] * scale;
    return out;
}

double fidelity_up_to_phase(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    Complex t{};
    for (std::size_t r = 0; r < u.dim(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) t += std::conj(u.at(r, c)) * v.at(r, c);
    return std::abs(t) / static_cast<double>(u.dim());
}

UnitaryMatrix permutation_matrix(const Permutation& perm) {
    if (!perm.is_valid()) throw std::invalid_argument("invalid permutation");
    const unsigned n = perm.size();
    const std::uint64_t dim = std::uint64_t{1} << n;
    UnitaryMatrix m(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t b2 = 0;
        for (unsigned i = 0; i < n; ++i) {
            const std::uint64_t bit = (b >> (n - 1 - perm.map[i])) & 1;
            b2 |= bit << (n - 1 - i);
        }
        m.at(b2, b) = 1.0;
    }
    return m;
}

Statevector permute_state(const Statevector& sv, const Permutation& perm) {
    if (perm.size() != sv.n_qubits())
        throw std::invalid_argument("permutation/state dimension mismatch");
    const unsigned n = sv.n_qubits();
    Statevector out(n);
    for (std::uint64_t b = 0; b < sv.dim(); ++b) {
        std::uint64_t b2 = 0;
        for (unsigned i = 0; i < n; ++i) {
            const std::uint64_t bit = (b >> (n - 1 - perm.map[i])) & 1;
            b2 |= bit << (n - 1 - i);
        }
        out[b2] = sv[b];
    }
    return out;
}

EquivalenceReport permuted_equivalence(const Circuit& c, const UnitaryMatrix& target,
                                       const Permutation& perm, double tol) {
    const UnitaryMatrix u = circuit_unitary(c);
    if (u.dim() != target.dim()) throw std::invalid_argument("equivalence: dimension mismatch");
    const UnitaryMatrix pt = permutation_matrix(perm) * target;
    EquivalenceReport r;
    r.fidelity = fidelity_up_to_phase(u, pt);
    r.tolerance = tol;
    r.passed = r.fidelity >= 1.0 - tol;
    return r;
}

std::string bitstring_of_index(std::uint64_t index, unsigned n_qubits) {
    std::string s(n_qubits, '0');
    for (unsigned q = 0; q < n_qubits; ++q)
        if ((index >> (n_qubits - 1 - q)) & 1) s[q] = '1';
    return s;
}

std::map<std::string, std::uint64_t> sample(const Statevector& sv, std::uint64_t shots,
                                            std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sample: shots must be >= 1");
    std::vector<double> cdf(sv.dim());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < sv.dim(); ++i) {
        acc += std::norm(sv[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::map<std::string, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = canonical(rng) * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
        if (idx >= sv.dim()) idx = sv.dim() - 1;
        ++hist[bitstring_of_index(idx, sv.n_qubits())];
    }
    return hist;
}

}  // namespace nnqft
