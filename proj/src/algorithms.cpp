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

#include "nnqft/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nnqft/qft_synth.hpp"
#include "nnqft/rewrite.hpp"

namespace nnqft {

namespace {

constexpr double kPi = std::numbers::pi;

double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_distribution(const std::vector<double>& probs,
                                               std::uint64_t shots, std::uint64_t seed) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = canonical(rng) * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= probs.size()) idx = probs.size() - 1;
        ++counts[idx];
    }
    return counts;
}

}  // namespace

PhaseFraction PhaseFraction::from_real(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("phase must be finite");
    PhaseFraction p;
    p.value = theta - std::floor(theta);
    return p;
}

PhaseFraction PhaseFraction::from_fraction(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("phase denominator must be positive");
    PhaseFraction p;
    p.is_rational = true;
    num %= den;
    if (num < 0) num += den;
    const long long g = std::gcd(num, den);
    p.num = num / (g == 0 ? 1 : g);
    p.den = den / (g == 0 ? 1 : g);
    p.value = static_cast<double>(p.num) / static_cast<double>(p.den);
    return p;
}

PhaseFraction PhaseFraction::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        char* end = nullptr;
        const long long num = std::strtoll(text.c_str(), &end, 10);
        if (end != text.c_str() + slash) throw std::invalid_argument("bad phase fraction: " + text);
        const char* dstart = text.c_str() + slash + 1;
        const long long den = std::strtoll(dstart, &end, 10);
        if (*end != '\0' || den <= 0) throw std::invalid_argument("bad phase fraction: " + text);
        return from_fraction(num, den);
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::invalid_argument("bad phase value: " + text);
    return from_real(v);
}

bool PhaseFraction::exact_in_bits(unsigned t) const {
    if (!is_rational) {
        const double scaled = value * static_cast<double>(1ULL << t);
        return std::abs(scaled - std::round(scaled)) < 1e-12;
    }
    return ((num << t) % den) == 0;
}

std::uint64_t PhaseFraction::nearest_outcome(unsigned t) const {
    const std::uint64_t size = 1ULL << t;
    const double scaled = value * static_cast<double>(size);
    return static_cast<std::uint64_t>(std::llround(scaled)) % size;
}

std::vector<Gate> build_controlled_power_u(const PhaseFraction& theta, unsigned j,
                                           QubitIndex control, QubitIndex target) {
    double angle;
    if (theta.is_rational) {
        // 2^j mod den by doubling keeps everything in exact integers
        long long pw = 1 % theta.den;
        for (unsigned k = 0; k < j; ++k) pw = (pw * 2) % theta.den;
        const long long m = (theta.num * pw) % theta.den;
        if (m == 0) return {};
        angle = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(theta.den);
    } else {
        double frac = theta.value;
        for (unsigned k = 0; k < j; ++k) frac = frac * 2.0 - std::floor(frac * 2.0);
        angle = 2.0 * kPi * frac;
        if (std::abs(angle) < 1e-12 || std::abs(angle - 2.0 * kPi) < 1e-12) return {};
    }
    return {Gate::cp(control, target, angle)};
}

Circuit build_qpe_circuit(const PhaseFraction& theta, unsigned t, Layout layout) {
    if (t < 1 || t > 8)
        throw std::invalid_argument("build_qpe_circuit: t must be in [1, 8], got " +
                                    std::to_string(t));
    const unsigned n = t + 1;

    Circuit prep(n);
    prep.add(Gate::x(t));
    for (unsigned j = 0; j < t; ++j) prep.add(Gate::h(j));

    Circuit powers(n);
    for (unsigned j = 0; j < t; ++j)
        powers.add(build_controlled_power_u(theta, j, j, t));

    Circuit iqft_embedded(n);
    const Circuit iqft =
        invert(layout == Layout::Lnn ? build_lnn_qft_optimized(t) : build_standard_qft(t));
    iqft_embedded.add(iqft.gates());
    iqft_embedded.set_global_phase(iqft.global_phase());

    Circuit c = compose(prep, layout == Layout::Lnn ? route_to_lnn(powers) : powers);
    c = compose(c, iqft_embedded);
    // the routed powers return every control to its wire, so the circuit as a
    // whole performs no relabeling
    c.set_output_permutation(Permutation::identity(n));
    return c;
}

Circuit route_to_lnn(const Circuit& c) {
    require_valid(c);
    const unsigned n = c.n_qubits();
    std::vector<unsigned> at_wire(n);   // wire -> logical
    std::vector<unsigned> wire_of(n);   // logical -> wire
    std::iota(at_wire.begin(), at_wire.end(), 0u);
    std::iota(wire_of.begin(), wire_of.end(), 0u);

    Circuit out(n);
    auto swap_wires = [&](unsigned w) {  // swaps wires w, w+1
        out.add(Gate::swap(w, w + 1));
        std::swap(at_wire[w], at_wire[w + 1]);
        wire_of[at_wire[w]] = w;
        wire_of[at_wire[w + 1]] = w + 1;
    };

    for (const Gate& g : c.gates()) {
        if (!g.is_two_qubit()) {
            Gate moved = g;
            moved.qs[0] = wire_of[g.qs[0]];
            out.add(moved);
            continue;
        }
        unsigned cw = wire_of[g.qs[0]];
        const unsigned tw0 = wire_of[g.qs[1]];
        while (cw + 1 < tw0 || (tw0 + 1 < cw)) {
            if (cw < tw0) {
                swap_wires(cw);
                ++cw;
            } else {
                swap_wires(cw - 1);
                --cw;
            }
        }
        Gate moved = g;
        moved.qs[0] = cw;
        moved.qs[1] = wire_of[g.qs[1]];
        out.add(moved);
    }

    out.set_global_phase(c.global_phase());
    Permutation layout{at_wire};
    out.set_output_permutation(compose_permutations(layout, c.output_permutation()));
    return out;
}

QPEResult run_qpe(const PhaseFraction& theta, unsigned t, std::uint64_t shots, std::uint64_t seed,
                  Layout layout) {
    if (shots == 0) throw std::invalid_argument("run_qpe: shots must be >= 1");
    const Circuit c = build_qpe_circuit(theta, t, layout);
    const Statevector sv = apply_circuit(Statevector::basis_state(c.n_qubits(), 0), c);

    const std::uint64_t size = 1ULL << t;
    std::vector<double> probs(size, 0.0);
    for (std::uint64_t idx = 0; idx < sv.dim(); ++idx)
        probs[idx >> 1] += std::norm(sv[idx]);  // marginalize the eigenstate wire

    const auto counts = sample_distribution(probs, shots, seed);
    QPEResult res;
    std::uint64_t best_count = 0;
    for (std::uint64_t y = 0; y < size; ++y) {
        if (counts[y] == 0) continue;
        res.histogram[bitstring_of_index(y, t)] = counts[y];
        if (counts[y] > best_count) {
            best_count = counts[y];
            res.best_outcome = y;
        }
    }
    const std::uint64_t want = theta.nearest_outcome(t);
    res.success_rate = static_cast<double>(counts[want]) / static_cast<double>(shots);
    return res;
}

Circuit build_a_operator(const AOperatorSpec& spec) {
    if (spec.n > 6)
        throw std::invalid_argument("build_a_operator: x register capped at 6 qubits");
    if (spec.theta_linear.size() != spec.n)
        throw std::invalid_argument("build_a_operator: need one linear angle per x qubit");
    Circuit c(spec.n + 1);
    for (unsigned k = 0; k < spec.n; ++k) c.add(Gate::h(k));
    c.add(Gate::ry(spec.n, spec.theta_const));
    for (unsigned k = 0; k < spec.n; ++k) c.add(Gate::cry(k, spec.n, spec.theta_linear[k]));
    return c;
}

double a_exact(const AOperatorSpec& spec) {
    const std::uint64_t size = 1ULL << spec.n;
    double acc = 0.0;
    for (std::uint64_t x = 0; x < size; ++x) {
        double theta = spec.theta_const;
        for (unsigned k = 0; k < spec.n; ++k)
            if ((x >> k) & 1) theta += spec.theta_linear[k];
        const double s = std::sin(theta / 2.0);
        acc += s * s;
    }
    return acc / static_cast<double>(size);
}

double measured_good_amplitude(const Circuit& a_circuit) {
    const Statevector sv =
        apply_circuit(Statevector::basis_state(a_circuit.n_qubits(), 0), a_circuit);
    double p1 = 0.0;
    for (std::uint64_t idx = 1; idx < sv.dim(); idx += 2) p1 += std::norm(sv[idx]);
    return p1;
}

Circuit convert_cry_chain_to_lnn(const Circuit& c) {
    require_valid(c);
    const unsigned n = c.n_qubits();
    if (n < 2) throw std::invalid_argument("chain conversion needs at least two qubits");
    const QubitIndex t = n - 1;

    std::vector<Gate> hs;
    double target_rotation = 0.0;          // Ry angles plus shared halves of the chain
    std::vector<double> control_angle(t, 0.0);
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::H && g.qs[0] != t) {
            hs.push_back(g);
        } else if (g.kind == GateKind::Ry && g.qs[0] == t) {
            target_rotation += g.angle;
        } else if (g.kind == GateKind::CRy && g.qs[1] == t && g.qs[0] < t) {
            control_angle[g.qs[0]] += g.angle;
            target_rotation += g.angle / 2.0;
        } else {
            throw std::invalid_argument(
                "not a shared-target controlled-Ry chain; offending gate: " + g.str());
        }
    }

    // z-conjugated chain: one Rx pair around the whole fan, then the fan in
    // two-CNOT form with the shared wire's rotations merged in front
    Circuit staged(n);
    staged.add(hs);
    staged.add(Gate::rx(t, kPi / 2.0));
    const std::size_t fan_site = staged.size();
    staged.add(Gate::rz(t, target_rotation));
    for (QubitIndex i = t; i-- > 0;) {
        staged.add(Gate::cnot(t, i));
        staged.add(Gate::rz(i, -control_angle[i] / 2.0));
        staged.add(Gate::cnot(t, i));
    }

    auto [rewritten, matched] = apply_fan_identity(staged, fan_site);
    if (t >= 2 && !matched)
        throw std::logic_error("fan identity failed to match the staged chain");
    rewritten.add(Gate::rx(t, -kPi / 2.0));
    return simplify(rewritten);
}

GroverOperator build_grover_operator(const Circuit& a_circuit) {
    if (a_circuit.n_qubits() > 6)
        throw std::invalid_argument("build_grover_operator: capped at 6 qubits");
    const std::uint64_t dim = std::uint64_t{1} << a_circuit.n_qubits();
    const UnitaryMatrix ua = circuit_unitary(a_circuit);

    UnitaryMatrix s0 = UnitaryMatrix::identity(dim);
    s0.at(0, 0) = -1.0;
    UnitaryMatrix schi = UnitaryMatrix::identity(dim);
    for (std::uint64_t i = 1; i < dim; i += 2) schi.at(i, i) = -1.0;

    UnitaryMatrix q = ua * s0 * ua.adjoint() * schi;
    for (std::uint64_t r = 0; r < dim; ++r)
        for (std::uint64_t col = 0; col < dim; ++col) q.at(r, col) = -q.at(r, col);

    GroverOperator op;
    op.matrix = std::move(q);
    op.a = measured_good_amplitude(a_circuit);
    op.theta_a = std::asin(std::sqrt(std::clamp(op.a, 0.0, 1.0)));
    return op;
}

std::vector<double> grover_invariant_eigenphases(const GroverOperator& op,
                                                 const Circuit& a_circuit) {
    const std::uint64_t dim = op.matrix.dim();
    const Statevector psi = apply_circuit(Statevector::basis_state(a_circuit.n_qubits(), 0),
                                          a_circuit);
    std::vector<Complex> v1(dim), v2(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        v1[i] = psi[i];
        v2[i] = (i & 1) ? -psi[i] : psi[i];  // S_chi applied to A|0>
    }

    auto dot = [dim](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        Complex s{};
        for (std::uint64_t i = 0; i < dim; ++i) s += std::conj(a[i]) * b[i];
        return s;
    };
    auto matvec = [&](const std::vector<Complex>& v) {
        std::vector<Complex> out(dim, Complex{});
        for (std::uint64_t r = 0; r < dim; ++r) {
            Complex s{};
            for (std::uint64_t cidx = 0; cidx < dim; ++cidx) s += op.matrix.at(r, cidx) * v[cidx];
            out[r] = s;
        }
        return out;
    };

    // orthonormal basis of the invariant span
    std::vector<std::vector<Complex>> basis;
    basis.push_back(v1);
    Complex overlap = dot(v1, v2);
    std::vector<Complex> w(dim);
    double wn = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        w[i] = v2[i] - overlap * v1[i];
        wn += std::norm(w[i]);
    }
    wn = std::sqrt(wn);
    if (wn > 1e-9) {
        for (auto& x : w) x /= wn;
        basis.push_back(w);
    }

    const std::size_t k = basis.size();
    std::vector<Complex> r(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto qb = matvec(basis[i]);
        for (std::size_t j = 0; j < k; ++j) r[j * k + i] = dot(basis[j], qb);
    }

    std::vector<double> phases;
    if (k == 1) {
        phases.push_back(std::arg(r[0]));
        return phases;
    }
    // eigenvalues of the 2x2 restriction
    const Complex tr = r[0] + r[3];
    const Complex det = r[0] * r[3] - r[1] * r[2];
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    phases.push_back(std::arg((tr + disc) / 2.0));
    phases.push_back(std::arg((tr - disc) / 2.0));
    std::sort(phases.begin(), phases.end());
    return phases;
}

QAEResult run_qae(const AOperatorSpec& spec, unsigned m_bits, std::uint64_t shots,
                  std::uint64_t seed) {
    if (m_bits < 1 || m_bits > 6)
        throw std::invalid_argument("run_qae: M must be in [1, 6]");
    if (spec.n > 3) throw std::invalid_argument("run_qae: x register capped at 3 qubits");
    if (shots == 0) throw std::invalid_argument("run_qae: shots must be >= 1");

    const Circuit a_circuit = build_a_operator(spec);
    const GroverOperator op = build_grover_operator(a_circuit);
    const unsigned sys_qubits = a_circuit.n_qubits();
    const std::uint64_t sys_dim = std::uint64_t{1} << sys_qubits;
    const unsigned total = m_bits + sys_qubits;

    // result register on top (qubits 0..M-1), system on the low bits
    Statevector psi = Statevector::basis_state(total, 0);
    for (unsigned j = 0; j < m_bits; ++j) apply_gate(psi, Gate::h(j));
    for (const Gate& g : a_circuit.gates()) {
        Gate shifted = g;
        shifted.qs[0] += m_bits;
        if (g.is_two_qubit()) shifted.qs[1] += m_bits;
        apply_gate(psi, shifted);
    }

    // controlled powers Q^(2^j), result qubit j carrying weight 2^j
    UnitaryMatrix qpow = op.matrix;
    for (unsigned j = 0; j < m_bits; ++j) {
        if (j > 0) qpow = qpow * qpow;
        const std::uint64_t jbit = std::uint64_t{1} << (total - 1 - j);
        std::vector<Complex> block(sys_dim);
        for (std::uint64_t base = 0; base < psi.dim(); base += sys_dim) {
            if (!(base & jbit)) continue;
            for (std::uint64_t s = 0; s < sys_dim; ++s) block[s] = psi[base + s];
            for (std::uint64_t rr = 0; rr < sys_dim; ++rr) {
                Complex acc{};
                for (std::uint64_t cc = 0; cc < sys_dim; ++cc)
                    acc += qpow.at(rr, cc) * block[cc];
                psi[base + rr] = acc;
            }
        }
    }

    // inverse transform on the result register
    const UnitaryMatrix w =
        (permutation_matrix(Permutation::reversal(m_bits)) * qft_matrix(m_bits)).adjoint();
    const std::uint64_t reg_dim = std::uint64_t{1} << m_bits;
    std::vector<Complex> reg(reg_dim);
    for (std::uint64_t s = 0; s < sys_dim; ++s) {
        for (std::uint64_t h = 0; h < reg_dim; ++h) reg[h] = psi[h * sys_dim + s];
        for (std::uint64_t rr = 0; rr < reg_dim; ++rr) {
            Complex acc{};
            for (std::uint64_t cc = 0; cc < reg_dim; ++cc) acc += w.at(rr, cc) * reg[cc];
            psi[rr * sys_dim + s] = acc;
        }
    }

    std::vector<double> probs(reg_dim, 0.0);
    for (std::uint64_t idx = 0; idx < psi.dim(); ++idx) probs[idx / sys_dim] += std::norm(psi[idx]);

    const auto counts = sample_distribution(probs, shots, seed);
    QAEResult res;
    res.m_bits = m_bits;
    std::uint64_t best_count = 0;
    for (std::uint64_t y = 0; y < reg_dim; ++y) {
        if (counts[y] == 0) continue;
        res.histogram[bitstring_of_index(y, m_bits)] = counts[y];
        if (counts[y] > best_count) {
            best_count = counts[y];
            res.y = y;
        }
    }
    const double s = std::sin(kPi * static_cast<double>(res.y) / static_cast<double>(reg_dim));
    res.a_hat = s * s;
    return res;
}

}  // namespace nnqft
