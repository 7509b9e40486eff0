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

#include "nnqft/qft_synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nnqft/rewrite.hpp"

namespace nnqft {

namespace {

constexpr double kPi = std::numbers::pi;

// interaction angle between wires at chain distance d
double phase_angle(unsigned d) { return kPi / static_cast<double>(1ULL << d); }

void check_range(unsigned n, unsigned lo, unsigned hi, const char* what) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + ": n must be in [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "], got " + std::to_string(n));
}

double pair_phase_ledger(unsigned n) {
    double s = 0.0;
    for (unsigned d = 1; d < n; ++d) s += static_cast<double>(n - d) * phase_angle(d) / 4.0;
    return s;
}

}  // namespace

Circuit build_standard_qft(unsigned n) {
    check_range(n, 1, 20, "build_standard_qft");
    Circuit c(n);
    for (unsigned i = 0; i < n; ++i) {
        c.add(Gate::h(i));
        for (unsigned j = i + 1; j < n; ++j) c.add(Gate::cp(j, i, phase_angle(j - i)));
    }
    c.set_output_permutation(Permutation::reversal(n));
    return c;
}

Circuit build_decomposed_qft(unsigned n) {
    check_range(n, 2, kMaxUnitaryQubits, "build_decomposed_qft");
    Circuit c(n);

    // merged single-wire rotation collected by wire i from fans it joins later
    auto later_rotation = [&](unsigned i) {
        double s = 0.0;
        for (unsigned j = i + 1; j < n; ++j) s += phase_angle(j - i) / 2.0;
        return s;
    };

    c.add(Gate::h(0));
    c.add(Gate::rz(0, later_rotation(0)));
    for (unsigned j = 1; j < n; ++j) {
        double shared = 0.0;
        for (unsigned d = 1; d <= j; ++d) shared += phase_angle(d) / 2.0;
        c.add(Gate::rz(j, shared));
        for (unsigned i = j; i-- > 0;) {
            c.add(Gate::cnot(j, i));
            c.add(Gate::rz(i, -phase_angle(j - i) / 2.0));
            c.add(Gate::cnot(j, i));
        }
        c.add(Gate::h(j));
        if (j + 1 < n) c.add(Gate::rz(j, later_rotation(j)));
    }

    c.set_global_phase(pair_phase_ledger(n));
    c.set_output_permutation(Permutation::reversal(n));
    return c;
}

Circuit build_lnn_qft_baseline(unsigned n) {
    check_range(n, 2, kMaxUnitaryQubits, "build_lnn_qft_baseline");
    Circuit c(n);
    // logical qubit processed at the top walks to the bottom through adjacent
    // CP + SWAP blocks; every remaining qubit shifts up one wire per round,
    // so the next processed qubit is again at wire 0
    for (unsigned round = 0; round < n; ++round) {
        c.add(Gate::h(0));
        for (unsigned k = 0; k + 1 < n - round; ++k) {
            c.add(Gate::cp(k + 1, k, phase_angle(k + 1)));
            c.add(Gate::swap(k, k + 1));
        }
    }
    c.set_output_permutation(Permutation::identity(n));
    return c;
}

Circuit build_lnn_qft_optimized(unsigned n) {
    check_range(n, 2, kMaxUnitaryQubits, "build_lnn_qft_optimized");
    Circuit c(n);

    auto later_rotation = [&](unsigned i) {
        double s = 0.0;
        for (unsigned j = i + 1; j < n; ++j) s += phase_angle(j - i) / 2.0;
        return s;
    };

    c.add(Gate::h(0));
    c.add(Gate::rz(0, later_rotation(0)));
    for (unsigned j = 1; j < n; ++j) {
        double shared = 0.0;
        for (unsigned d = 1; d <= j; ++d) shared += phase_angle(d) / 2.0;
        c.add(Gate::rz(j, shared));
        // parity climb: wire k holds the pair parity with wire j's qubit when
        // its rotation fires
        c.add(Gate::cnot(j, j - 1));
        c.add(Gate::rz(j - 1, -phase_angle(1) / 2.0));
        for (unsigned k = j - 1; k-- > 0;) {
            c.add(Gate::cnot(k + 1, k));
            c.add(Gate::rz(k, -phase_angle(j - k) / 2.0));
        }
        // reverse climb restores the difference basis below wire j
        for (unsigned k = 0; k < j; ++k) c.add(Gate::cnot(k + 1, k));
        c.add(Gate::h(j));
        if (j + 1 < n) {
            c.add(Gate::rz(j, later_rotation(j)));
            c.add(Gate::cnot(j, j - 1));  // extend the difference chain
        }
    }
    // unwind the difference chain bottom-up
    for (unsigned k = n - 2; k-- > 0;) c.add(Gate::cnot(k + 1, k));

    c.set_global_phase(pair_phase_ledger(n));
    c.set_output_permutation(Permutation::reversal(n));
    return c;
}

std::vector<Table1Row> table1_report() {
    static const std::optional<int> kRef15[] = {31, 48, 105, 124, 192, 240};
    static const std::optional<int> kRef16[] = {std::nullopt, std::nullopt, 75, 121, 165, 225};

    std::vector<Table1Row> rows;
    for (unsigned n = 5; n <= 10; ++n) {
        Table1Row row;
        row.n = n;
        row.ours = count_gates(build_lnn_qft_optimized(n)).cnot_total;
        row.ref17 =
            count_gates(decompose_swap_all(decompose_cp_all(build_lnn_qft_baseline(n)))).cnot_total;
        row.ref15 = kRef15[n - 5];
        row.ref16 = kRef16[n - 5];
        std::size_t best = row.ref17;
        if (row.ref15) best = std::min(best, static_cast<std::size_t>(*row.ref15));
        if (row.ref16) best = std::min(best, static_cast<std::size_t>(*row.ref16));
        row.improvement_pct =
            100.0 * (1.0 - static_cast<double>(row.ours) / static_cast<double>(best));
        rows.push_back(row);
    }
    return rows;
}

std::string render_table1_text(const std::vector<Table1Row>& rows) {
    std::ostringstream os;
    char buf[128];
    os << "  n    ours   swap-cascade   prior-a   prior-b   improvement\n";
    for (const Table1Row& r : rows) {
        std::snprintf(buf, sizeof buf, "%3u %7zu %14zu %9s %9s %10.2f%%\n", r.n, r.ours, r.ref17,
                      r.ref15 ? std::to_string(*r.ref15).c_str() : "-",
                      r.ref16 ? std::to_string(*r.ref16).c_str() : "-", r.improvement_pct);
        os << buf;
    }
    return os.str();
}

std::string render_table1_records(const std::vector<Table1Row>& rows) {
    std::ostringstream os;
    char buf[160];
    for (const Table1Row& r : rows) {
        std::snprintf(buf, sizeof buf, "n=%u ours=%zu ref17=%zu ref15=%s ref16=%s improvement_pct=%.4f\n",
                      r.n, r.ours, r.ref17, r.ref15 ? std::to_string(*r.ref15).c_str() : "-",
                      r.ref16 ? std::to_string(*r.ref16).c_str() : "-", r.improvement_pct);
        os << buf;
    }
    return os.str();
}

std::optional<Permutation> find_output_permutation(const Circuit& c, const UnitaryMatrix& target,
                                                   double tol) {
    if (c.n_qubits() > 6)
        throw std::invalid_argument("find_output_permutation: exhaustive search capped at 6 qubits");
    const UnitaryMatrix u = circuit_unitary(c);
    std::vector<unsigned> map(c.n_qubits());
    std::iota(map.begin(), map.end(), 0u);
    std::optional<Permutation> best;
    double best_fid = -1.0;
    do {
        Permutation p{map};
        const double fid = fidelity_up_to_phase(u, permutation_matrix(p) * target);
        if (fid > best_fid) {
            best_fid = fid;
            best = p;
        }
    } while (std::next_permutation(map.begin(), map.end()));
    if (best_fid >= 1.0 - tol) return best;
    return std::nullopt;
}

}  // namespace nnqft
