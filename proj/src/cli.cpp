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

#include "nnqft/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nnqft/algorithms.hpp"
#include "nnqft/circuit.hpp"
#include "nnqft/format.hpp"
#include "nnqft/qft_synth.hpp"
#include "nnqft/simulator.hpp"

namespace nnqft::cli {

namespace {

constexpr double kEquivalenceTol = 1e-9;
constexpr double kAmplitudeTol = 1e-8;

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return false;
    os << content;
    return static_cast<bool>(os);
}

Statevector random_state(unsigned n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    Statevector sv(n);
    double norm2 = 0.0;
    for (std::uint64_t i = 0; i < sv.dim(); ++i) {
        sv[i] = Complex{draw(), draw()};
        norm2 += std::norm(sv[i]);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (std::uint64_t i = 0; i < sv.dim(); ++i) sv[i] *= scale;
    return sv;
}

/// Per-amplitude check of the circuit against the reference transform under
/// the declared relabeling; exact up to the ledger, so no phase slack needed.
bool statevector_equivalent(const Circuit& c, double tol, unsigned trials) {
    for (unsigned trial = 0; trial < trials; ++trial) {
        const Statevector in = random_state(c.n_qubits(), 0xC0FFEE + trial);
        const Statevector got = apply_circuit(in, c);
        const Statevector want = permute_state(qft_reference_apply(in), c.output_permutation());
        for (std::uint64_t i = 0; i < got.dim(); ++i)
            if (std::abs(got[i] - want[i]) > tol) return false;
    }
    return true;
}

bool verify_qft_circuit(const Circuit& c, double& fidelity_out) {
    if (c.n_qubits() <= 8) {
        const auto rep = permuted_equivalence(c, qft_matrix(c.n_qubits()),
                                              c.output_permutation(), kEquivalenceTol);
        fidelity_out = rep.fidelity;
        return rep.passed;
    }
    fidelity_out = -1.0;  // statevector mode reports pass/fail only
    return statevector_equivalent(c, kAmplitudeTol, 3);
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

CommandOutcome cmd_synth(unsigned n, const std::string& family, const std::string& out_path) {
    Circuit c(1);
    try {
        if (family == "standard") {
            c = build_standard_qft(n);
        } else if (family == "decomposed") {
            c = build_decomposed_qft(n);
        } else if (family == "lnn-baseline") {
            c = build_lnn_qft_baseline(n);
        } else if (family == "lnn-optimized") {
            c = build_lnn_qft_optimized(n);
        } else {
            std::cerr << "unknown family: " << family << "\n";
            return {2};
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return {2};
    }

    double fid = 0.0;
    if (!verify_qft_circuit(c, fid)) {
        std::cerr << "post-build verification failed (fidelity "
                  << (fid >= 0 ? format_double(fid) : std::string("n/a")) << ")\n";
        return {1};
    }

    if (!write_file(out_path, serialize(c))) {
        std::cerr << "cannot write " << out_path << "\n";
        return {2};
    }

    const GateCountReport rep = count_gates(c);
    std::cout << "family: " << family << ", n: " << n << "\n";
    std::cout << rep.str() << "\n";
    std::cout << "CNOT: " << rep.cnot_total << "\n";
    std::cout << "nearest-neighbor: " << (is_nearest_neighbor(c) ? "yes" : "no") << "\n";
    std::cout << "wrote " << out_path << "\n";
    return {0};
}

CommandOutcome cmd_verify(const std::string& circuit_path, const std::string& perm_mode) {
    std::ifstream is(circuit_path, std::ios::binary);
    if (!is) {
        std::cerr << "cannot open " << circuit_path << "\n";
        return {2};
    }
    std::stringstream buffer;
    buffer << is.rdbuf();

    Circuit c(1);
    try {
        c = parse_circuit(buffer.str());
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return {2};
    }
    const unsigned n = c.n_qubits();

    Permutation perm = c.output_permutation();
    if (perm_mode == "search") {
        if (n > 6) {
            std::cerr << "permutation search is capped at 6 qubits\n";
            return {2};
        }
        auto found = find_output_permutation(c, qft_matrix(n), kEquivalenceTol);
        if (!found) {
            std::cout << "fidelity: no permutation reaches the tolerance\n";
            std::cout << "LNN: " << (is_nearest_neighbor(c) ? "yes" : "no") << "\n";
            return {1};
        }
        perm = *found;
        std::cout << "declared permutation found by search:";
        for (unsigned v : perm.map) std::cout << " " << v;
        std::cout << "\n";
    } else if (perm_mode != "explicit") {
        std::cerr << "perm mode must be 'explicit' or 'search'\n";
        return {2};
    }

    bool passed;
    if (n <= 8) {
        const auto rep = permuted_equivalence(c, qft_matrix(n), perm, kEquivalenceTol);
        std::cout << "fidelity: " << format_double(rep.fidelity) << "\n";
        passed = rep.passed;
    } else {
        Circuit declared = c;
        declared.set_output_permutation(perm);
        passed = statevector_equivalent(declared, kAmplitudeTol, 20);
        std::cout << "statevector check (" << (passed ? "20/20" : "failed") << " seeds)\n";
    }
    std::cout << "LNN: " << (is_nearest_neighbor(c) ? "yes" : "no") << "\n";
    return {passed ? 0 : 1};
}

CommandOutcome cmd_report(const std::string& records_path, bool inject_error) {
    const std::vector<Table1Row> rows = table1_report();

    struct Expected {
        std::size_t ours, ref17;
        double improvement;
    };
    std::vector<Expected> expected = {{26, 50, 16.13},  {38, 75, 20.83},   {52, 105, 30.67},
                                      {68, 140, 43.80}, {86, 180, 47.88},  {106, 225, 52.89}};
    if (inject_error) expected[2].ours = 53;  // harness sanity path

    std::cout << render_table1_text(rows);

    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& e = expected[i];
        if (r.ours != e.ours) {
            std::cerr << "mismatch at n=" << r.n << ": ours=" << r.ours << " expected=" << e.ours
                      << "\n";
            ok = false;
        }
        if (r.ref17 != e.ref17) {
            std::cerr << "mismatch at n=" << r.n << ": ref17=" << r.ref17
                      << " expected=" << e.ref17 << "\n";
            ok = false;
        }
        if (std::abs(r.improvement_pct - e.improvement) > 0.01) {
            std::cerr << "mismatch at n=" << r.n << ": improvement=" << r.improvement_pct
                      << " expected=" << e.improvement << "\n";
            ok = false;
        }
    }

    if (!records_path.empty() && !write_file(records_path, render_table1_records(rows))) {
        std::cerr << "cannot write " << records_path << "\n";
        return {2};
    }
    return {ok ? 0 : 1};
}

CommandOutcome cmd_qpe(const std::string& theta, unsigned t, std::uint64_t shots,
                       std::uint64_t seed, const std::string& layout,
                       const std::string& out_path) {
    PhaseFraction phase;
    Layout lay;
    try {
        phase = PhaseFraction::parse(theta);
        if (layout == "lnn")
            lay = Layout::Lnn;
        else if (layout == "all2all")
            lay = Layout::All2All;
        else
            throw std::invalid_argument("layout must be 'lnn' or 'all2all'");
        if (t < 1 || t > 8) throw std::invalid_argument("t must be in [1, 8]");
        if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return {2};
    }

    const QPEResult res = run_qpe(phase, t, shots, seed, lay);

    std::ostringstream os;
    os << "theta " << theta << "\n";
    os << "t " << t << "\n";
    os << "layout " << layout << "\n";
    os << "shots " << shots << "\n";
    os << "seed " << seed << "\n";
    for (const auto& [bits, count] : res.histogram) os << "outcome " << bits << " " << count << "\n";
    os << "best_outcome " << bitstring_of_index(res.best_outcome, t) << "\n";
    os << "success_rate " << format_double(res.success_rate) << "\n";
    const std::string text = os.str();

    std::cout << text;
    if (!out_path.empty() && !write_file(out_path, text)) {
        std::cerr << "cannot write " << out_path << "\n";
        return {2};
    }
    return {0};
}

CommandOutcome cmd_qae(double theta_const, const std::vector<double>& theta_linear,
                       unsigned m_bits, std::uint64_t shots, std::uint64_t seed,
                       const std::string& out_path) {
    AOperatorSpec spec;
    spec.n = static_cast<unsigned>(theta_linear.size());
    spec.theta_const = theta_const;
    spec.theta_linear = theta_linear;

    QAEResult res;
    try {
        res = run_qae(spec, m_bits, shots, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return {2};
    }

    std::ostringstream os;
    os << "theta_const " << format_double(theta_const) << "\n";
    os << "theta_linear";
    for (double v : theta_linear) os << " " << format_double(v);
    os << "\n";
    os << "M " << m_bits << "\n";
    os << "shots " << shots << "\n";
    os << "seed " << seed << "\n";
    for (const auto& [bits, count] : res.histogram) os << "outcome " << bits << " " << count << "\n";
    os << "best_y " << res.y << "\n";
    os << "a_hat " << format_double(res.a_hat) << "\n";
    os << "a_exact " << format_double(a_exact(spec)) << "\n";
    const std::string text = os.str();

    std::cout << text;
    if (!out_path.empty() && !write_file(out_path, text)) {
        std::cerr << "cannot write " << out_path << "\n";
        return {2};
    }
    return {0};
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"nearest-neighbor transform synthesis toolkit"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "build a transform circuit and write it to a file");
    unsigned synth_n = 5;
    std::string synth_family = "lnn-optimized";
    std::string synth_out = "circuit.txt";
    synth->add_option("--n", synth_n, "register size")->required();
    synth->add_option("--family", synth_family,
                      "standard | decomposed | lnn-baseline | lnn-optimized");
    synth->add_option("--out", synth_out, "output circuit file");

    auto* verify = app.add_subcommand("verify", "check a circuit file against the reference");
    std::string verify_file;
    std::string verify_perm = "explicit";
    verify->add_option("file", verify_file, "circuit file")->required();
    verify->add_option("--perm", verify_perm, "explicit | search");

    auto* report = app.add_subcommand("report", "print the CNOT-count comparison table");
    std::string report_out = "table_records.txt";
    bool report_inject = false;
    report->add_option("--records", report_out, "records output file");
    report->add_flag("--inject-error", report_inject)->group("");  // test hook

    auto* qpe = app.add_subcommand("qpe", "run noiseless phase estimation");
    std::string qpe_theta = "1/8";
    unsigned qpe_t = 3;
    std::uint64_t qpe_shots = 1000, qpe_seed = 1;
    std::string qpe_layout = "lnn";
    std::string qpe_out = "qpe_result.txt";
    qpe->add_option("--theta", qpe_theta, "phase as p/q or decimal")->required();
    qpe->add_option("--t", qpe_t, "result bits");
    qpe->add_option("--shots", qpe_shots);
    qpe->add_option("--seed", qpe_seed);
    qpe->add_option("--layout", qpe_layout, "lnn | all2all");
    qpe->add_option("--out", qpe_out, "result file");

    auto* qae = app.add_subcommand("qae", "run canonical amplitude estimation");
    double qae_const = 0.0;
    std::vector<double> qae_linear;
    unsigned qae_m = 3;
    std::uint64_t qae_shots = 1000, qae_seed = 1;
    std::string qae_out = "qae_result.txt";
    qae->add_option("--theta-const", qae_const, "constant rotation angle")->required();
    qae->add_option("--theta-linear", qae_linear, "per-bit rotation angles");
    qae->add_option("--M", qae_m, "result bits");
    qae->add_option("--shots", qae_shots);
    qae->add_option("--seed", qae_seed);
    qae->add_option("--out", qae_out, "result file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_n, synth_family, synth_out).exit_code;
        if (verify->parsed()) return cmd_verify(verify_file, verify_perm).exit_code;
        if (report->parsed()) return cmd_report(report_out, report_inject).exit_code;
        if (qpe->parsed())
            return cmd_qpe(qpe_theta, qpe_t, qpe_shots, qpe_seed, qpe_layout, qpe_out).exit_code;
        if (qae->parsed())
            return cmd_qae(qae_const, qae_linear, qae_m, qae_shots, qae_seed, qae_out).exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace nnqft::cli
