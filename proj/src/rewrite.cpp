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

#include "nnqft/rewrite.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nnqft/simulator.hpp"

namespace nnqft {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroAngleTol = 1e-12;

double uniform_angle(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * kPi;
}

bool angle_is_zero_rotation(double a) {
    // rotations are 4 pi periodic as matrices
    return std::abs(std::remainder(a, 4.0 * kPi)) < kZeroAngleTol;
}

std::vector<Gate> cp_decomposition(QubitIndex a, QubitIndex b, double theta) {
    return {Gate::rz(a, theta / 2), Gate::rz(b, theta / 2), Gate::cnot(a, b),
            Gate::rz(b, -theta / 2), Gate::cnot(a, b)};
}

Gate random_gate(unsigned n, std::mt19937_64& rng) {
    const unsigned pick = static_cast<unsigned>(rng() % 10);
    const QubitIndex q = static_cast<QubitIndex>(rng() % n);
    QubitIndex r = static_cast<QubitIndex>(rng() % (n - 1));
    if (r >= q) ++r;
    switch (pick) {
        case 0: return Gate::h(q);
        case 1: return Gate::x(q);
        case 2: return Gate::rx(q, uniform_angle(rng));
        case 3: return Gate::ry(q, uniform_angle(rng));
        case 4: return Gate::rz(q, uniform_angle(rng));
        case 5: return Gate::cnot(q, r);
        case 6: return Gate::cp(q, r, uniform_angle(rng));
        case 7: return Gate::crz(q, r, uniform_angle(rng));
        case 8: return Gate::cry(q, r, uniform_angle(rng));
        default: return Gate::swap(q, r);
    }
}

// ---- fan-to-chain identity -------------------------------------------------
//
// LHS (window): Rz(xi) f, then for i = f-1 .. 0:
//   CNOT(f -> i), Rz(alpha_i) i, CNOT(f -> i)
// i.e. a fan of controlled-phase interactions sharing wire f, written in the
// two-CNOT form, with the shared wire's rotation merged in front.
//
// RHS: the same diagonal conjugated into the difference-wire basis, using only
// chain-adjacent CNOTs: a staircase into the difference basis, one parity
// climb applying each alpha_i, the reverse climb, and the staircase back.
// Both sides are exactly equal as unitaries (phase delta 0).

std::optional<std::size_t> fan_match(const Circuit& c, std::size_t pos) {
    const auto& gs = c.gates();
    if (pos >= gs.size()) return std::nullopt;
    const Gate& head = gs[pos];
    if (head.kind != GateKind::Rz) return std::nullopt;
    const QubitIndex f = head.qs[0];
    if (f < 1) return std::nullopt;
    const std::size_t len = 1 + 3 * static_cast<std::size_t>(f);
    if (pos + len > gs.size()) return std::nullopt;
    for (QubitIndex i = f; i-- > 0;) {
        const std::size_t b = pos + 1 + 3 * static_cast<std::size_t>(f - 1 - i);
        const Gate& c1 = gs[b];
        const Gate& rot = gs[b + 1];
        const Gate& c2 = gs[b + 2];
        if (c1.kind != GateKind::CNOT || c1.qs[0] != f || c1.qs[1] != i) return std::nullopt;
        if (rot.kind != GateKind::Rz || rot.qs[0] != i) return std::nullopt;
        if (c2.kind != GateKind::CNOT || c2.qs[0] != f || c2.qs[1] != i) return std::nullopt;
    }
    return len;
}

RuleApplication fan_replace(const Circuit& c, std::size_t pos, std::size_t len) {
    const auto& gs = c.gates();
    const QubitIndex f = gs[pos].qs[0];
    std::vector<double> alpha(f);
    for (QubitIndex i = 0; i < f; ++i)
        alpha[i] = gs[pos + 1 + 3 * static_cast<std::size_t>(f - 1 - i) + 1].angle;
    (void)len;

    RuleApplication app;
    app.replacement.push_back(gs[pos]);  // shared-wire rotation unchanged
    // staircase into the difference basis
    for (QubitIndex k = 0; k + 1 < f; ++k) app.replacement.push_back(Gate::cnot(k + 1, k));
    // parity climb: wire k holds (x_k xor x_f) when its rotation fires
    app.replacement.push_back(Gate::cnot(f, f - 1));
    app.replacement.push_back(Gate::rz(f - 1, alpha[f - 1]));
    for (QubitIndex k = f - 1; k-- > 0;) {
        app.replacement.push_back(Gate::cnot(k + 1, k));
        app.replacement.push_back(Gate::rz(k, alpha[k]));
    }
    // reverse climb restores the difference basis
    for (QubitIndex k = 0; k < f; ++k) app.replacement.push_back(Gate::cnot(k + 1, k));
    // staircase back to the computational basis
    for (QubitIndex k = f - 1; k-- > 0;) app.replacement.push_back(Gate::cnot(k + 1, k));
    app.phase_delta = 0.0;
    return app;
}

std::vector<Gate> fan_sample_lhs(unsigned n, std::mt19937_64& rng) {
    const QubitIndex f = static_cast<QubitIndex>(n - 1);
    std::vector<Gate> gs;
    gs.push_back(Gate::rz(f, uniform_angle(rng)));
    for (QubitIndex i = f; i-- > 0;) {
        gs.push_back(Gate::cnot(f, i));
        gs.push_back(Gate::rz(i, uniform_angle(rng)));
        gs.push_back(Gate::cnot(f, i));
    }
    return gs;
}

std::vector<RewriteRule> make_catalog() {
    std::vector<RewriteRule> rules;

    rules.push_back(RewriteRule{
        "cp-decomposition", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            if (pos < c.gates().size() && c.gates()[pos].kind == GateKind::CP) return 1;
            return std::nullopt;
        },
        [](const Circuit& c, std::size_t pos, std::size_t) {
            const Gate& g = c.gates()[pos];
            return RuleApplication{cp_decomposition(g.qs[0], g.qs[1], g.angle), g.angle / 4};
        },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex a = static_cast<QubitIndex>(rng() % n);
            QubitIndex b = static_cast<QubitIndex>(rng() % (n - 1));
            if (b >= a) ++b;
            return std::vector<Gate>{Gate::cp(a, b, uniform_angle(rng))};
        }});

    rules.push_back(RewriteRule{
        "swap-decomposition", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            if (pos < c.gates().size() && c.gates()[pos].kind == GateKind::SWAP) return 1;
            return std::nullopt;
        },
        [](const Circuit& c, std::size_t pos, std::size_t) {
            const Gate& g = c.gates()[pos];
            return RuleApplication{
                {Gate::cnot(g.qs[0], g.qs[1]), Gate::cnot(g.qs[1], g.qs[0]),
                 Gate::cnot(g.qs[0], g.qs[1])},
                0.0};
        },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex a = static_cast<QubitIndex>(rng() % n);
            QubitIndex b = static_cast<QubitIndex>(rng() % (n - 1));
            if (b >= a) ++b;
            return std::vector<Gate>{Gate::swap(a, b)};
        }});

    rules.push_back(RewriteRule{
        "cnot-cancellation", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            const auto& gs = c.gates();
            if (pos + 1 < gs.size() && gs[pos].kind == GateKind::CNOT && gs[pos] == gs[pos + 1])
                return 2;
            return std::nullopt;
        },
        [](const Circuit&, std::size_t, std::size_t) { return RuleApplication{{}, 0.0}; },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex a = static_cast<QubitIndex>(rng() % n);
            QubitIndex b = static_cast<QubitIndex>(rng() % (n - 1));
            if (b >= a) ++b;
            return std::vector<Gate>{Gate::cnot(a, b), Gate::cnot(a, b)};
        }});

    rules.push_back(RewriteRule{
        "rz-merge", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            const auto& gs = c.gates();
            if (pos + 1 < gs.size() && gs[pos].kind == GateKind::Rz &&
                gs[pos + 1].kind == GateKind::Rz && gs[pos].qs[0] == gs[pos + 1].qs[0])
                return 2;
            return std::nullopt;
        },
        [](const Circuit& c, std::size_t pos, std::size_t) {
            const Gate& a = c.gates()[pos];
            const Gate& b = c.gates()[pos + 1];
            return RuleApplication{{Gate::rz(a.qs[0], a.angle + b.angle)}, 0.0};
        },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex q = static_cast<QubitIndex>(rng() % n);
            return std::vector<Gate>{Gate::rz(q, uniform_angle(rng)),
                                     Gate::rz(q, uniform_angle(rng))};
        }});

    rules.push_back(RewriteRule{
        "control-rz-commutation", 2,
        [](const Circuit& c, std::size_t pos) -> std::optional<std::size_t> {
            const auto& gs = c.gates();
            if (pos + 1 < gs.size() && gs[pos].kind == GateKind::Rz &&
                gs[pos + 1].kind == GateKind::CNOT && gs[pos + 1].qs[0] == gs[pos].qs[0])
                return 2;
            return std::nullopt;
        },
        [](const Circuit& c, std::size_t pos, std::size_t) {
            return RuleApplication{{c.gates()[pos + 1], c.gates()[pos]}, 0.0};
        },
        [](unsigned n, std::mt19937_64& rng) {
            QubitIndex a = static_cast<QubitIndex>(rng() % n);
            QubitIndex b = static_cast<QubitIndex>(rng() % (n - 1));
            if (b >= a) ++b;
            return std::vector<Gate>{Gate::rz(a, uniform_angle(rng)), Gate::cnot(a, b)};
        }});

    rules.push_back(RewriteRule{"fan-chain-identity", 2, fan_match, fan_replace, fan_sample_lhs});

    return rules;
}

Circuit rebuild_with(const Circuit& c, std::vector<Gate> gates, double extra_phase) {
    Circuit out(c.n_qubits());
    out.gates() = std::move(gates);
    out.set_global_phase(c.global_phase() + extra_phase);
    out.set_output_permutation(c.output_permutation());
    return out;
}

}  // namespace

const std::vector<RewriteRule>& rule_catalog() {
    static const std::vector<RewriteRule> catalog = make_catalog();
    return catalog;
}

const RewriteRule& find_rule(const std::string& name) {
    for (const RewriteRule& r : rule_catalog())
        if (r.name == name) return r;
    throw std::invalid_argument("unknown rewrite rule: " + name);
}

RuleSoundnessReport validate_rule(const RewriteRule& rule, unsigned max_size, std::size_t trials,
                                  std::uint64_t seed) {
    if (max_size > 6) throw std::invalid_argument("validate_rule: max_size must be <= 6");
    RuleSoundnessReport report;
    report.rule = rule.name;
    report.passed = true;
    for (unsigned n = std::max(2u, rule.min_size); n <= max_size; ++n) {
        for (std::size_t t = 0; t < trials; ++t) {
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (n * 1000003ULL + t));
            const std::vector<Gate> lhs = rule.sample_lhs(n, rng);
            Circuit c(n);
            const std::size_t ctx = rng() % 7;
            for (std::size_t k = 0; k < ctx; ++k) c.add(random_gate(n, rng));
            const std::size_t pos = c.size();
            c.add(lhs);
            for (std::size_t k = 0; k < ctx; ++k) c.add(random_gate(n, rng));

            const auto len = rule.match(c, pos);
            if (!len || *len != lhs.size()) {
                report.passed = false;
                report.detail = "rule failed to match its own LHS at size " + std::to_string(n);
                return report;
            }
            RuleApplication app = rule.replace(c, pos, *len);
            std::vector<Gate> gs(c.gates().begin(), c.gates().begin() + pos);
            gs.insert(gs.end(), app.replacement.begin(), app.replacement.end());
            gs.insert(gs.end(), c.gates().begin() + pos + *len, c.gates().end());
            const Circuit rewritten = rebuild_with(c, std::move(gs), app.phase_delta);

            const double fid = fidelity_up_to_phase(circuit_unitary(rewritten), circuit_unitary(c));
            const double dev = std::abs(1.0 - fid);
            report.max_deviation = std::max(report.max_deviation, dev);
            ++report.trials_run;
        }
    }
    report.passed = report.max_deviation <= 1e-10;
    if (!report.passed && report.detail.empty())
        report.detail = "max unitary deviation " + std::to_string(report.max_deviation);
    return report;
}

Circuit decompose_cp_all(const Circuit& c) {
    require_valid(c);
    Circuit out(c.n_qubits());
    double ledger = 0.0;
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::CP) {
            for (const Gate& d : cp_decomposition(g.qs[0], g.qs[1], g.angle)) out.add(d);
            ledger += g.angle / 4;
        } else {
            out.add(g);
        }
    }
    out.set_global_phase(c.global_phase() + ledger);
    out.set_output_permutation(c.output_permutation());
    return out;
}

Circuit decompose_swap_all(const Circuit& c) {
    require_valid(c);
    Circuit out(c.n_qubits());
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::SWAP) {
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
            out.add(Gate::cnot(g.qs[1], g.qs[0]));
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
        } else {
            out.add(g);
        }
    }
    out.set_global_phase(c.global_phase());
    out.set_output_permutation(c.output_permutation());
    return out;
}

Circuit decompose_controlled_rotations_all(const Circuit& c) {
    require_valid(c);
    Circuit out(c.n_qubits());
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::CRz) {
            out.add(Gate::rz(g.qs[1], g.angle / 2));
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
            out.add(Gate::rz(g.qs[1], -g.angle / 2));
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
        } else if (g.kind == GateKind::CRy) {
            out.add(Gate::ry(g.qs[1], g.angle / 2));
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
            out.add(Gate::ry(g.qs[1], -g.angle / 2));
            out.add(Gate::cnot(g.qs[0], g.qs[1]));
        } else {
            out.add(g);
        }
    }
    out.set_global_phase(c.global_phase());
    out.set_output_permutation(c.output_permutation());
    return out;
}

Circuit simplify(const Circuit& c) {
    require_valid(c);
    std::vector<Gate> gs = c.gates();

    auto is_rotation = [](const Gate& g) {
        return g.kind == GateKind::Rx || g.kind == GateKind::Ry || g.kind == GateKind::Rz;
    };

    bool changed = true;
    while (changed) {
        changed = false;

        // zero-rotation pruning
        for (std::size_t i = 0; i < gs.size();) {
            if (is_rotation(gs[i]) && angle_is_zero_rotation(gs[i].angle)) {
                gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else {
                ++i;
            }
        }

        // adjacent-on-wire CNOT cancellation and Rz merging; an Rz on a CNOT's
        // control wire is transparent to the scan
        for (std::size_t i = 0; i < gs.size() && !changed; ++i) {
            const Gate& g = gs[i];
            if (g.kind == GateKind::CNOT) {
                for (std::size_t j = i + 1; j < gs.size(); ++j) {
                    const Gate& h = gs[j];
                    if (!h.touches(g.qs[0]) && !h.touches(g.qs[1])) continue;
                    if (h.kind == GateKind::Rz && h.qs[0] == g.qs[0]) continue;
                    if (h == g) {
                        gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
                        gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
                        changed = true;
                    }
                    break;
                }
            } else if (g.kind == GateKind::Rz) {
                for (std::size_t j = i + 1; j < gs.size(); ++j) {
                    const Gate& h = gs[j];
                    if (!h.touches(g.qs[0])) continue;
                    if (h.kind == GateKind::CNOT && h.qs[0] == g.qs[0]) continue;
                    if (h.kind == GateKind::Rz && h.qs[0] == g.qs[0]) {
                        gs[i].angle += h.angle;
                        gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
                        changed = true;
                    }
                    break;
                }
            }
        }
    }

    return rebuild_with(c, std::move(gs), 0.0);
}

std::pair<Circuit, bool> apply_fan_identity(const Circuit& c, std::size_t site) {
    require_valid(c);
    const auto len = fan_match(c, site);
    if (!len) return {c, false};
    RuleApplication app = fan_replace(c, site, *len);
    std::vector<Gate> gs(c.gates().begin(), c.gates().begin() + site);
    gs.insert(gs.end(), app.replacement.begin(), app.replacement.end());
    gs.insert(gs.end(), c.gates().begin() + site + *len, c.gates().end());
    return {rebuild_with(c, std::move(gs), app.phase_delta), true};
}

namespace {

std::pair<Circuit, std::size_t> fan_chain_pass(const Circuit& c) {
    Circuit cur = c;
    std::size_t matches = 0;
    std::size_t i = 0;
    while (i < cur.size()) {
        const auto len = fan_match(cur, i);
        if (!len) {
            ++i;
            continue;
        }
        RuleApplication app = fan_replace(cur, i, *len);
        const std::size_t advance = app.replacement.size();
        std::vector<Gate> gs(cur.gates().begin(), cur.gates().begin() + i);
        gs.insert(gs.end(), app.replacement.begin(), app.replacement.end());
        gs.insert(gs.end(), cur.gates().begin() + i + *len, cur.gates().end());
        cur = rebuild_with(cur, std::move(gs), app.phase_delta);
        ++matches;
        i += advance;
    }
    return {cur, matches};
}

void ensure_catalog_validated() {
    static const bool ok = [] {
        for (const RewriteRule& r : rule_catalog()) {
            const auto rep = validate_rule(r, 3, 8, 20260101);
            if (!rep.passed)
                throw std::logic_error("rewrite rule failed validation: " + r.name + " (" +
                                       rep.detail + ")");
        }
        return true;
    }();
    (void)ok;
}

}  // namespace

std::string PipelineTrace::str() const {
    std::ostringstream os;
    for (const PassRecord& p : passes) {
        os << p.name << ": gates " << p.gates_before << " -> " << p.gates_after << ", CNOT "
           << p.cnots_before << " -> " << p.cnots_after << ", matches " << p.matches_applied
           << "\n";
    }
    return os.str();
}

std::pair<Circuit, PipelineTrace> run_pipeline(const Circuit& c,
                                               const std::vector<std::string>& passes) {
    require_valid(c);
    ensure_catalog_validated();
    Circuit cur = c;
    PipelineTrace trace;
    for (const std::string& name : passes) {
        PassRecord rec;
        rec.name = name;
        rec.gates_before = cur.size();
        rec.cnots_before = count_gates(cur).cnot_total;
        if (name == "decompose-cp") {
            cur = decompose_cp_all(cur);
        } else if (name == "decompose-swap") {
            cur = decompose_swap_all(cur);
        } else if (name == "fan-chain") {
            auto [next, matches] = fan_chain_pass(cur);
            cur = next;
            rec.matches_applied = matches;
        } else if (name == "simplify") {
            cur = simplify(cur);
        } else {
            throw std::invalid_argument("unknown pipeline pass: " + name);
        }
        rec.gates_after = cur.size();
        rec.cnots_after = count_gates(cur).cnot_total;
        trace.passes.push_back(rec);
    }
    return {cur, trace};
}

}  // namespace nnqft
