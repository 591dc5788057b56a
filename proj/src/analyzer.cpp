// Copyright 2026 The RUS Synthesis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rus/analyzer.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/integer/common_factor_rt.hpp>

#include "rus/clifford.hpp"

namespace rus {

const char *analysis_error_name(AnalysisErrorKind k) {
    switch (k) {
        case AnalysisErrorKind::NotUnitary: return "NotUnitary";
        case AnalysisErrorKind::NoSuccessBranch: return "NoSuccessBranch";
        case AnalysisErrorKind::InconsistentSuccess: return "InconsistentSuccess";
        case AnalysisErrorKind::NonCliffordFailure: return "NonCliffordFailure";
        case AnalysisErrorKind::BadShape: return "BadShape";
    }
    return "?";
}

std::string unitary_key(const RingMatrix &block) {
    if (block.rows() != 2 || block.cols() != 2 || block.is_zero())
        throw std::invalid_argument("unitary_key: expected a nonzero 2x2 block");
    int k = block.max_k();
    std::array<OmegaInt, 4> n;
    for (int i = 0; i < 4; ++i) n[i] = block.entries()[i].num_at(k);
    int first = 0;
    while (n[first].is_zero()) ++first;
    BigInt x, y;
    n[first].norm_sq(x, y);
    // 1 / (x + y sqrt2) = (x - y sqrt2) / (x^2 - 2 y^2), and sqrt2 = w - w^3.
    OmegaInt q(x, -y, BigInt(0), y);
    OmegaInt uq = n[first].conj() * q;
    BigInt den = x * x - 2 * y * y;
    std::array<BigInt, 17> v;
    for (int i = 0; i < 4; ++i) {
        OmegaInt r = n[i] * uq;
        v[4 * i] = r.a;
        v[4 * i + 1] = r.b;
        v[4 * i + 2] = r.c;
        v[4 * i + 3] = r.d;
    }
    v[16] = den;
    BigInt g = 0;
    for (const auto &c : v) g = boost::multiprecision::gcd(g, c);
    if (den < 0) g = -g;
    std::string s;
    for (int i = 0; i < 16; ++i) {
        s += BigInt(v[i] / g).str();
        s += (i == 15) ? "/" : ((i % 4 == 3) ? ";" : ",");
    }
    s += BigInt(v[16] / g).str();
    return s;
}

RealQuad success_probability(const RingMatrix &block, int k, int t) {
    RealQuad f = block.frobenius_sq();
    // multiply by t / (2 * 2^k)
    return RealQuad(f.x() * t, f.y() * t, f.k() + k + 1);
}

Mat2c normalized_phase_canonical(const RingMatrix &block, double *alpha) {
    auto c = block.to_complex();
    double fro = 0;
    for (const auto &z : c) fro += std::norm(z);
    double a = std::sqrt(fro / 2);
    if (alpha) *alpha = a;
    int first = 0;
    while (first < 3 && block.entries()[first].is_zero()) ++first;
    Complex ph = std::conj(c[first]) / std::abs(c[first]);
    Mat2c out;
    for (int i = 0; i < 4; ++i) out[i] = c[i] * ph / a;
    return out;
}

namespace {

// Index of a Clifford proportional to the block, or -1. Direct cross-multiplication test.
int clifford_proportional(const RingMatrix &b) {
    const auto &tab = CliffordTable::get();
    for (int i = 0; i < CliffordTable::kSize; ++i)
        if (b.proportional_to(tab.matrix(i))) return i;
    return -1;
}

}  // namespace

RusAnalysis analyze(const RingMatrix &w, int ancillas, int raw_t) {
    if (ancillas < 1 || ancillas > 3) throw AnalysisError(AnalysisErrorKind::BadShape, "ancilla count must be 1..3");
    std::size_t dim = std::size_t(1) << (ancillas + 1);
    if (w.rows() != dim || w.cols() != dim)
        throw AnalysisError(AnalysisErrorKind::BadShape, "matrix dimension does not match ancilla count");
    if (!w.is_unitary()) throw AnalysisError(AnalysisErrorKind::NotUnitary, "W is not unitary");

    RusAnalysis r;
    r.ancillas = ancillas;
    r.raw_t = raw_t;
    std::vector<RingMatrix> candidates;
    std::vector<int> candidate_outcomes;
    const int outcomes = 1 << ancillas;
    for (int a = 0; a < outcomes; ++a) {
        RingMatrix b = w.block(2 * a, 0, 2, 2);
        r.outcome_weight.push_back(success_probability(b, 0, 1));
        if (b.is_zero()) {
            r.zero_outcomes.push_back(a);
            continue;
        }
        if (!b.is_unitary_multiple())
            throw AnalysisError(AnalysisErrorKind::NonCliffordFailure,
                                "outcome " + std::to_string(a) + " block is not proportional to a unitary");
        int c = clifford_proportional(b);
        if (c >= 0) {
            r.recovery[a] = c;
            continue;
        }
        candidates.push_back(std::move(b));
        candidate_outcomes.push_back(a);
    }
    if (candidates.empty()) throw AnalysisError(AnalysisErrorKind::NoSuccessBranch, "every branch is Clifford");
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (!candidates[i].proportional_to(candidates[0]))
            throw AnalysisError(AnalysisErrorKind::InconsistentSuccess,
                                "outcomes " + std::to_string(candidate_outcomes[0]) + " and " +
                                    std::to_string(candidate_outcomes[i]) + " implement different unitaries");
    }
    r.success_outcomes = candidate_outcomes;
    r.success_block = candidates[0];
    r.success_unitary = normalized_phase_canonical(r.success_block, &r.alpha0);
    RealQuad p;
    for (int a : candidate_outcomes) p = p + r.outcome_weight[a];
    r.p = p;
    r.key = unitary_key(r.success_block);
    double pd = r.p.to_double();
    r.exp_t = expected_t(raw_t, pd);
    r.var_t = variance_t(raw_t, pd);
    return r;
}

RusAnalysis analyze_circuit(const Circuit &c) {
    if (c.width < 2) throw AnalysisError(AnalysisErrorKind::BadShape, "circuit has no ancilla");
    return analyze(circuit_unitary(c), c.width - 1, c.raw_t());
}

bool unitarity_condition_holds(const RingMatrix &w, const RusAnalysis &a) {
    int k = w.block(0, 0, w.rows(), 2).max_k();
    RealQuad two_k(BigInt(1) << k, BigInt(0), 0);
    RealQuad sum;
    for (const auto &wt : a.outcome_weight) {
        RealQuad alpha_sq = wt * two_k;
        sum = sum + alpha_sq;
    }
    return sum == two_k;
}

double expected_t(int raw_t, double p) { return raw_t / p; }

double variance_t(int raw_t, double p) { return double(raw_t) * raw_t * (1 - p) / (p * p); }

CostStats monte_carlo_cost(int raw_t, double p, uint64_t trials, uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("monte_carlo_cost: trials must be positive");
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("monte_carlo_cost: p must lie in (0, 1]");
    CostStats s;
    if (p == 1) {
        // Every attempt succeeds; the distribution below requires p < 1.
        s.mean = raw_t;
        s.trials = trials;
        return s;
    }
    std::mt19937_64 rng(seed);
    std::geometric_distribution<uint64_t> failures(p);
    double m2 = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        double cost = double(raw_t) * double(failures(rng) + 1);
        ++s.trials;
        double d = cost - s.mean;
        s.mean += d / double(s.trials);
        m2 += d * (cost - s.mean);
    }
    s.var = s.trials > 1 ? m2 / double(s.trials - 1) : 0.0;
    return s;
}

CostStats monte_carlo_cost(const RusAnalysis &a, uint64_t trials, uint64_t seed) {
    return monte_carlo_cost(a.raw_t, a.p_double(), trials, seed);
}

double staged_expected_cost(const std::vector<CostStage> &stages, int parity_t) {
    if (stages.empty()) throw std::invalid_argument("staged_expected_cost: no stages");
    double e = 0;
    for (const auto &s : stages) {
        if (!(s.p > 0 && s.p <= 1)) throw std::invalid_argument("staged_expected_cost: stage p outside (0, 1]");
        e = (e + s.t) / s.p;
    }
    // P(attempt count odd) for Geometric(p) on {1, 2, ...} is 1 / (2 - p).
    double p_last = stages.back().p;
    return e + parity_t / (2 - p_last);
}

AmplificationPlan optimize_amplification(int raw_t, double p) {
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("optimize_amplification: p must lie in (0, 1]");
    AmplificationPlan best;
    best.j = 0;
    best.amplified_p = p;
    best.amplified_t = raw_t;
    best.exp_t = raw_t / p;
    best.gain = 1;
    if (p >= 1.0 / 3.0) return best;
    const double theta = std::asin(std::sqrt(p));
    int j_max = 0;
    while ((2 * j_max + 1) * theta < std::numbers::pi / 2) ++j_max;
    ++j_max;
    for (int j = 1; j <= j_max; ++j) {
        double s = std::sin((2 * j + 1) * theta);
        double pj = s * s;
        if (pj <= 0) continue;
        double cost = (2.0 * j + 1) * raw_t / pj;
        if (cost < best.exp_t) {
            best.j = j;
            best.amplified_p = pj;
            best.amplified_t = (2 * j + 1) * raw_t;
            best.exp_t = cost;
        }
    }
    best.gain = (raw_t / p) / best.exp_t;
    return best;
}

RingMatrix cz_m(int m) {
    if (m < 1 || m > 3) throw std::invalid_argument("cz_m: m must be 1..3");
    std::size_t dim = std::size_t(1) << m;
    RingMatrix r = RingMatrix::identity(dim);
    r(dim - 1, dim - 1) = RingScalar::from_int(-1);
    return r;
}

RingMatrix s_prime(int m) {
    if (m < 1 || m > 3) throw std::invalid_argument("s_prime: m must be 1..3");
    RingMatrix xm = gates::X();
    for (int i = 1; i < m; ++i) xm = xm.tensor(gates::X());
    return xm * cz_m(m) * xm;
}

namespace {

// S' on the ancillas, identity on the data qubit (qubit 0 is least significant).
RingMatrix s_prime_full(int m) { return s_prime(m).tensor(RingMatrix::identity(2)); }

}  // namespace

RingMatrix build_amplified(const RingMatrix &w, int m, int j) {
    if (j < 0) throw std::invalid_argument("build_amplified: j must be non-negative");
    analyze(w, m);
    RingMatrix sp = s_prime_full(m);
    RingMatrix round = (w * sp * w.adjoint() * sp).scaled(RingScalar::from_int(-1));
    RingMatrix out = w;
    for (int i = 0; i < j; ++i) out = round * out;
    return out;
}

Circuit inverse_circuit(const Circuit &c) {
    Circuit r;
    r.width = c.width;
    r.measured = c.measured;
    const auto &tab = CliffordTable::get();
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::S: g.kind = GateKind::Sdg; break;
            case GateKind::Sdg: g.kind = GateKind::S; break;
            case GateKind::T: g.kind = GateKind::Tdg; break;
            case GateKind::Tdg: g.kind = GateKind::T; break;
            case GateKind::Cliff: g.cliff = tab.inverse(g.cliff); break;
            default: break;
        }
        r.gates.push_back(g);
    }
    return r;
}

AmplifiedResult amplify_circuit(const Circuit &c, int j) {
    RusAnalysis base = analyze_circuit(c);
    if (base.multiplicity() != 1)
        throw std::invalid_argument("amplify_circuit: only circuits with one success outcome are supported");
    const int m = c.width - 1;
    Circuit w = c;
    int s = base.success_outcomes[0];
    for (int q = 1; q <= m; ++q)
        if ((s >> (q - 1)) & 1) w.gates.push_back({GateKind::X, q});

    Circuit sp;
    sp.width = c.width;
    for (int q = 1; q <= m; ++q) sp.gates.push_back({GateKind::X, q});
    if (m == 1) {
        sp.gates.push_back({GateKind::Z, 1});
    } else if (m == 2) {
        sp.gates.push_back({GateKind::CZ, 1, 2});
    } else {
        throw std::invalid_argument("amplify_circuit: at most two ancillas");
    }
    for (int q = 1; q <= m; ++q) sp.gates.push_back({GateKind::X, q});

    Circuit winv = inverse_circuit(w);
    winv.measured.clear();
    sp.measured.clear();
    Circuit out = w;
    for (int i = 0; i < j; ++i) out = concat(concat(concat(concat(out, sp), winv), sp), w);

    AmplifiedResult r;
    r.circuit = out;
    r.w = build_amplified(circuit_unitary(w), m, j);
    try {
        r.analysis = analyze(r.w, m, out.raw_t());
    } catch (const AnalysisError &e) {
        r.failures_clifford = false;
        r.note = std::string(analysis_error_name(e.kind())) + ": " + e.what();
    }
    return r;
}

}  // namespace rus
