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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.hpp"
#include "rus/analyzer.hpp"
#include "rus/clifford.hpp"
#include "rus/fixtures.hpp"
#include "rus/unitary.hpp"

using namespace rus;
using namespace rus::gates;
using oracle::C;

namespace {

std::array<C, 4> float_target(const RingMatrix &m) {
    auto v = m.to_complex();
    double n = std::sqrt((std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) + std::norm(v[3])) / 2);
    return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

RingMatrix two_branch(const RingMatrix &u1, const RingMatrix &u2) {
    // (1/sqrt2) [[U1, U1], [U2, -U2]] with outcome blocks in rows 0-1 and 2-3.
    RingMatrix w(4, 4);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            RingScalar a = u1(r, c) * RingScalar::inv_sqrt2(), b = u2(r, c) * RingScalar::inv_sqrt2();
            w(r, c) = a;
            w(r, c + 2) = a;
            w(r + 2, c) = b;
            w(r + 2, c + 2) = -b;
        }
    return w;
}

}  // namespace

TEST(Fixtures, AllClaimsHoldExactly) {
    for (const auto &f : fixtures()) {
        FixtureCheck chk = check_fixture(f);
        std::string why;
        for (const auto &s : chk.failures) why += s + "; ";
        EXPECT_TRUE(chk.ok) << f.name << ": " << why;
        EXPECT_TRUE(unitarity_condition_holds(circuit_unitary(f.circuit), chk.analysis)) << f.name;
        if (f.confidence == FixtureConfidence::Partial) EXPECT_FALSE(f.note.empty()) << f.name;
    }
}

TEST(Fixtures, PublishedNumbers) {
    auto g = analyze_circuit(fixture("gosset").circuit);
    EXPECT_EQ(g.p, RealQuad(3, 0, 2));
    EXPECT_EQ(g.raw_t, 2);
    RingMatrix gosset_u = RingMatrix::identity(2) + X().scaled(RingScalar::sqrt2() * RingScalar::omega(2));
    EXPECT_TRUE(g.success_block.proportional_to(gosset_u));
    for (const auto &[o, c] : g.recovery) EXPECT_EQ(c, CliffordTable::get().find_word(""));

    auto v3 = analyze_circuit(fixture("v3_one_ancilla").circuit);
    EXPECT_EQ(v3.p, RealQuad(5, 0, 3));
    EXPECT_EQ(v3.raw_t, 4);
    EXPECT_DOUBLE_EQ(v3.exp_t, 6.4);
    EXPECT_TRUE(v3.success_block.proportional_to(v_gate(1, 2)));

    auto s7 = analyze_circuit(fixture("sqrt7").circuit);
    EXPECT_EQ(s7.p, RealQuad(7, 0, 3));
    EXPECT_EQ(s7.raw_t, 4);
    for (const auto &[o, c] : s7.recovery) EXPECT_EQ(c, CliffordTable::get().find_word("Z"));

    auto v13 = analyze_circuit(fixture("v13").circuit);
    EXPECT_EQ(v13.p, RealQuad(13, 0, 4));
    EXPECT_TRUE(v13.success_block.proportional_to(v_gate(3, 2)));
    auto v17 = analyze_circuit(fixture("v17").circuit);
    EXPECT_NEAR(v17.p_double(), 0.985, 5e-4);
    EXPECT_TRUE(v17.success_block.proportional_to(v_gate(4, 1)));
    auto v29 = analyze_circuit(fixture("v29").circuit);
    EXPECT_NEAR(v29.p_double(), 0.774, 5e-4);
    EXPECT_TRUE(v29.success_block.proportional_to(v_gate(5, 2)));

    auto staged = fixture("v3_staged");
    EXPECT_NEAR(staged_expected_cost(staged.stages, staged.parity_t), 5.2571, 1e-4);
    EXPECT_LT(staged_expected_cost(staged.stages, staged.parity_t), 5.26);
}

// Simulates each fixture on random inputs: the success mass must equal p whatever the input,
// the post-measurement data state must be U psi, and failures must leave R psi.
TEST(Analyzer, FloatSimulationOracle) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (const auto &f : fixtures()) {
        RusAnalysis a = analyze_circuit(f.circuit);
        auto w = oracle::simulate(f.circuit);
        const std::size_t dim = std::size_t(1) << f.circuit.width;
        auto u = float_target(f.target);
        for (int trial = 0; trial < 5; ++trial) {
            C x(n(rng), n(rng)), y(n(rng), n(rng));
            double s = std::sqrt(std::norm(x) + std::norm(y));
            x /= s;
            y /= s;
            double success = 0;
            for (int o = 0; o < (1 << a.ancillas); ++o) {
                C out0 = w[(2 * o) * dim + 0] * x + w[(2 * o) * dim + 1] * y;
                C out1 = w[(2 * o + 1) * dim + 0] * x + w[(2 * o + 1) * dim + 1] * y;
                double mass = std::norm(out0) + std::norm(out1);
                if (mass < 1e-14) continue;
                std::array<C, 4> expect_m;
                bool is_success = std::find(a.success_outcomes.begin(), a.success_outcomes.end(), o) !=
                                  a.success_outcomes.end();
                if (is_success) {
                    success += mass;
                    expect_m = u;
                } else {
                    expect_m = oracle::word2(CliffordTable::get().word(a.recovery.at(o)));
                }
                C e0 = expect_m[0] * x + expect_m[1] * y, e1 = expect_m[2] * x + expect_m[3] * y;
                // |<expected|actual>| / |actual| == 1
                double overlap = std::abs(std::conj(e0) * out0 + std::conj(e1) * out1) / std::sqrt(mass);
                EXPECT_NEAR(overlap, 1.0, 1e-10) << f.name << " outcome " << o;
            }
            EXPECT_NEAR(success, a.p_double(), 1e-12) << f.name;
        }
    }
}

TEST(Analyzer, Errors) {
    auto kind_of = [](auto fn) {
        try {
            fn();
        } catch (const AnalysisError &e) {
            return e.kind();
        }
        return AnalysisErrorKind::BadShape;
    };
    EXPECT_EQ(kind_of([] { analyze_circuit(decode_circuit("H0 |M1", 2)); }), AnalysisErrorKind::NoSuccessBranch);
    EXPECT_EQ(kind_of([] { analyze(two_branch(T() * H(), H() * T()), 1); }), AnalysisErrorKind::InconsistentSuccess);
    EXPECT_EQ(kind_of([] { analyze_circuit(decode_circuit("CNOT0.1 T0 |M1", 2)); }),
              AnalysisErrorKind::NonCliffordFailure);
    EXPECT_EQ(kind_of([] { analyze(RingMatrix::identity(4).scaled(RingScalar::from_int(2)), 1); }),
              AnalysisErrorKind::NotUnitary);
    EXPECT_THROW(analyze(RingMatrix::identity(8), 1), AnalysisError);
}

TEST(Analyzer, ConsistentBranchesAddProbability) {
    RusAnalysis a = analyze(two_branch(T() * H(), T() * H()), 1, 1);
    EXPECT_EQ(a.multiplicity(), 2);
    EXPECT_EQ(a.p, RealQuad::from_int(1));
    RusAnalysis b = analyze(two_branch(T() * H(), H()), 1, 1);
    EXPECT_EQ(b.p, RealQuad(1, 0, 1));
    EXPECT_EQ(b.recovery.at(1), CliffordTable::get().find_word("H"));
}

TEST(Analyzer, SuccessProbabilityExamples) {
    EXPECT_EQ(success_probability(RingMatrix::identity(2), 0, 1), RealQuad::from_int(1));
    EXPECT_EQ(analyze_circuit(fixture("v3_one_ancilla").circuit).p, RealQuad(5, 0, 3));
}

TEST(Analyzer, KeyIsPhaseAndScaleInvariant) {
    RingMatrix u = T() * H() * T();
    std::string k = unitary_key(u);
    for (int j = 0; j < 8; ++j) EXPECT_EQ(unitary_key(u.scaled(RingScalar::omega(j))), k);
    EXPECT_EQ(unitary_key(u.scaled(RingScalar::sqrt2())), k);
    EXPECT_NE(unitary_key(H() * T()), k);
}

TEST(Amplification, PublishedExample) {
    AmplificationPlan p = optimize_amplification(15, 0.1);
    EXPECT_EQ(p.j, 1);
    EXPECT_NEAR(p.amplified_p, 0.676, 1e-3);
    EXPECT_EQ(p.amplified_t, 45);
    EXPECT_NEAR(p.gain, 2.25, 0.01);
    EXPECT_EQ(optimize_amplification(4, 5.0 / 8).j, 0);
    EXPECT_EQ(optimize_amplification(10, 1.0 / 3).j, 0);
    for (double q = 1.0 / 3; q <= 1; q += 0.01) EXPECT_EQ(optimize_amplification(7, q).j, 0);
}

TEST(Amplification, MatchesBruteForce) {
    for (double p = 0.005; p < 1.0 / 3; p += 0.0123) {
        double th = std::asin(std::sqrt(p)), best = 10 / p;
        int bj = 0;
        for (int j = 1; j < 200; ++j) {
            double s = std::sin((2 * j + 1) * th);
            if ((2 * j + 1) * 10 / (s * s) < best) best = (2 * j + 1) * 10 / (s * s), bj = j;
        }
        AmplificationPlan a = optimize_amplification(10, p);
        EXPECT_EQ(a.j, bj) << p;
        EXPECT_NEAR(a.exp_t, best, 1e-9 * best);
    }
}

TEST(Amplification, Reflections) {
    EXPECT_EQ(cz_m(1), Z());
    EXPECT_EQ(cz_m(2), CZ());
    RingMatrix want = RingMatrix::identity(4);
    want(0, 0) = RingScalar::from_int(-1);
    EXPECT_EQ(s_prime(2), want);
}

TEST(Amplification, BuildAmplifiedFollowsSineLaw) {
    for (const char *name : {"gosset", "v3_one_ancilla", "sqrt7", "v13", "v29"}) {
        const Fixture &f = fixture(name);
        RusAnalysis a = analyze_circuit(f.circuit);
        double th = std::asin(std::sqrt(a.p_double()));
        RingMatrix w = circuit_unitary(f.circuit);
        for (int j = 0; j <= 3; ++j) {
            AmplifiedResult r = amplify_circuit(f.circuit, j);
            auto v = r.w.to_complex();
            const std::size_t dim = r.w.cols();
            double mass = 0;
            for (int row = 0; row < 2; ++row)
                for (int col = 0; col < 2; ++col) mass += std::norm(v[row * dim + col]);
            double s = std::sin((2 * j + 1) * th);
            EXPECT_NEAR(mass / 2, s * s, 1e-10) << name << " j=" << j;
            if (j == 0 && a.success_outcomes == std::vector<int>{0}) EXPECT_EQ(build_amplified(w, 1, 0), w);
        }
    }
    // p = 3/4, j = 1: sin(3 pi / 3) = 0.
    RusAnalysis g = analyze_circuit(fixture("gosset").circuit);
    double th = std::asin(std::sqrt(g.p_double()));
    EXPECT_NEAR(std::sin(3 * th), 0, 1e-12);
}

TEST(Cost, ClosedForms) {
    EXPECT_DOUBLE_EQ(expected_t(4, 0.625), 6.4);
    EXPECT_DOUBLE_EQ(variance_t(1, 0.5), 2.0);
    CostStats one = monte_carlo_cost(5, 1.0, 1000, 1);
    EXPECT_EQ(one.mean, 5.0);
    EXPECT_EQ(one.var, 0.0);
}

// Sample mean and variance of raw_t * Geometric(p) within three standard errors; the variance
// standard error uses the geometric fourth moment, sigma^4 (9 + p^2 / (1 - p)).
TEST(Cost, MonteCarloWithinThreeStandardErrors) {
    struct Case {
        int t;
        double p;
    };
    for (Case c : {Case{4, 0.625}, Case{1, 0.5}, Case{2, 0.75}, Case{11, 0.9847}}) {
        const double n = 1e6;
        CostStats s = monte_carlo_cost(c.t, c.p, static_cast<uint64_t>(n), 99);
        double var = variance_t(c.t, c.p);
        double se_mean = std::sqrt(var / n);
        double mu4 = var * var * (9 + c.p * c.p / (1 - c.p));
        double se_var = std::sqrt((mu4 - var * var) / n);
        EXPECT_NEAR(s.mean, expected_t(c.t, c.p), 3 * se_mean) << c.t << " " << c.p;
        EXPECT_NEAR(s.var, var, 3 * se_var) << c.t << " " << c.p;
    }
}
