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

#include "rus/clifford.hpp"
#include "rus/exact64.hpp"
#include "rus/ring.hpp"
#include "rus/ring_matrix.hpp"

using namespace rus;
using namespace rus::gates;

namespace {

RingScalar random_scalar(std::mt19937_64 &rng, int range = 50, int max_k = 6) {
    std::uniform_int_distribution<long> c(-range, range);
    std::uniform_int_distribution<int> k(0, max_k);
    return RingScalar(OmegaInt(BigInt(c(rng)), BigInt(c(rng)), BigInt(c(rng)), BigInt(c(rng))), k(rng));
}

// Direct evaluation of (a + b w + c w^2 + d w^3) / sqrt2^k.
std::complex<double> eval(const RingScalar &s) {
    const auto &n = s.num();
    std::complex<double> w = std::polar(1.0, std::numbers::pi / 4), acc = 0, p = 1;
    for (const BigInt *v : {&n.a, &n.b, &n.c, &n.d}) {
        acc += v->convert_to<double>() * p;
        p *= w;
    }
    return acc / std::pow(std::numbers::sqrt2, s.k());
}

}  // namespace

TEST(Ring, OmegaEighthPowerIsOne) {
    RingScalar w = RingScalar::omega(), p = RingScalar::from_int(1);
    for (int i = 0; i < 8; ++i) p = p * w;
    EXPECT_EQ(p, RingScalar::from_int(1));
    EXPECT_EQ(RingScalar::omega(1) * RingScalar::omega(7), RingScalar::from_int(1));
}

TEST(Ring, Sqrt2Identity) {
    RingScalar r2 = RingScalar::omega(1) - RingScalar::omega(3);
    EXPECT_EQ(r2 * r2, RingScalar::from_int(2));
    EXPECT_EQ(r2, RingScalar::sqrt2());
}

TEST(Ring, HalfCanonicalizes) {
    RingScalar h = RingScalar::inv_sqrt2() * RingScalar::inv_sqrt2();
    EXPECT_EQ(h.k(), 2);
    EXPECT_EQ(h.num(), OmegaInt(BigInt(1)));
    RingScalar raw(OmegaInt(BigInt(2)), 4);
    EXPECT_EQ(raw, h);
}

TEST(Ring, ToComplexExamples) {
    auto w = RingScalar::omega().to_complex();
    EXPECT_DOUBLE_EQ(w.real(), 0.7071067811865476);
    EXPECT_DOUBLE_EQ(w.imag(), 0.7071067811865476);
    EXPECT_DOUBLE_EQ(RingScalar::inv_sqrt2().to_complex().real(), 0.7071067811865476);
    auto z = (RingScalar::from_int(1) + RingScalar::omega()).to_complex();
    EXPECT_NEAR(z.real(), 1.7071067811865475, 1e-15);
    EXPECT_NEAR(z.imag(), 0.7071067811865476, 1e-15);
}

TEST(Ring, NormSquared) {
    EXPECT_EQ(RingScalar().norm_sq(), RealQuad::from_int(0));
    // column (1, 1)/sqrt2 has unit norm
    RealQuad n = RingScalar::inv_sqrt2().norm_sq() + RingScalar::inv_sqrt2().norm_sq();
    EXPECT_EQ(n, RealQuad::from_int(1));
}

TEST(Ring, CanonicalizationIdempotentAndHomomorphic) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        RingScalar a = random_scalar(rng), b = random_scalar(rng);
        RingScalar again(a.num(), a.k());
        ASSERT_EQ(again, a);
        if (a.k() > 0) ASSERT_FALSE(a.num().divisible_by_sqrt2());
        auto ca = eval(a), cb = eval(b);
        double scale = 1 + std::abs(ca) * std::abs(cb) + std::abs(ca) + std::abs(cb);
        ASSERT_LT(std::abs((a * b).to_complex() - ca * cb), 1e-12 * scale);
        ASSERT_LT(std::abs((a + b).to_complex() - (ca + cb)), 1e-12 * scale);
        ASSERT_LT(std::abs(a.conj().to_complex() - std::conj(ca)), 1e-12 * scale);
        ASSERT_NEAR(a.norm_sq().to_double(), std::norm(ca), 1e-12 * scale * scale);
    }
}

TEST(Ring, RealQuadOrderMatchesFloat) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-1000, 1000);
    for (int i = 0; i < 5000; ++i) {
        RealQuad a(BigInt(c(rng)), BigInt(c(rng)), 2), b(BigInt(c(rng)), BigInt(c(rng)), 3);
        double da = a.to_double(), db = b.to_double();
        if (std::abs(da - db) > 1e-9) ASSERT_EQ(a < b, da < db);
    }
}

TEST(Ring, GatesExactlyUnitary) {
    for (const auto &m : {H(), S(), T(), X(), Y(), Z(), CZ(), CNOT(0, 1), CNOT(1, 0)}) EXPECT_TRUE(m.is_unitary());
    EXPECT_EQ(H() * H(), RingMatrix::identity(2));
    EXPECT_EQ(T() * T(), S());
    RingMatrix cz3 = mat_tensor(RingMatrix::identity(2), CZ());
    EXPECT_EQ(cz3 * cz3, RingMatrix::identity(8));
}

TEST(Ring, MatrixOpsMatchFloat) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        std::vector<RingScalar> ea, eb;
        for (int i = 0; i < 4; ++i) {
            ea.push_back(random_scalar(rng, 9, 3));
            eb.push_back(random_scalar(rng, 9, 3));
        }
        RingMatrix a(2, 2, ea), b(2, 2, eb);
        auto p = (a * b).to_complex(), t = a.tensor(b).to_complex(), ad = a.adjoint().to_complex();
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::complex<double> s = eval(ea[r * 2]) * eval(eb[c]) + eval(ea[r * 2 + 1]) * eval(eb[2 + c]);
                ASSERT_LT(std::abs(p[r * 2 + c] - s), 1e-9);
                ASSERT_LT(std::abs(ad[r * 2 + c] - std::conj(eval(ea[c * 2 + r]))), 1e-12);
            }
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                auto want = eval(ea[(r / 2) * 2 + c / 2]) * eval(eb[(r % 2) * 2 + c % 2]);
                ASSERT_LT(std::abs(t[r * 4 + c] - want), 1e-9);
            }
    }
}

TEST(Ring, Int64KernelAgreesWithBigInt) {
    std::mt19937_64 rng(9);
    const auto &tab = CliffordTable::get();
    std::uniform_int_distribution<int> pick(0, 23);
    for (int it = 0; it < 500; ++it) {
        RingMatrix a = tab.matrix(pick(rng)) * T() * tab.matrix(pick(rng)) * T() * H();
        RingMatrix b = tab.matrix(pick(rng)) * T() * H() * T();
        M2 prod = M2::from_ring(a) * M2::from_ring(b);
        ASSERT_EQ(prod.to_ring(), a * b);
    }
}
