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

// Machine-word 2x2 matrices over Z[w]/sqrt2^k for the search hot loop.
// Every operation that could grow past the guard throws instead of wrapping.

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "rus/ring.hpp"
#include "rus/ring_matrix.hpp"

namespace rus {

using OI64 = BasicOmegaInt<int64_t>;

// Components above this are rejected so products and squared norms stay in range.
constexpr int64_t kComponentGuard = int64_t(1) << 26;

inline bool oi_within_guard(const OI64 &z) {
    return std::llabs(z.a) < kComponentGuard && std::llabs(z.b) < kComponentGuard &&
           std::llabs(z.c) < kComponentGuard && std::llabs(z.d) < kComponentGuard;
}

/// 2x2 matrix num/sqrt2^k, row-major, with a shared denominator exponent.
struct M2 {
    std::array<OI64, 4> e{};
    int k = 0;

    static M2 identity() {
        M2 m;
        m.e[0] = OI64(1);
        m.e[3] = OI64(1);
        return m;
    }

    bool is_zero() const { return e[0].is_zero() && e[1].is_zero() && e[2].is_zero() && e[3].is_zero(); }

    /// Lowers k while every entry is divisible by sqrt2.
    void reduce() {
        if (is_zero()) {
            k = 0;
            return;
        }
        while (k > 0 && e[0].divisible_by_sqrt2() && e[1].divisible_by_sqrt2() && e[2].divisible_by_sqrt2() &&
               e[3].divisible_by_sqrt2()) {
            for (auto &z : e) z = z.div_sqrt2();
            --k;
        }
    }

    M2 operator*(const M2 &o) const {
        M2 r;
        r.e[0] = e[0] * o.e[0] + e[1] * o.e[2];
        r.e[1] = e[0] * o.e[1] + e[1] * o.e[3];
        r.e[2] = e[2] * o.e[0] + e[3] * o.e[2];
        r.e[3] = e[2] * o.e[1] + e[3] * o.e[3];
        r.k = k + o.k;
        r.reduce();
        r.check_guard();
        return r;
    }

    M2 adjoint() const {
        M2 r;
        r.e[0] = e[0].conj();
        r.e[1] = e[2].conj();
        r.e[2] = e[1].conj();
        r.e[3] = e[3].conj();
        r.k = k;
        return r;
    }

    M2 times_omega(int j) const {
        M2 r = *this;
        for (auto &z : r.e) z = z.times_omega(j);
        return r;
    }

    bool operator==(const M2 &o) const { return k == o.k && e == o.e; }

    void check_guard() const {
        for (const auto &z : e)
            if (!oi_within_guard(z)) throw std::overflow_error("M2: component exceeds machine-word guard");
    }

    /// Key identifying the matrix up to a global phase w^j (the minimum over the 8 rotations).
    std::array<int64_t, 17> phase_key() const {
        std::array<int64_t, 17> best{};
        bool first = true;
        for (int j = 0; j < 8; ++j) {
            M2 r = times_omega(j);
            std::array<int64_t, 17> cur;
            for (int i = 0; i < 4; ++i) {
                cur[4 * i] = r.e[i].a;
                cur[4 * i + 1] = r.e[i].b;
                cur[4 * i + 2] = r.e[i].c;
                cur[4 * i + 3] = r.e[i].d;
            }
            cur[16] = k;
            if (first || cur < best) best = cur;
            first = false;
        }
        return best;
    }

    RingMatrix to_ring() const {
        std::vector<RingScalar> v;
        v.reserve(4);
        for (const auto &z : e) v.emplace_back(OmegaInt(BigInt(z.a), BigInt(z.b), BigInt(z.c), BigInt(z.d)), k);
        return RingMatrix(2, 2, std::move(v));
    }

    static M2 from_ring(const RingMatrix &m);
};

inline M2 M2::from_ring(const RingMatrix &m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("M2::from_ring: expected 2x2");
    M2 r;
    r.k = m.max_k();
    for (int i = 0; i < 4; ++i) {
        OmegaInt n = m.entries()[i].num_at(r.k);
        auto narrow = [](const BigInt &v) {
            if (v >= kComponentGuard || v <= -kComponentGuard)
                throw std::overflow_error("M2::from_ring: component exceeds machine-word guard");
            return v.convert_to<int64_t>();
        };
        r.e[i] = OI64(narrow(n.a), narrow(n.b), narrow(n.c), narrow(n.d));
    }
    r.reduce();
    return r;
}

struct ArrayKeyHash {
    template <std::size_t N>
    std::size_t operator()(const std::array<int64_t, N> &a) const {
        // FNV-1a over the raw words.
        uint64_t h = 1469598103934665603ull;
        for (int64_t v : a) {
            h ^= static_cast<uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace rus
