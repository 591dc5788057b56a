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

#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rus {

using BigInt = boost::multiprecision::cpp_int;

/// Element a + b*w + c*w^2 + d*w^3 of Z[w], w = exp(i*pi/4), reduced by w^4 = -1.
///
/// The integer type is a template parameter so the search kernel can run on
/// machine words while everything user-facing uses arbitrary precision.
template <class Int>
struct BasicOmegaInt {
    Int a{0}, b{0}, c{0}, d{0};

    BasicOmegaInt() = default;
    BasicOmegaInt(Int a_, Int b_, Int c_, Int d_) : a(a_), b(b_), c(c_), d(d_) {}
    explicit BasicOmegaInt(Int v) : a(v) {}

    static BasicOmegaInt omega_pow(int j) {
        j = ((j % 8) + 8) % 8;
        BasicOmegaInt r;
        Int s = j >= 4 ? Int(-1) : Int(1);
        switch (j % 4) {
            case 0: r.a = s; break;
            case 1: r.b = s; break;
            case 2: r.c = s; break;
            default: r.d = s; break;
        }
        return r;
    }
    /// w - w^3
    static BasicOmegaInt sqrt2() { return {Int(0), Int(1), Int(0), Int(-1)}; }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    BasicOmegaInt operator+(const BasicOmegaInt &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    BasicOmegaInt operator-(const BasicOmegaInt &o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    BasicOmegaInt operator-() const { return {-a, -b, -c, -d}; }
    BasicOmegaInt &operator+=(const BasicOmegaInt &o) { a += o.a; b += o.b; c += o.c; d += o.d; return *this; }
    BasicOmegaInt &operator-=(const BasicOmegaInt &o) { a -= o.a; b -= o.b; c -= o.c; d -= o.d; return *this; }
    BasicOmegaInt operator*(const BasicOmegaInt &o) const {
        return {
            a * o.a - b * o.d - c * o.c - d * o.b,
            a * o.b + b * o.a - c * o.d - d * o.c,
            a * o.c + b * o.b + c * o.a - d * o.d,
            a * o.d + b * o.c + c * o.b + d * o.a,
        };
    }
    BasicOmegaInt operator*(const Int &s) const { return {a * s, b * s, c * s, d * s}; }
    bool operator==(const BasicOmegaInt &o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const BasicOmegaInt &o) const { return !(*this == o); }

    /// Multiplication by w^j (a rotation of the coefficient vector with sign flips).
    BasicOmegaInt times_omega(int j) const {
        switch (((j % 8) + 8) % 8) {
            case 0: return *this;
            case 1: return {-d, a, b, c};
            case 2: return {-c, -d, a, b};
            case 3: return {-b, -c, -d, a};
            case 4: return {-a, -b, -c, -d};
            case 5: return {d, -a, -b, -c};
            case 6: return {c, d, -a, -b};
            default: return {b, c, d, -a};
        }
    }
    /// Complex conjugation: w -> w^7 = -w^3.
    BasicOmegaInt conj() const { return {a, -d, -c, -b}; }
    /// Galois automorphism sqrt2 -> -sqrt2 (w -> w^5 = -w).
    BasicOmegaInt sqrt2_conj() const { return {a, -b, c, -d}; }

    /// |z|^2 = x + y*sqrt2 with x = a^2+b^2+c^2+d^2, y = ab+bc+cd-da.
    void norm_sq(Int &x, Int &y) const {
        x = a * a + b * b + c * c + d * d;
        y = a * b + b * c + c * d - d * a;
    }

    bool divisible_by_sqrt2() const {
        auto odd = [](const Int &v) { return (v % 2) != 0; };
        return odd(a) == odd(c) && odd(b) == odd(d);
    }
    /// Exact division by sqrt2; requires divisible_by_sqrt2().
    BasicOmegaInt div_sqrt2() const { return {(b - d) / 2, (a + c) / 2, (b + d) / 2, (c - a) / 2}; }
    BasicOmegaInt times_sqrt2() const { return {b - d, a + c, b + d, c - a}; }
};

using OmegaInt = BasicOmegaInt<BigInt>;

/// Exact real number (x + y*sqrt2) / 2^k. Used for squared norms and probabilities.
class RealQuad {
   public:
    RealQuad() = default;
    RealQuad(BigInt x, BigInt y, int k);
    static RealQuad from_int(long v) { return RealQuad(BigInt(v), BigInt(0), 0); }

    const BigInt &x() const { return x_; }
    const BigInt &y() const { return y_; }
    int k() const { return k_; }

    /// Exact sign of the value, decided with integer comparisons only.
    int sign() const;
    bool is_zero() const { return x_ == 0 && y_ == 0; }
    double to_double() const;

    RealQuad operator+(const RealQuad &o) const;
    RealQuad operator-(const RealQuad &o) const;
    RealQuad operator*(const RealQuad &o) const;
    RealQuad operator-() const { return RealQuad(-x_, -y_, k_); }
    bool operator==(const RealQuad &o) const { return x_ == o.x_ && y_ == o.y_ && k_ == o.k_; }
    bool operator!=(const RealQuad &o) const { return !(*this == o); }
    bool operator<(const RealQuad &o) const { return (*this - o).sign() < 0; }
    bool operator<=(const RealQuad &o) const { return (*this - o).sign() <= 0; }

    std::string str() const;

   private:
    void canonicalize();
    BigInt x_{0}, y_{0};
    int k_ = 0;
};

/// Sign of x + y*sqrt2 for any integer type, without floating point.
template <class Int>
int quad_sign(const Int &x, const Int &y) {
    int sx = x > 0 ? 1 : (x < 0 ? -1 : 0);
    int sy = y > 0 ? 1 : (y < 0 ? -1 : 0);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // Opposite signs: compare x^2 with 2y^2.
    Int lhs = x * x;
    Int rhs = 2 * y * y;
    if (lhs == rhs) return 0;  // unreachable for integers (sqrt2 irrational) unless both zero
    return lhs > rhs ? sx : sy;
}

/// Exact element num / sqrt2^k of Z[w, 1/sqrt2], kept in canonical form.
class RingScalar {
   public:
    RingScalar() = default;
    RingScalar(OmegaInt num, int k);
    static RingScalar from_int(long v) { return RingScalar(OmegaInt(BigInt(v)), 0); }
    static RingScalar omega(int j = 1) { return RingScalar(OmegaInt::omega_pow(j), 0); }
    static RingScalar inv_sqrt2() { return RingScalar(OmegaInt(BigInt(1)), 1); }
    static RingScalar sqrt2() { return RingScalar(OmegaInt::sqrt2(), 0); }

    const OmegaInt &num() const { return num_; }
    int k() const { return k_; }
    bool is_zero() const { return num_.is_zero(); }

    RingScalar operator*(const RingScalar &o) const;
    RingScalar operator+(const RingScalar &o) const;
    RingScalar operator-(const RingScalar &o) const;
    RingScalar operator-() const { return RingScalar(-num_, k_); }
    RingScalar &operator+=(const RingScalar &o) { return *this = *this + o; }
    bool operator==(const RingScalar &o) const { return k_ == o.k_ && num_ == o.num_; }
    bool operator!=(const RingScalar &o) const { return !(*this == o); }

    RingScalar conj() const { return RingScalar(num_.conj(), k_); }
    RingScalar times_omega(int j) const { return RingScalar(num_.times_omega(j), k_); }
    /// Numerator rescaled to denominator sqrt2^target (target >= k()).
    OmegaInt num_at(int target) const;

    RealQuad norm_sq() const;
    std::complex<double> to_complex() const;
    std::string str() const;

    /// Re-run canonicalization on an arbitrary (num, k) pair.
    static RingScalar canonical(OmegaInt num, int k) { return RingScalar(std::move(num), k); }

   private:
    void canonicalize();
    OmegaInt num_;
    int k_ = 0;
};

/// Exact value of (a + b*w + c*w^2 + d*w^3) / sqrt2^k in double precision, with
/// scaled evaluation when components exceed the double-exact integer range.
std::complex<double> omega_to_complex(const OmegaInt &num, int k);

}  // namespace rus
