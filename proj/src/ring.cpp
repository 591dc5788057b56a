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

#include "rus/ring.hpp"

#include <cmath>
#include <stdexcept>

namespace rus {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Converts a big integer to double after dropping `shift` low bits.
double shifted_to_double(const BigInt &v, unsigned shift) {
    if (shift == 0) return v.convert_to<double>();
    BigInt s = v >= 0 ? BigInt(v >> shift) : BigInt(-((-v) >> shift));
    return s.convert_to<double>();
}

unsigned bit_length(const BigInt &v) {
    if (v == 0) return 0;
    BigInt m = v < 0 ? BigInt(-v) : v;
    return static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
}

}  // namespace

RealQuad::RealQuad(BigInt x, BigInt y, int k) : x_(std::move(x)), y_(std::move(y)), k_(k) {
    canonicalize();
}

void RealQuad::canonicalize() {
    if (x_ == 0 && y_ == 0) {
        k_ = 0;
        return;
    }
    while (k_ > 0 && (x_ % 2) == 0 && (y_ % 2) == 0) {
        x_ /= 2;
        y_ /= 2;
        --k_;
    }
    while (k_ < 0) {
        x_ *= 2;
        y_ *= 2;
        ++k_;
    }
}

int RealQuad::sign() const { return quad_sign(x_, y_); }

double RealQuad::to_double() const {
    unsigned bits = std::max(bit_length(x_), bit_length(y_));
    unsigned shift = bits > 60 ? bits - 60 : 0;
    double v = shifted_to_double(x_, shift) + shifted_to_double(y_, shift) * std::sqrt(2.0);
    return std::ldexp(v, static_cast<int>(shift) - k_);
}

RealQuad RealQuad::operator+(const RealQuad &o) const {
    int k = std::max(k_, o.k_);
    BigInt x = (x_ << (k - k_)) + (o.x_ << (k - o.k_));
    BigInt y = (y_ << (k - k_)) + (o.y_ << (k - o.k_));
    return RealQuad(std::move(x), std::move(y), k);
}

RealQuad RealQuad::operator-(const RealQuad &o) const { return *this + (-o); }

RealQuad RealQuad::operator*(const RealQuad &o) const {
    return RealQuad(x_ * o.x_ + 2 * y_ * o.y_, x_ * o.y_ + y_ * o.x_, k_ + o.k_);
}

std::string RealQuad::str() const {
    std::string s = "(" + x_.str() + (y_ < 0 ? " - " : " + ") + (y_ < 0 ? BigInt(-y_) : y_).str() + "*sqrt2)";
    if (k_ > 0) s += "/2^" + std::to_string(k_);
    return s;
}

RingScalar::RingScalar(OmegaInt num, int k) : num_(std::move(num)), k_(k) { canonicalize(); }

void RingScalar::canonicalize() {
    if (num_.is_zero()) {
        k_ = 0;
        return;
    }
    while (k_ > 0 && num_.divisible_by_sqrt2()) {
        num_ = num_.div_sqrt2();
        --k_;
    }
    while (k_ < 0) {
        num_ = num_.times_sqrt2();
        ++k_;
    }
}

OmegaInt RingScalar::num_at(int target) const {
    if (target < k_) throw std::invalid_argument("RingScalar::num_at: target below current exponent");
    OmegaInt n = num_;
    int diff = target - k_;
    // sqrt2^2 = 2 lets us scale two steps at a time.
    BigInt scale = BigInt(1) << (diff / 2);
    n = n * scale;
    if (diff % 2) n = n.times_sqrt2();
    return n;
}

RingScalar RingScalar::operator*(const RingScalar &o) const { return RingScalar(num_ * o.num_, k_ + o.k_); }

RingScalar RingScalar::operator+(const RingScalar &o) const {
    int k = std::max(k_, o.k_);
    return RingScalar(num_at(k) + o.num_at(k), k);
}

RingScalar RingScalar::operator-(const RingScalar &o) const { return *this + (-o); }

RealQuad RingScalar::norm_sq() const {
    BigInt x, y;
    num_.norm_sq(x, y);
    // |num / sqrt2^k|^2 = (x + y sqrt2) / 2^k
    return RealQuad(std::move(x), std::move(y), k_);
}

std::complex<double> omega_to_complex(const OmegaInt &num, int k) {
    unsigned bits = std::max({bit_length(num.a), bit_length(num.b), bit_length(num.c), bit_length(num.d)});
    unsigned shift = bits > 60 ? bits - 60 : 0;
    double a = shifted_to_double(num.a, shift);
    double b = shifted_to_double(num.b, shift);
    double c = shifted_to_double(num.c, shift);
    double d = shifted_to_double(num.d, shift);
    // w = (1+i)/sqrt2, w^3 = (-1+i)/sqrt2
    double re = std::fma(b - d, kInvSqrt2, a);
    double im = std::fma(b + d, kInvSqrt2, c);
    // scale by 2^shift / sqrt2^k
    int e2 = static_cast<int>(shift) - k / 2;
    double s = (k % 2) ? kInvSqrt2 : 1.0;
    std::complex<double> out(std::ldexp(re * s, e2), std::ldexp(im * s, e2));
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw std::overflow_error("omega_to_complex: value exceeds double range");
    }
    return out;
}

std::complex<double> RingScalar::to_complex() const { return omega_to_complex(num_, k_); }

std::string RingScalar::str() const {
    std::string s = "(" + num_.a.str() + "," + num_.b.str() + "," + num_.c.str() + "," + num_.d.str() + ")";
    if (k_ > 0) s += "/sqrt2^" + std::to_string(k_);
    return s;
}

}  // namespace rus
