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
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rus/ring.hpp"

namespace rus {

using Complex = std::complex<double>;

/// Dense matrix over Z[w, 1/sqrt2]. Row-major.
class RingMatrix {
   public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols);
    RingMatrix(std::size_t rows, std::size_t cols, std::vector<RingScalar> entries);

    static RingMatrix identity(std::size_t n);
    /// Builds a 2x2 matrix from integer-coefficient entries over a shared sqrt2^k.
    static RingMatrix from_2x2(const OmegaInt &e00, const OmegaInt &e01, const OmegaInt &e10, const OmegaInt &e11,
                               int k);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const RingScalar &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    RingScalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const std::vector<RingScalar> &entries() const { return data_; }

    RingMatrix operator*(const RingMatrix &o) const;
    RingMatrix operator+(const RingMatrix &o) const;
    RingMatrix scaled(const RingScalar &s) const;
    bool operator==(const RingMatrix &o) const;
    bool operator!=(const RingMatrix &o) const { return !(*this == o); }

    RingMatrix adjoint() const;
    RingMatrix tensor(const RingMatrix &o) const;
    RingMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool is_zero() const;
    bool is_unitary() const;
    /// Largest denominator exponent over all entries.
    int max_k() const;
    /// Sum of |entry|^2 over all entries.
    RealQuad frobenius_sq() const;

    /// True iff this == w^j * o for some j; returns that j.
    std::optional<int> equal_up_to_omega(const RingMatrix &o) const;
    /// True iff this == lambda * o for a nonzero complex lambda (exact cross-multiplication).
    bool proportional_to(const RingMatrix &o) const;
    /// True iff M^dagger M is a multiple of the identity.
    bool is_unitary_multiple() const;

    std::vector<Complex> to_complex() const;
    std::string str() const;

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RingScalar> data_;
};

RingMatrix mat_mul(const RingMatrix &a, const RingMatrix &b);
RingMatrix mat_adjoint(const RingMatrix &a);
RingMatrix mat_tensor(const RingMatrix &a, const RingMatrix &b);

}  // namespace rus
