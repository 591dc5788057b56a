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

#include "rus/ring_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace rus {

RingMatrix::RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RingMatrix::RingMatrix(std::size_t rows, std::size_t cols, std::vector<RingScalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("RingMatrix: entry count does not match shape");
}

RingMatrix RingMatrix::identity(std::size_t n) {
    RingMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingScalar::from_int(1);
    return m;
}

RingMatrix RingMatrix::from_2x2(const OmegaInt &e00, const OmegaInt &e01, const OmegaInt &e10,
                                const OmegaInt &e11, int k) {
    return RingMatrix(2, 2, {RingScalar(e00, k), RingScalar(e01, k), RingScalar(e10, k), RingScalar(e11, k)});
}

RingMatrix RingMatrix::operator*(const RingMatrix &o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RingMatrix: dimension mismatch in product");
    RingMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < o.cols_; ++j) {
            // Accumulate over a common denominator, canonicalize once.
            int k = 0;
            for (std::size_t l = 0; l < cols_; ++l) {
                const auto &x = (*this)(i, l);
                const auto &y = o(l, j);
                if (!x.is_zero() && !y.is_zero()) k = std::max(k, x.k() + y.k());
            }
            OmegaInt acc;
            for (std::size_t l = 0; l < cols_; ++l) {
                const auto &x = (*this)(i, l);
                const auto &y = o(l, j);
                if (x.is_zero() || y.is_zero()) continue;
                RingScalar p = x * y;
                acc += p.num_at(k);
            }
            r(i, j) = RingScalar(std::move(acc), k);
        }
    }
    return r;
}

RingMatrix RingMatrix::operator+(const RingMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RingMatrix: dimension mismatch in sum");
    RingMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

RingMatrix RingMatrix::scaled(const RingScalar &s) const {
    RingMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
    return r;
}

bool RingMatrix::operator==(const RingMatrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RingMatrix RingMatrix::adjoint() const {
    RingMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
}

RingMatrix RingMatrix::tensor(const RingMatrix &o) const {
    RingMatrix r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t k = 0; k < o.rows_; ++k)
                for (std::size_t l = 0; l < o.cols_; ++l)
                    r(i * o.rows_ + k, j * o.cols_ + l) = (*this)(i, j) * o(k, l);
    return r;
}

RingMatrix RingMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("RingMatrix::block out of range");
    RingMatrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

bool RingMatrix::is_zero() const {
    for (const auto &e : data_)
        if (!e.is_zero()) return false;
    return true;
}

bool RingMatrix::is_unitary() const {
    if (rows_ != cols_) return false;
    return adjoint() * (*this) == identity(rows_);
}

int RingMatrix::max_k() const {
    int k = 0;
    for (const auto &e : data_) k = std::max(k, e.k());
    return k;
}

RealQuad RingMatrix::frobenius_sq() const {
    RealQuad acc;
    for (const auto &e : data_) acc = acc + e.norm_sq();
    return acc;
}

std::optional<int> RingMatrix::equal_up_to_omega(const RingMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return std::nullopt;
    for (int j = 0; j < 8; ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < data_.size() && ok; ++i) ok = data_[i] == o.data_[i].times_omega(j);
        if (ok) return j;
    }
    return std::nullopt;
}

bool RingMatrix::proportional_to(const RingMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (is_zero() || o.is_zero()) return false;
    // Pick a pivot where this is nonzero; proportionality then requires
    // this(p) * o(i) == o(p) * this(i) for every entry i.
    std::size_t p = 0;
    while (data_[p].is_zero()) ++p;
    if (o.data_[p].is_zero()) return false;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (data_[p] * o.data_[i] != o.data_[p] * data_[i]) return false;
    }
    return true;
}

bool RingMatrix::is_unitary_multiple() const {
    if (rows_ != cols_) return false;
    RingMatrix g = adjoint() * (*this);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j) {
                if (g(i, i) != g(0, 0)) return false;
            } else if (!g(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

std::vector<Complex> RingMatrix::to_complex() const {
    std::vector<Complex> out;
    out.reserve(data_.size());
    for (const auto &e : data_) out.push_back(e.to_complex());
    return out;
}

std::string RingMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
}

RingMatrix mat_mul(const RingMatrix &a, const RingMatrix &b) { return a * b; }
RingMatrix mat_adjoint(const RingMatrix &a) { return a.adjoint(); }
RingMatrix mat_tensor(const RingMatrix &a, const RingMatrix &b) { return a.tensor(b); }

}  // namespace rus
