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

#include "rus/unitary.hpp"

#include <algorithm>
#include <cmath>

#include "rus/clifford.hpp"

namespace rus {

Mat2c mul(const Mat2c &a, const Mat2c &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2c adjoint(const Mat2c &a) { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }

Mat2c identity2() { return {1.0, 0.0, 0.0, 1.0}; }

Mat2c rz(double theta) { return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)}; }

Mat2c rx(double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, Complex(0, -s), Complex(0, -s), c};
}

bool is_unitary(const Mat2c &u, double tol) {
    Mat2c p = mul(adjoint(u), u);
    return std::abs(p[0] - 1.0) <= tol && std::abs(p[3] - 1.0) <= tol && std::abs(p[1]) <= tol &&
           std::abs(p[2]) <= tol;
}

Mat2c to_su2(const Mat2c &u) {
    Complex det = u[0] * u[3] - u[1] * u[2];
    Complex r = std::sqrt(det);
    return {u[0] / r, u[1] / r, u[2] / r, u[3] / r};
}

Mat2c to_mat2c(const RingMatrix &m) { return normalized_phase_canonical(m); }

const Mat2c &clifford_mat(int i) {
    static const std::array<Mat2c, CliffordTable::kSize> mats = [] {
        std::array<Mat2c, CliffordTable::kSize> out;
        for (int c = 0; c < CliffordTable::kSize; ++c) out[c] = to_mat2c(CliffordTable::get().matrix(c));
        return out;
    }();
    return mats.at(i);
}

double distance(const Mat2c &u, const Mat2c &v) { return quat_distance(quaternion(u), quaternion(v)); }

double rz_distance(double delta) {
    // 1 - |cos x| = 2 min(sin^2(x/2), cos^2(x/2)), without cancellation near 0.
    double s = std::abs(std::sin(delta / 4)), c = std::abs(std::cos(delta / 4));
    return std::sqrt(2.0) * std::min(s, c);
}

std::array<double, 4> quaternion(const Mat2c &u) {
    Mat2c s = to_su2(u);
    return {s[0].real(), -s[1].imag(), -s[1].real(), -s[0].imag()};
}

double quat_distance(const std::array<double, 4> &a, const std::array<double, 4> &b) {
    // |q -+ q'|^2 = 2 - 2|<q, q'>| for the better sign.
    double dm = 0, dp = 0;
    for (int i = 0; i < 4; ++i) {
        dm += (a[i] - b[i]) * (a[i] - b[i]);
        dp += (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::sqrt(std::min(dm, dp) / 2);
}

}  // namespace rus
