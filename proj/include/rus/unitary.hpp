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

#include <array>

#include "rus/analyzer.hpp"

namespace rus {

// Floating-point 2x2 helpers. Matrices are row-major {m00, m01, m10, m11}.

Mat2c mul(const Mat2c &a, const Mat2c &b);
Mat2c adjoint(const Mat2c &a);
Mat2c identity2();
/// diag(e^{-i theta/2}, e^{i theta/2}).
Mat2c rz(double theta);
Mat2c rx(double theta);
bool is_unitary(const Mat2c &u, double tol = 1e-10);
/// Unit-determinant representative divided by a square root of det(u).
Mat2c to_su2(const Mat2c &u);
/// Normalized float matrix of a nonzero exact block.
Mat2c to_mat2c(const RingMatrix &m);
/// Float matrix of Clifford table entry i.
const Mat2c &clifford_mat(int i);

/// sqrt((2 - |Tr(U^dagger V)|) / 2) for unitary arguments, computed through quaternions.
double distance(const Mat2c &u, const Mat2c &v);
/// distance(R_Z(a), R_Z(a + delta)), evaluated in closed form.
double rz_distance(double delta);

/// Unit quaternion (w, x, y, z) of the SU(2) representative, u = w I - i(xX + yY + zZ).
/// Defined up to sign; |<q(u), q(v)>| = |Tr(U^dagger V)| / 2.
std::array<double, 4> quaternion(const Mat2c &u);
/// distance() from quaternions.
double quat_distance(const std::array<double, 4> &a, const std::array<double, 4> &b);

}  // namespace rus
