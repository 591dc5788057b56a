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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rus/kdtree.hpp"
#include "rus/search.hpp"
#include "rus/unitary.hpp"

namespace rus {

/// A base RUS circuit as seen by the composition layer.
struct BaseRef {
    std::string key;
    std::string circuit;  // Circuit::encode()
    int raw_t = 0;
    double p = 0;
    double exp_t = 0;
    double var_t = 0;
    Mat2c unitary{};
};

/// Base records in key order.
std::vector<BaseRef> base_refs(const BaseDatabase &db);

/// Product term of a recipe: a Clifford table index or a base circuit index.
struct Op {
    int cliff = -1;
    int base = -1;
    bool operator==(const Op &o) const = default;
};

/// Folds adjacent Cliffords and drops identities.
std::vector<Op> simplify_ops(const std::vector<Op> &ops);
/// Float product of ops (matrix order).
Mat2c ops_product(const std::vector<Op> &ops, const std::vector<BaseRef> &bases);

class NoEntryWithinEps : public std::runtime_error {
   public:
    NoEntryWithinEps(const std::string &what, double nearest) : std::runtime_error(what), nearest_(nearest) {}
    /// Distance to the closest entry that was considered.
    double nearest() const { return nearest_; }

   private:
    double nearest_;
};

struct DbHeader {
    std::string kind;  // "axial" or "nonaxial"
    double max_exp_t = 0;
    std::string base_hash;
    std::string tool_version;
    bool operator==(const DbHeader &o) const = default;
};

// --- Axial rotations ----------------------------------------------------------

/// R_Z(theta) is proportional to S^s_power X^flip R_Z(reduced) X^flip.
struct AngleFrame {
    int s_power = 0;
    bool flip = false;
    bool operator==(const AngleFrame &o) const = default;
};

struct ReducedAngle {
    double theta = 0;  // in [0, pi/4]
    AngleFrame frame;
};

ReducedAngle reduce_angle(double theta);
/// Clifford indices (l, r) with R_Z(theta) proportional to C_l R_Z(reduced) C_r.
std::pair<int, int> frame_cliffords(const AngleFrame &f);
Mat2c apply_frame(const AngleFrame &f, const Mat2c &m);

/// R_Z(phi) is proportional to C_left U_base C_right, phi in (0, pi/4].
struct AxialGenerator {
    int base = 0;
    double phi = 0;
    int left = 0, right = 0;
    bool operator==(const AxialGenerator &o) const = default;
};

/// Cheapest base circuit per distinct reduced angle.
std::vector<AxialGenerator> axial_generators(const std::vector<BaseRef> &bases);

struct AxialStep {
    int generator = 0;
    int sign = 1;
    bool operator==(const AxialStep &o) const = default;
};

struct AxialEntry {
    double theta = 0;
    double exp_t = 0;
    double var_t = 0;
    std::vector<AxialStep> recipe;  // empty for the identity
    /// Sum of signed generator angles; reduce_angle(raw) = (theta, frame).
    double raw = 0;
    AngleFrame frame;
    bool operator==(const AxialEntry &o) const = default;
};

struct AxialDb {
    DbHeader header;
    std::vector<BaseRef> bases;
    std::vector<AxialGenerator> generators;
    std::vector<AxialEntry> entries;  // strictly increasing theta, entries[0] is the identity
};

constexpr double kAngleDedupTol = 1e-12;

/// All sums of signed generator angles with total expected T at most max_exp_t, keeping the
/// cheapest recipe per reduced angle. threads == 1 runs the serial reference.
AxialDb expand_axial(const std::vector<BaseRef> &bases, double max_exp_t, int threads = 1,
                     const std::string &base_hash = "");

/// Ops whose product is proportional to R_Z(entry.theta).
std::vector<Op> axial_ops(const AxialDb &db, const AxialEntry &e);

struct AxialMatch {
    std::size_t index = 0;
    double distance = 0;
    ReducedAngle target;
};

/// Cheapest entry within eps of R_Z(theta) (ties: smaller distance, then lower index).
AxialMatch lookup_axial(const AxialDb &db, double theta, double eps);
/// Same contract by scanning every entry.
AxialMatch lookup_axial_linear(const AxialDb &db, double theta, double eps);

struct DensityReport {
    double max_exp_t = 0;
    std::size_t size = 0;
    double mean_gap = 0;
    double max_gap = 0;
};

/// Neighbor distances over [0, pi/4]; the last entry's neighbor is its own reflection about pi/4.
DensityReport axial_density(const AxialDb &db);

// --- Non-axial unitaries ----------------------------------------------------------

struct Euler {
    double t1 = 0, t2 = 0, t3 = 0;
    double phase = 0;
};

/// u = e^{i phase} R_Z(t1) R_X(t2) R_Z(t3), t1 and t3 in [0, 2pi), t2 in [0, pi].
Euler euler_decompose(const Mat2c &u);
Mat2c euler_matrix(double t1, double t2, double t3);

struct ClassRep {
    std::array<double, 3> euler{};  // t1, t3 in [0, pi/2)
    int left = 0, right = 0;        // u proportional to C_left E(euler) C_right
};

constexpr double kRepTol = 1e-10;

ClassRep class_representative(const Mat2c &u);
/// Lexicographic order with tolerance kRepTol per coordinate.
bool rep_less(const std::array<double, 3> &a, const std::array<double, 3> &b);

struct NonAxialStep {
    int base = 0;
    int cliff = -1;  // Clifford applied after the base, -1 for the last step
    bool operator==(const NonAxialStep &o) const = default;
};

struct NonAxialEntry {
    std::array<double, 3> euler{};
    Mat2c unitary{};  // euler_matrix(euler)
    std::vector<NonAxialStep> recipe;
    int left = 0, right = 0;  // recipe product proportional to C_left unitary C_right
    double exp_t = 0;
    double var_t = 0;
};

struct NonAxialDb {
    DbHeader header;
    std::vector<BaseRef> bases;
    std::vector<NonAxialEntry> entries;  // entries[0] is the identity class
    KdTree<4> index;                     // quaternions of entries[i].unitary

    void build_index();
};

NonAxialDb expand_nonaxial(const std::vector<BaseRef> &bases, double max_exp_t, int threads = 1,
                           const std::string &base_hash = "");

Mat2c recipe_product(const NonAxialDb &db, const NonAxialEntry &e);
/// Ops whose product is proportional to entries[i].unitary.
std::vector<Op> nonaxial_ops(const NonAxialDb &db, std::size_t i);

struct NonAxialMatch {
    std::size_t index = 0;
    double distance = 0;
    int left = 0, right = 0;  // target close to C_left entry.unitary C_right
};

/// Queries all 576 Clifford-pair forms of u, so representative boundary jumps cannot hide neighbors.
NonAxialMatch lookup_nonaxial(const NonAxialDb &db, const Mat2c &u, double eps);
NonAxialMatch lookup_nonaxial_linear(const NonAxialDb &db, const Mat2c &u, double eps);

}  // namespace rus
