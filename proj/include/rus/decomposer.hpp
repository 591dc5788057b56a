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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rus/composer.hpp"

namespace rus {

/// A base circuit used by a plan, copied so plans are self-contained.
struct PlanCircuit {
    std::string key;
    std::string circuit;
    double exp_t = 0;
    double var_t = 0;
    Mat2c unitary{};
};

struct DecompositionPlan {
    std::string mode;  // "axial", "axial-triple" or "nonaxial"
    Mat2c target{};
    double eps = 0;
    double achieved_distance = 0;
    /// Matrix-order product; Op::base indexes `circuits`.
    std::vector<Op> ops;
    std::vector<PlanCircuit> circuits;
    double exp_t = 0;
    double var_t = 0;
    double chebyshev_95 = 0;

    int rus_count() const;
};

/// sqrt(var / 0.05): with k = sqrt(20), P(|actual - expected| >= k sigma) <= 1/20.
double chebyshev_95(double var_t);

Mat2c plan_product(const DecompositionPlan &p);

/// Plan for R_Z(theta). Throws NoEntryWithinEps.
DecompositionPlan decompose_axial(const AxialDb &db, double theta, double eps);

enum class DecomposeMode { AxialTriple, NonAxial };

/// Axial-triple mode needs `axial` and spends eps/3 on each Euler angle; non-axial mode needs `nonaxial`.
DecompositionPlan decompose_unitary(const AxialDb *axial, const NonAxialDb *nonaxial, const Mat2c &u, double eps,
                                    DecomposeMode mode);

struct ScalingPoint {
    double eps = 0;
    std::size_t samples = 0;
    double mean_exp_t = 0;
    double var_exp_t = 0;   // sample variance of exp_t across targets
    double mean_var_t = 0;  // mean per-target variance of the T count
    double mean_chebyshev_95 = 0;
};

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // root mean square
    bool degenerate = false;
    uint64_t seed = 0;
    std::size_t n_samples = 0;
    std::vector<ScalingPoint> points;
};

/// Least-squares fit of mean exp_t against log2(1/eps) over uniform angles in [0, pi/4].
/// Throws NoEntryWithinEps when some eps is not serviceable.
ScalingFit fit_scaling(const AxialDb &db, const std::vector<double> &eps_list, std::size_t n_samples, uint64_t seed);

/// Fit over (x, y) pairs; degenerate when fewer than two distinct x or constant y.
ScalingFit least_squares(const std::vector<double> &x, const std::vector<double> &y);

struct CostModel {
    std::string name;
    std::string formula;
    double value = 0;
    std::string note;
};

/// Literature cost formulas evaluated at eps. theta enables the gearbox models; delta the hybrid one.
std::vector<CostModel> reference_costs(double eps, std::optional<double> theta = std::nullopt,
                                       std::optional<double> delta = std::nullopt);

/// 5.26 / t_p * log_5(p): above 1 means V gates of norm p beat V3 in the BGS scheme.
double v_ratio(int p, double t_p);

}  // namespace rus
