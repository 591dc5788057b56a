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

#include "rus/decomposer.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rus/clifford.hpp"

namespace rus {

namespace {

constexpr double kVerifySlack = 1e-12;

// Copies the base circuits referenced by ops into the plan and rewrites the indices.
void attach(DecompositionPlan &plan, const std::vector<Op> &ops, const std::vector<BaseRef> &bases) {
    std::map<int, int> remap;
    for (Op op : ops) {
        if (op.base >= 0) {
            auto it = remap.find(op.base);
            if (it == remap.end()) {
                const BaseRef &b = bases.at(op.base);
                it = remap.emplace(op.base, static_cast<int>(plan.circuits.size())).first;
                plan.circuits.push_back({b.key, b.circuit, b.exp_t, b.var_t, b.unitary});
            }
            op.base = it->second;
        }
        plan.ops.push_back(op);
    }
}

void finalize(DecompositionPlan &plan) {
    plan.ops = simplify_ops(plan.ops);
    plan.chebyshev_95 = chebyshev_95(plan.var_t);
    plan.achieved_distance = distance(plan_product(plan), plan.target);
    if (plan.achieved_distance > plan.eps + kVerifySlack)
        throw std::logic_error("decomposition plan failed verification: distance " +
                               std::to_string(plan.achieved_distance) + " > eps " + std::to_string(plan.eps));
}

void append_plan(DecompositionPlan &dst, const DecompositionPlan &src) {
    int offset = static_cast<int>(dst.circuits.size());
    for (const auto &c : src.circuits) dst.circuits.push_back(c);
    for (Op op : src.ops) {
        if (op.base >= 0) op.base += offset;
        dst.ops.push_back(op);
    }
    dst.exp_t += src.exp_t;
    dst.var_t += src.var_t;
}

}  // namespace

int DecompositionPlan::rus_count() const {
    int n = 0;
    for (const Op &op : ops) n += op.base >= 0;
    return n;
}

double chebyshev_95(double var_t) { return std::sqrt(var_t / 0.05); }

Mat2c plan_product(const DecompositionPlan &p) {
    Mat2c m = identity2();
    for (const Op &op : p.ops) m = mul(m, op.base >= 0 ? p.circuits.at(op.base).unitary : clifford_mat(op.cliff));
    return m;
}

DecompositionPlan decompose_axial(const AxialDb &db, double theta, double eps) {
    AxialMatch m = lookup_axial(db, theta, eps);
    const AxialEntry &e = db.entries[m.index];
    auto [l, r] = frame_cliffords(m.target.frame);
    std::vector<Op> ops{{l, -1}};
    for (const Op &op : axial_ops(db, e)) ops.push_back(op);
    ops.push_back({r, -1});

    DecompositionPlan plan;
    plan.mode = "axial";
    plan.target = rz(theta);
    plan.eps = eps;
    attach(plan, ops, db.bases);
    plan.exp_t = e.exp_t;
    plan.var_t = e.var_t;
    finalize(plan);
    return plan;
}

DecompositionPlan decompose_unitary(const AxialDb *axial, const NonAxialDb *nonaxial, const Mat2c &u, double eps,
                                    DecomposeMode mode) {
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("target is not unitary");
    DecompositionPlan plan;
    plan.target = u;
    plan.eps = eps;
    if (mode == DecomposeMode::AxialTriple) {
        if (!axial) throw std::invalid_argument("axial-triple mode needs an axial database");
        // u ~ R_Z(t1) H R_Z(t2) H R_Z(t3); each rotation gets eps/3 (triangle inequality).
        Euler e = euler_decompose(u);
        const int h = CliffordTable::get().find_word("H");
        plan.mode = "axial-triple";
        append_plan(plan, decompose_axial(*axial, e.t1, eps / 3));
        plan.ops.push_back({h, -1});
        append_plan(plan, decompose_axial(*axial, e.t2, eps / 3));
        plan.ops.push_back({h, -1});
        append_plan(plan, decompose_axial(*axial, e.t3, eps / 3));
    } else {
        if (!nonaxial) throw std::invalid_argument("non-axial mode needs a non-axial database");
        NonAxialMatch m = lookup_nonaxial(*nonaxial, u, eps);
        std::vector<Op> ops{{m.left, -1}};
        for (const Op &op : nonaxial_ops(*nonaxial, m.index)) ops.push_back(op);
        ops.push_back({m.right, -1});
        plan.mode = "nonaxial";
        attach(plan, ops, nonaxial->bases);
        plan.exp_t = nonaxial->entries[m.index].exp_t;
        plan.var_t = nonaxial->entries[m.index].var_t;
    }
    finalize(plan);
    return plan;
}

ScalingFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    ScalingFit f;
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) {
        f.degenerate = true;
        return f;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (n < 2 || sxx == 0 || syy == 0) {
        f.degenerate = true;
        f.intercept = my;
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

ScalingFit fit_scaling(const AxialDb &db, const std::vector<double> &eps_list, std::size_t n_samples, uint64_t seed) {
    std::vector<double> angles(n_samples);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, std::numbers::pi / 4);
    for (double &a : angles) a = dist(rng);

    std::vector<ScalingPoint> points;
    std::vector<double> xs, ys;
    for (double eps : eps_list) {
        ScalingPoint pt;
        pt.eps = eps;
        pt.samples = n_samples;
        std::vector<double> costs;
        costs.reserve(n_samples);
        for (double a : angles) {
            DecompositionPlan p;
            try {
                p = decompose_axial(db, a, eps);
            } catch (const NoEntryWithinEps &e) {
                throw NoEntryWithinEps("eps " + std::to_string(eps) + " not serviceable at angle " + std::to_string(a) +
                                           ": nearest entry at distance " + std::to_string(e.nearest()),
                                       e.nearest());
            }
            costs.push_back(p.exp_t);
            pt.mean_var_t += p.var_t;
            pt.mean_chebyshev_95 += p.chebyshev_95;
        }
        double n = static_cast<double>(n_samples);
        for (double c : costs) pt.mean_exp_t += c;
        pt.mean_exp_t /= n;
        for (double c : costs) pt.var_exp_t += (c - pt.mean_exp_t) * (c - pt.mean_exp_t);
        pt.var_exp_t = n_samples > 1 ? pt.var_exp_t / (n - 1) : 0;
        pt.mean_var_t /= n;
        pt.mean_chebyshev_95 /= n;
        points.push_back(pt);
        xs.push_back(std::log2(1 / eps));
        ys.push_back(pt.mean_exp_t);
    }
    ScalingFit f = least_squares(xs, ys);
    f.seed = seed;
    f.n_samples = n_samples;
    f.points = std::move(points);
    return f;
}

double v_ratio(int p, double t_p) { return 5.26 / t_p * std::log(static_cast<double>(p)) / std::log(5.0); }

std::vector<CostModel> reference_costs(double eps, std::optional<double> theta, std::optional<double> delta) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
    const double l2 = std::log2(1 / eps);
    const double l5 = std::log(1 / eps) / std::log(5.0);
    std::vector<CostModel> out = {
        {"bgs_v3", "15.78 log5(1/eps)", 15.78 * l5, "3 log5(1/eps) V3 gates at expected T 5.26 each"},
        {"kmm", "3.21 log2(1/eps) - 6.93", 3.21 * l2 - 6.93, "literature fit, Z rotations"},
        {"kmm_unitary", "3(3.21 log2(3/eps) - 6.93)", 3 * (3.21 * std::log2(3 / eps) - 6.93),
         "three Z rotations at eps/3"},
        {"selinger", "4 log2(1/eps) + 11", 4 * l2 + 11, "literature fit, Z rotations"},
        {"fowler", "2.95 log2(1/eps) + 3.75", 2.95 * l2 + 3.75, "literature average, exponential search"},
        {"wk_coarse", "6 log2(1/eps) - 2.2", 6 * l2 - 2.2, "gearbox circuits on arbitrary angles"},
        {"rus_axial_fit", "1.26 log2(1/eps) - 3.53", 1.26 * l2 - 3.53, "published fit, full-scale axial database"},
        {"rus_axial_triple", "3.9 log2(3/eps) - 8.37", 3.9 * std::log2(3 / eps) - 8.37,
         "three axial rotations at eps/3"},
        {"rus_nonaxial_fit", "2.4 log2(1/eps) - 3.28", 2.4 * l2 - 3.28, "published fit, full-scale non-axial database"},
    };
    const double d = delta.value_or(1e-6);
    out.push_back({"hybrid", "2.52 log2(1/eps) - 0.12 log2(1/delta) - 2.97",
                   2.52 * l2 - 0.12 * std::log2(1 / d) - 2.97,
                   "estimator only, delta = " + std::to_string(d) + (delta ? "" : " (default)")});
    if (theta && *theta > 0) {
        // theta = a 10^-gamma with a in (0, 1) and integer gamma >= 1.
        int gamma = std::max(1, static_cast<int>(std::floor(std::log10(1 / *theta))));
        double l2g = std::log2(std::pow(10.0, gamma));
        double rel = std::pow(10.0, -gamma) / eps;
        std::string g = " (gamma = " + std::to_string(gamma) + ")";
        if (rel > 1) {
            double tl = std::log2(rel);
            out.push_back({"wk_arbitrary", "1.14 log2(10^g) + 8 log2(10^-g/eps)", 1.14 * l2g + 8 * tl,
                           "estimator only" + g});
            out.push_back({"gearbox_selinger", "2 T(a, 10^g eps) + 1.14 log2(10^g) + 12.2",
                           2 * (4 * std::log2(1 / (std::pow(10.0, gamma) * eps)) + 11) + 1.14 * l2g + 12.2,
                           "estimator only, T(a, e) = 4 log2(1/e) + 11" + g});
            out.push_back({"gearbox_rus", "2.52 log2(10^-g/eps) + 1.14 log2(10^g) + 5.14",
                           2.52 * tl + 1.14 * l2g + 5.14, "estimator only" + g});
        }
    }
    return out;
}

}  // namespace rus
