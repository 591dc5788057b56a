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

#include "rus/composer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <omp.h>
#include <tuple>

#include "rus/clifford.hpp"

namespace rus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4;
constexpr double kHalf = kPi / 2;

const CliffordTable &tab() { return CliffordTable::get(); }

int s_pow(int k) {
    static const std::array<int, 4> idx = [] {
        std::array<int, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = CliffordTable::get().find_word(std::string(i, 'S'));
        return out;
    }();
    return idx[((k % 4) + 4) % 4];
}

int x_cliff() {
    static const int x = CliffordTable::get().find_word("X");
    return x;
}

int cmul(int a, int b) { return tab().mul(a, b); }

int worker_count(int threads) { return threads <= 0 ? omp_get_max_threads() : threads; }

}  // namespace

std::vector<BaseRef> base_refs(const BaseDatabase &db) {
    std::vector<BaseRef> out;
    out.reserve(db.entries.size());
    for (const auto &[key, rec] : db.entries) {
        BaseRef b;
        b.key = key;
        b.circuit = rec.circuit.encode();
        b.raw_t = rec.analysis.raw_t;
        b.p = rec.analysis.p_double();
        b.exp_t = rec.analysis.exp_t;
        b.var_t = rec.analysis.var_t;
        b.unitary = rec.analysis.success_unitary;
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Op> simplify_ops(const std::vector<Op> &ops) {
    std::vector<Op> out;
    for (const Op &op : ops) {
        if (op.base < 0 && op.cliff < 0) continue;
        if (op.base < 0 && !out.empty() && out.back().base < 0) {
            out.back().cliff = cmul(out.back().cliff, op.cliff);
        } else {
            out.push_back(op);
        }
        if (out.back().base < 0 && out.back().cliff == 0) out.pop_back();
    }
    return out;
}

Mat2c ops_product(const std::vector<Op> &ops, const std::vector<BaseRef> &bases) {
    Mat2c m = identity2();
    for (const Op &op : ops) m = mul(m, op.base >= 0 ? bases.at(op.base).unitary : clifford_mat(op.cliff));
    return m;
}

// --- Axial ---------------------------------------------------------------------------

ReducedAngle reduce_angle(double theta) {
    double k = std::floor(theta / kHalf);
    double r = theta - k * kHalf;
    if (r < 0) r = 0;
    if (r >= kHalf) {
        r -= kHalf;
        k += 1;
    }
    int s = static_cast<int>(std::fmod(k, 4.0));
    if (s < 0) s += 4;
    ReducedAngle out;
    if (r > kQuarter) {
        out.theta = kHalf - r;
        out.frame = {(s + 1) % 4, true};
    } else {
        out.theta = r;
        out.frame = {s, false};
    }
    return out;
}

std::pair<int, int> frame_cliffords(const AngleFrame &f) {
    int x = f.flip ? x_cliff() : 0;
    return {cmul(s_pow(f.s_power), x), x};
}

Mat2c apply_frame(const AngleFrame &f, const Mat2c &m) {
    auto [l, r] = frame_cliffords(f);
    return mul(mul(clifford_mat(l), m), clifford_mat(r));
}

std::vector<AxialGenerator> axial_generators(const std::vector<BaseRef> &bases) {
    struct Cand {
        AxialGenerator g;
        double exp_t, var_t;
        const std::string *key;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < static_cast<int>(bases.size()); ++i) {
        const Mat2c &u = bases[i].unitary;
        for (int c = 0; c < CliffordTable::kSize; ++c) {
            Mat2c m = mul(mul(clifford_mat(c), u), adjoint(clifford_mat(c)));
            if (std::abs(m[1]) > 1e-9 || std::abs(m[2]) > 1e-9) continue;
            double alpha = std::arg(m[3] / m[0]);
            ReducedAngle ra = reduce_angle(alpha);
            if (ra.theta < kAngleDedupTol) break;  // Clifford; cannot happen for search output
            // R_Z(phi) ~ X^f S^-s C U C^dagger X^f.
            int x = ra.frame.flip ? x_cliff() : 0;
            AxialGenerator g;
            g.base = i;
            g.phi = ra.theta;
            g.left = cmul(cmul(x, s_pow(-ra.frame.s_power)), c);
            g.right = cmul(tab().inverse(c), x);
            cands.push_back({g, bases[i].exp_t, bases[i].var_t, &bases[i].key});
            break;
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) { return a.g.phi < b.g.phi; });
    auto better = [](const Cand &a, const Cand &b) {
        return std::tie(a.exp_t, a.var_t, *a.key) < std::tie(b.exp_t, b.var_t, *b.key);
    };
    std::vector<AxialGenerator> out;
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t j = i, best = i;
        while (j < cands.size() && cands[j].g.phi - cands[i].g.phi <= kAngleDedupTol) {
            if (better(cands[j], cands[best])) best = j;
            ++j;
        }
        out.push_back(cands[best].g);
        i = j;
    }
    return out;
}

namespace {

struct AxialCand {
    AxialEntry e;
};

bool axial_better(const AxialEntry &a, const AxialEntry &b) {
    if (a.exp_t != b.exp_t) return a.exp_t < b.exp_t;
    if (a.var_t != b.var_t) return a.var_t < b.var_t;
    if (a.recipe.size() != b.recipe.size()) return a.recipe.size() < b.recipe.size();
    for (std::size_t i = 0; i < a.recipe.size(); ++i) {
        if (a.recipe[i].generator != b.recipe[i].generator) return a.recipe[i].generator < b.recipe[i].generator;
        if (a.recipe[i].sign != b.recipe[i].sign) return a.recipe[i].sign < b.recipe[i].sign;
    }
    return false;
}

// Candidates for one frontier entry, in generator then sign order.
void extend_axial(const AxialEntry &src, const std::vector<AxialGenerator> &gens, const std::vector<BaseRef> &bases,
                  double max_exp_t, std::vector<AxialEntry> &out) {
    for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        const BaseRef &b = bases[gens[gi].base];
        double cost = src.exp_t + b.exp_t;
        if (cost > max_exp_t + 1e-12) continue;
        for (int sign : {1, -1}) {
            AxialEntry e;
            e.raw = src.raw + sign * gens[gi].phi;
            ReducedAngle ra = reduce_angle(e.raw);
            e.theta = ra.theta;
            e.frame = ra.frame;
            e.exp_t = cost;
            e.var_t = src.var_t + b.var_t;
            e.recipe = src.recipe;
            e.recipe.push_back({gi, sign});
            out.push_back(std::move(e));
        }
    }
}

}  // namespace

AxialDb expand_axial(const std::vector<BaseRef> &bases, double max_exp_t, int threads, const std::string &base_hash) {
    AxialDb db;
    db.header = {"axial", max_exp_t, base_hash, ""};
    db.bases = bases;
    db.generators = axial_generators(bases);

    // Angle-keyed store; an entry within kAngleDedupTol of an existing angle competes with it.
    std::map<double, AxialEntry> store;
    AxialEntry id;
    store.emplace(0.0, id);
    std::vector<AxialEntry> frontier{id};
    const int nthreads = worker_count(threads);

    while (!frontier.empty()) {
        std::vector<std::vector<AxialEntry>> produced(frontier.size());
        if (nthreads == 1) {
            for (std::size_t i = 0; i < frontier.size(); ++i)
                extend_axial(frontier[i], db.generators, bases, max_exp_t, produced[i]);
        } else {
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
            for (std::size_t i = 0; i < frontier.size(); ++i)
                extend_axial(frontier[i], db.generators, bases, max_exp_t, produced[i]);
        }
        std::vector<AxialEntry> cands;
        for (auto &v : produced)
            for (auto &e : v) cands.push_back(std::move(e));
        std::stable_sort(cands.begin(), cands.end(), [](const AxialEntry &a, const AxialEntry &b) {
            if (a.theta != b.theta) return a.theta < b.theta;
            return axial_better(a, b);
        });

        std::map<double, AxialEntry> changed;
        for (auto &c : cands) {
            auto it = store.lower_bound(c.theta - kAngleDedupTol);
            if (it != store.end() && it->first <= c.theta + kAngleDedupTol) {
                if (axial_better(c, it->second)) {
                    double key = it->first;
                    c.theta = key;  // the stored angle stays the cluster key
                    it->second = c;
                    changed[key] = c;
                }
                continue;
            }
            double key = c.theta;
            store.emplace(key, c);
            changed[key] = c;
        }
        frontier.clear();
        for (auto &[k, e] : changed) frontier.push_back(e);
    }
    db.entries.reserve(store.size());
    for (auto &[k, e] : store) db.entries.push_back(std::move(e));
    return db;
}

std::vector<Op> axial_ops(const AxialDb &db, const AxialEntry &e) {
    // R_Z(raw) ~ S^s X^f R_Z(theta) X^f, so R_Z(theta) ~ X^f S^-s R_Z(raw) X^f.
    int x = e.frame.flip ? x_cliff() : 0;
    std::vector<Op> ops{{cmul(x, s_pow(-e.frame.s_power)), -1}};
    for (const AxialStep &st : e.recipe) {
        const AxialGenerator &g = db.generators.at(st.generator);
        int nx = st.sign < 0 ? x_cliff() : 0;  // R_Z(-phi) = X R_Z(phi) X
        ops.push_back({cmul(nx, g.left), -1});
        ops.push_back({-1, g.base});
        ops.push_back({cmul(g.right, nx), -1});
    }
    ops.push_back({x, -1});
    return simplify_ops(ops);
}

namespace {

struct AxialBest {
    bool found = false;
    std::size_t index = 0;
    double d = 0;
    double nearest = 2;

    void offer(const AxialDb &db, std::size_t i, double d_i, double eps) {
        nearest = std::min(nearest, d_i);
        if (d_i > eps) return;
        if (!found) {
            found = true;
            index = i;
            d = d_i;
            return;
        }
        const AxialEntry &a = db.entries[i], &b = db.entries[index];
        if (std::tie(a.exp_t, d_i, i) < std::tie(b.exp_t, d, index)) {
            index = i;
            d = d_i;
        }
    }
};

AxialMatch finish(const AxialBest &best, const ReducedAngle &ra, double theta, double eps) {
    if (!best.found)
        throw NoEntryWithinEps("no axial entry within " + std::to_string(eps) + " of angle " + std::to_string(theta),
                               best.nearest);
    return {best.index, best.d, ra};
}

}  // namespace

AxialMatch lookup_axial(const AxialDb &db, double theta, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    ReducedAngle ra = reduce_angle(theta);
    // rz_distance(delta) = sqrt2 |sin(delta/4)| near zero, so the window half-width is 4 asin(eps/sqrt2).
    double half = eps >= 1 ? kPi : 4 * std::asin(std::min(1.0, eps / std::sqrt(2.0)));
    half = half * (1 + 1e-9) + 1e-15;
    auto lo = std::lower_bound(db.entries.begin(), db.entries.end(), ra.theta - half,
                               [](const AxialEntry &e, double v) { return e.theta < v; });
    AxialBest best;
    for (auto it = lo; it != db.entries.end() && it->theta <= ra.theta + half; ++it) {
        std::size_t i = static_cast<std::size_t>(it - db.entries.begin());
        best.offer(db, i, rz_distance(it->theta - ra.theta), eps);
    }
    if (!best.found) {
        // Report the nearest neighbor distance for the error message.
        if (lo != db.entries.end()) best.nearest = std::min(best.nearest, rz_distance(lo->theta - ra.theta));
        if (lo != db.entries.begin()) best.nearest = std::min(best.nearest, rz_distance(std::prev(lo)->theta - ra.theta));
    }
    return finish(best, ra, theta, eps);
}

AxialMatch lookup_axial_linear(const AxialDb &db, double theta, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    ReducedAngle ra = reduce_angle(theta);
    AxialBest best;
    for (std::size_t i = 0; i < db.entries.size(); ++i) best.offer(db, i, rz_distance(db.entries[i].theta - ra.theta), eps);
    return finish(best, ra, theta, eps);
}

DensityReport axial_density(const AxialDb &db) {
    DensityReport r;
    r.max_exp_t = db.header.max_exp_t;
    r.size = db.entries.size();
    if (db.entries.empty()) return r;
    std::vector<double> gaps;
    for (std::size_t i = 1; i < db.entries.size(); ++i)
        gaps.push_back(rz_distance(db.entries[i].theta - db.entries[i - 1].theta));
    gaps.push_back(rz_distance(2 * (kQuarter - db.entries.back().theta)));
    double sum = 0;
    for (double g : gaps) {
        sum += g;
        r.max_gap = std::max(r.max_gap, g);
    }
    r.mean_gap = sum / static_cast<double>(gaps.size());
    return r;
}

// --- Non-axial -----------------------------------------------------------------------

Mat2c euler_matrix(double t1, double t2, double t3) { return mul(mul(rz(t1), rx(t2)), rz(t3)); }

Euler euler_decompose(const Mat2c &u) {
    // SU(2) form: s00 = e^{-i(a+c)/2} cos(b/2), s10 = -i e^{i(a-c)/2} sin(b/2).
    Mat2c s = to_su2(u);
    double c0 = std::abs(s[0]), s1 = std::abs(s[2]);
    Euler e;
    e.t2 = 2 * std::atan2(s1, c0);
    double sum, diff;
    constexpr double kDegenerate = 1e-12;
    if (s1 < kDegenerate) {
        sum = -2 * std::arg(s[0]);
        diff = sum;
    } else if (c0 < kDegenerate) {
        diff = 2 * std::arg(s[2]) + kPi;
        sum = diff;
    } else {
        sum = -2 * std::arg(s[0]);
        diff = 2 * std::arg(s[2]) + kPi;
    }
    e.t1 = (sum + diff) / 2;
    e.t3 = (sum - diff) / 2;
    auto wrap = [](double a) {
        a = std::fmod(a, 2 * kPi);
        if (a < 0) a += 2 * kPi;
        if (a >= 2 * kPi) a -= 2 * kPi;
        return a;
    };
    e.t1 = wrap(e.t1);
    e.t3 = wrap(e.t3);
    // Global phase from the largest entry.
    Mat2c m = euler_matrix(e.t1, e.t2, e.t3);
    int k = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(u[i]) > std::abs(u[k])) k = i;
    e.phase = std::arg(u[k] / m[k]);
    return e;
}

bool rep_less(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(a[i] - b[i]) > kRepTol) return a[i] < b[i];
    return false;
}

ClassRep class_representative(const Mat2c &u) {
    const auto &g2 = tab().g2();
    ClassRep best;
    bool have = false;
    auto split = [](double a, int &k) {
        double q = std::floor(a / kHalf);
        double r = a - q * kHalf;
        if (r > kHalf - kRepTol) {
            r = 0;
            q += 1;
        }
        if (r < 0) r = 0;
        k = static_cast<int>(q);
        return r;
    };
    for (int g : g2) {
        Mat2c gu = mul(clifford_mat(g), u);
        for (int h : g2) {
            Mat2c m = mul(gu, adjoint(clifford_mat(h)));
            Euler e = euler_decompose(m);
            int k1, k3;
            ClassRep r;
            r.euler = {split(e.t1, k1), e.t2, split(e.t3, k3)};
            if (have && !rep_less(r.euler, best.euler)) continue;
            // C_g u C_h^dagger ~ S^k1 E S^k3, so u ~ (C_g^dagger S^k1) E (S^k3 C_h).
            r.left = cmul(tab().inverse(g), s_pow(k1));
            r.right = cmul(s_pow(k3), h);
            best = r;
            have = true;
        }
    }
    return best;
}

namespace {

using RepKey = std::array<long long, 3>;
constexpr double kCell = 1e-8;
constexpr double kSameClass = 1e-9;

RepKey cell_of(const std::array<double, 3> &e) {
    return {std::llround(e[0] / kCell), std::llround(e[1] / kCell), std::llround(e[2] / kCell)};
}

struct NonAxialNode {
    NonAxialEntry e;
    Mat2c product{};
};

bool nonaxial_better(const NonAxialEntry &a, const NonAxialEntry &b) {
    if (a.exp_t != b.exp_t) return a.exp_t < b.exp_t;
    if (a.var_t != b.var_t) return a.var_t < b.var_t;
    if (a.recipe.size() != b.recipe.size()) return a.recipe.size() < b.recipe.size();
    for (std::size_t i = 0; i < a.recipe.size(); ++i) {
        if (a.recipe[i].base != b.recipe[i].base) return a.recipe[i].base < b.recipe[i].base;
        if (a.recipe[i].cliff != b.recipe[i].cliff) return a.recipe[i].cliff < b.recipe[i].cliff;
    }
    return false;
}

NonAxialNode make_node(const Mat2c &product, std::vector<NonAxialStep> recipe, double exp_t, double var_t) {
    NonAxialNode n;
    ClassRep r = class_representative(product);
    n.e.euler = r.euler;
    n.e.unitary = euler_matrix(r.euler[0], r.euler[1], r.euler[2]);
    n.e.left = r.left;
    n.e.right = r.right;
    n.e.recipe = std::move(recipe);
    n.e.exp_t = exp_t;
    n.e.var_t = var_t;
    n.product = product;
    return n;
}

class RepStore {
   public:
    std::vector<NonAxialNode> nodes;

    /// Inserts or improves; returns the node index when the store changed, -1 otherwise.
    long offer(NonAxialNode n) {
        RepKey c = cell_of(n.e.euler);
        for (long long d0 = -1; d0 <= 1; ++d0)
            for (long long d1 = -1; d1 <= 1; ++d1)
                for (long long d2 = -1; d2 <= 1; ++d2) {
                    auto it = cells_.find({c[0] + d0, c[1] + d1, c[2] + d2});
                    if (it == cells_.end()) continue;
                    for (std::size_t idx : it->second) {
                        const auto &o = nodes[idx].e.euler;
                        bool same = true;
                        for (int i = 0; i < 3; ++i) same = same && std::abs(o[i] - n.e.euler[i]) <= kSameClass;
                        if (!same) continue;
                        if (!nonaxial_better(n.e, nodes[idx].e)) return -1;
                        n.e.euler = nodes[idx].e.euler;
                        n.e.unitary = nodes[idx].e.unitary;
                        nodes[idx] = std::move(n);
                        return static_cast<long>(idx);
                    }
                }
        cells_[c].push_back(nodes.size());
        nodes.push_back(std::move(n));
        return static_cast<long>(nodes.size() - 1);
    }

   private:
    std::map<RepKey, std::vector<std::size_t>> cells_;
};

}  // namespace

void NonAxialDb::build_index() {
    std::vector<std::array<double, 4>> pts;
    pts.reserve(entries.size());
    for (const auto &e : entries) pts.push_back(quaternion(e.unitary));
    index = KdTree<4>(std::move(pts));
}

NonAxialDb expand_nonaxial(const std::vector<BaseRef> &bases, double max_exp_t, int threads,
                           const std::string &base_hash) {
    NonAxialDb db;
    db.header = {"nonaxial", max_exp_t, base_hash, ""};
    db.bases = bases;
    const int nthreads = worker_count(threads);

    RepStore store;
    store.offer(make_node(identity2(), {}, 0, 0));

    // Singles: one cheapest base per class; cheaper members of a class make the others redundant
    // because a class member differs only by Clifford factors absorbed into the interleaving.
    std::vector<long> frontier;
    for (int b = 0; b < static_cast<int>(bases.size()); ++b) {
        if (bases[b].exp_t > max_exp_t + 1e-12) continue;
        long idx = store.offer(make_node(bases[b].unitary, {{b, -1}}, bases[b].exp_t, bases[b].var_t));
        (void)idx;
    }
    std::vector<int> singles;
    for (std::size_t i = 1; i < store.nodes.size(); ++i) {
        singles.push_back(store.nodes[i].e.recipe[0].base);
        frontier.push_back(static_cast<long>(i));
    }
    std::sort(singles.begin(), singles.end());

    while (!frontier.empty()) {
        std::vector<NonAxialNode> snapshot;
        snapshot.reserve(frontier.size());
        for (long i : frontier) snapshot.push_back(store.nodes[i]);
        std::vector<std::vector<NonAxialNode>> produced(snapshot.size());
        auto work = [&](std::size_t i) {
            const NonAxialNode &src = snapshot[i];
            for (int b : singles) {
                double cost = src.e.exp_t + bases[b].exp_t;
                if (cost > max_exp_t + 1e-12) continue;
                for (int g = 0; g < CliffordTable::kSize; ++g) {
                    Mat2c p = mul(mul(src.product, clifford_mat(g)), bases[b].unitary);
                    auto recipe = src.e.recipe;
                    recipe.back().cliff = g;
                    recipe.push_back({b, -1});
                    produced[i].push_back(make_node(p, std::move(recipe), cost, src.e.var_t + bases[b].var_t));
                }
            }
        };
        if (nthreads == 1) {
            for (std::size_t i = 0; i < snapshot.size(); ++i) work(i);
        } else {
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
            for (std::size_t i = 0; i < snapshot.size(); ++i) work(i);
        }
        std::vector<long> next;
        for (auto &v : produced)
            for (auto &n : v) {
                long idx = store.offer(std::move(n));
                if (idx >= 0) next.push_back(idx);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
    }
    db.entries.reserve(store.nodes.size());
    for (auto &n : store.nodes) db.entries.push_back(std::move(n.e));
    db.build_index();
    return db;
}

Mat2c recipe_product(const NonAxialDb &db, const NonAxialEntry &e) {
    Mat2c m = identity2();
    for (const auto &st : e.recipe) {
        m = mul(m, db.bases.at(st.base).unitary);
        if (st.cliff >= 0) m = mul(m, clifford_mat(st.cliff));
    }
    return m;
}

std::vector<Op> nonaxial_ops(const NonAxialDb &db, std::size_t i) {
    // product ~ C_l E C_r, so E ~ C_l^dagger product C_r^dagger.
    const NonAxialEntry &e = db.entries.at(i);
    std::vector<Op> ops{{tab().inverse(e.left), -1}};
    for (const auto &st : e.recipe) {
        ops.push_back({-1, st.base});
        if (st.cliff >= 0) ops.push_back({st.cliff, -1});
    }
    ops.push_back({tab().inverse(e.right), -1});
    return simplify_ops(ops);
}

namespace {

struct PairForm {
    int g, h;
    std::array<double, 4> q;
};

// All 576 forms C_g u C_h with their quaternions, in (g, h) order.
std::vector<PairForm> pair_forms(const Mat2c &u) {
    std::vector<PairForm> out;
    out.reserve(CliffordTable::kSize * CliffordTable::kSize);
    for (int g = 0; g < CliffordTable::kSize; ++g) {
        Mat2c gu = mul(clifford_mat(g), u);
        for (int h = 0; h < CliffordTable::kSize; ++h) out.push_back({g, h, quaternion(mul(gu, clifford_mat(h)))});
    }
    return out;
}

struct NonAxialBest {
    bool found = false;
    std::size_t index = 0;
    std::size_t form = 0;
    double d = 0;
    double nearest = 2;

    void offer(const NonAxialDb &db, std::size_t i, std::size_t form_i, double d_i, double eps) {
        nearest = std::min(nearest, d_i);
        if (d_i > eps) return;
        if (found) {
            double ea = db.entries[i].exp_t, eb = db.entries[index].exp_t;
            if (std::tie(ea, d_i, i, form_i) >= std::tie(eb, d, index, form)) return;
        }
        found = true;
        index = i;
        form = form_i;
        d = d_i;
    }
};

NonAxialMatch finish(const NonAxialBest &best, const std::vector<PairForm> &forms, double eps) {
    if (!best.found)
        throw NoEntryWithinEps("no non-axial entry within " + std::to_string(eps), best.nearest);
    // C_g u C_h ~ E, so u ~ C_g^dagger E C_h^dagger.
    const PairForm &f = forms[best.form];
    return {best.index, best.d, tab().inverse(f.g), tab().inverse(f.h)};
}

}  // namespace

NonAxialMatch lookup_nonaxial(const NonAxialDb &db, const Mat2c &u, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    auto forms = pair_forms(u);
    NonAxialBest best;
    double r = std::sqrt(2.0) * eps * (1 + 1e-9) + 1e-15;
    for (std::size_t f = 0; f < forms.size(); ++f) {
        const auto &q = forms[f].q;
        std::array<double, 4> neg{-q[0], -q[1], -q[2], -q[3]};
        auto visit = [&](std::size_t i) { best.offer(db, i, f, quat_distance(q, db.index.point(i)), eps); };
        db.index.radius(q, r, visit);
        db.index.radius(neg, r, visit);
    }
    return finish(best, forms, eps);
}

NonAxialMatch lookup_nonaxial_linear(const NonAxialDb &db, const Mat2c &u, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    auto forms = pair_forms(u);
    NonAxialBest best;
    for (std::size_t i = 0; i < db.entries.size(); ++i) {
        auto qe = quaternion(db.entries[i].unitary);
        for (std::size_t f = 0; f < forms.size(); ++f) best.offer(db, i, f, quat_distance(forms[f].q, qe), eps);
    }
    return finish(best, forms, eps);
}

}  // namespace rus
