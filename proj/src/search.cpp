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

#include "rus/search.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rus/clifford.hpp"

namespace rus {

SearchStats &SearchStats::operator+=(const SearchStats &o) {
    candidates += o.candidates;
    rejected_non_unitary += o.rejected_non_unitary;
    rejected_all_clifford += o.rejected_all_clifford;
    rejected_inconsistent += o.rejected_inconsistent;
    rejected_deterministic += o.rejected_deterministic;
    successes += o.successes;
    return *this;
}

namespace {

// Sign of raw_a * p_b - raw_b * p_a, i.e. of exp_a - exp_b scaled by p_a p_b > 0.
int compare_exp(int raw_a, const RealQuad &p_a, int raw_b, const RealQuad &p_b) {
    double da = raw_a / p_a.to_double(), db = raw_b / p_b.to_double();
    if (std::abs(da - db) > 1e-9 * std::max(1.0, std::abs(da))) return da < db ? -1 : 1;
    RealQuad ra = RealQuad::from_int(raw_a), rb = RealQuad::from_int(raw_b);
    return (ra * p_b - rb * p_a).sign();
}

}  // namespace

bool better_record(int raw_a, const RealQuad &p_a, const std::string &enc_a, int raw_b, const RealQuad &p_b,
                   const std::string &enc_b) {
    int c = compare_exp(raw_a, p_a, raw_b, p_b);
    if (c != 0) return c < 0;
    if (raw_a != raw_b) return raw_a < raw_b;
    return enc_a < enc_b;
}

bool better_record(const SearchRecord &a, const SearchRecord &b) {
    return better_record(a.analysis.raw_t, a.analysis.p, a.circuit.encode(), b.analysis.raw_t, b.analysis.p,
                         b.circuit.encode());
}

// ---------------------------------------------------------------------------
// Slot sets

namespace {

using Key17 = std::array<int64_t, 17>;

OI64 times_i_pow(const OI64 &z, int m) { return z.times_omega(2 * m); }

void reduce_vec(OI64 &a, OI64 &b, int &k) {
    if (a.is_zero() && b.is_zero()) {
        k = 0;
        return;
    }
    while (k > 0 && a.divisible_by_sqrt2() && b.divisible_by_sqrt2()) {
        a = a.div_sqrt2();
        b = b.div_sqrt2();
        --k;
    }
}

std::array<int64_t, 4> comps(const OI64 &z) { return {z.a, z.b, z.c, z.d}; }

// Minimum over global phases w^j of the pair (x, y).
std::array<int64_t, 8> pair_min_phase(const OI64 &x, const OI64 &y) {
    std::array<int64_t, 8> best{};
    for (int j = 0; j < 8; ++j) {
        auto a = comps(x.times_omega(j)), b = comps(y.times_omega(j));
        std::array<int64_t, 8> cur{a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]};
        if (j == 0 || cur < best) best = cur;
    }
    return best;
}

// Prepared state (v0, v1) modulo global phase and v1 -> i^m v1.
Key17 state_key(const OI64 &v0, const OI64 &v1, int k) {
    Key17 best{};
    for (int m = 0; m < 4; ++m) {
        auto p = pair_min_phase(v0, times_i_pow(v1, m));
        Key17 cur{};
        std::copy(p.begin(), p.end(), cur.begin());
        cur[16] = k;
        if (m == 0 || cur < best) best = cur;
    }
    return best;
}

// Final ancilla unitary modulo independent row phases, row swap and right diag(1, i^m).
Key17 last_key(const M2 &u) {
    Key17 best{};
    for (int m = 0; m < 4; ++m) {
        auto r0 = pair_min_phase(u.e[0], times_i_pow(u.e[1], m));
        auto r1 = pair_min_phase(u.e[2], times_i_pow(u.e[3], m));
        if (r1 < r0) std::swap(r0, r1);
        Key17 cur{};
        std::copy(r0.begin(), r0.end(), cur.begin());
        std::copy(r1.begin(), r1.end(), cur.begin() + 8);
        cur[16] = u.k;
        if (m == 0 || cur < best) best = cur;
    }
    return best;
}

}  // namespace

SearchSpace::SearchSpace(const TemplateConfig &cfg) : cfg_(cfg) {
    if (cfg.max_raw_t < 0 || cfg.max_raw_t > kMaxCanonicalT)
        throw std::invalid_argument("max_raw_t outside supported range");
    const int T = cfg.max_raw_t;
    auto sets = tcount_sets(T);
    mid_ = sets;
    data_ = sets;
    if (!cfg.data_slot)
        for (int t = 1; t <= T; ++t) data_[t].clear();

    prep_.assign(T + 1, {});
    last_.assign(T + 1, {});
    std::unordered_set<Key17, ArrayKeyHash> seen_prep, seen_last;
    for (int t = 0; t <= T; ++t) {
        for (const auto &u : sets[t]) {
            State s{u.m.e[0], u.m.e[2], u.m.k, u.word, t};
            reduce_vec(s.v0, s.v1, s.k);
            if (!cfg.prune || seen_prep.insert(state_key(s.v0, s.v1, s.k)).second) prep_[t].push_back(s);
            if (!cfg.prune || seen_last.insert(last_key(u.m)).second) last_[t].push_back(u);
        }
    }
    for (int t1 = 0; t1 <= T; ++t1)
        for (int t2 = 0; t1 + t2 <= T; ++t2)
            for (int v = 0; v < (int)prep_[t1].size(); ++v)
                for (int a = 0; a < (int)mid_[t2].size(); ++a) items_.push_back({t1, v, t2, a});
}

Circuit SearchSpace::circuit(int t1, int v, int t2, int a2, int td, int d, int t3, int a3) const {
    Circuit c;
    c.width = 2;
    c.measured = {1};
    append_word(c, prep_[t1][v].word, 1);
    c.gates.push_back({GateKind::CZ, 0, 1});
    append_word(c, mid_[t2][a2].word, 1);
    append_word(c, data_[td][d].word, 0);
    c.gates.push_back({GateKind::CZ, 0, 1});
    append_word(c, last_[t3][a3].word, 1);
    return c;
}

uint64_t SearchSpace::combination_count() const {
    const int T = cfg_.max_raw_t;
    uint64_t n = 0;
    for (int t1 = 0; t1 <= T; ++t1)
        for (int t2 = 0; t1 + t2 <= T; ++t2)
            for (int td = 0; t1 + t2 + td <= T; ++td)
                for (int t3 = 0; t1 + t2 + td + t3 <= T; ++t3)
                    n += uint64_t(prep_[t1].size()) * mid_[t2].size() * data_[td].size() * last_[t3].size();
    return n;
}

// ---------------------------------------------------------------------------
// Kernel

namespace {

enum class BlockClass { Zero, NonUnitary, Clifford, Candidate };

struct Block {
    std::array<OI64, 4> e;
};

bool is_i_multiple(const OI64 &x, const OI64 &y) {
    for (int m = 0; m < 4; ++m)
        if (x == times_i_pow(y, m)) return true;
    return false;
}

void norm_sq(const OI64 &z, int64_t &x, int64_t &y) { z.norm_sq(x, y); }

BlockClass classify(const Block &b, bool check_unitary) {
    const auto &e = b.e;
    bool z0 = e[0].is_zero(), z1 = e[1].is_zero(), z2 = e[2].is_zero(), z3 = e[3].is_zero();
    if (z0 && z1 && z2 && z3) return BlockClass::Zero;
    if (check_unitary) {
        int64_t x0, y0, x1, y1, x2, y2, x3, y3;
        norm_sq(e[0], x0, y0);
        norm_sq(e[1], x1, y1);
        norm_sq(e[2], x2, y2);
        norm_sq(e[3], x3, y3);
        if (x0 + x2 != x1 + x3 || y0 + y2 != y1 + y3) return BlockClass::NonUnitary;
        if (!(e[0].conj() * e[1] + e[2].conj() * e[3]).is_zero()) return BlockClass::NonUnitary;
    }
    if (z1 && z2) return is_i_multiple(e[3], e[0]) ? BlockClass::Clifford : BlockClass::Candidate;
    if (z0 && z3) return is_i_multiple(e[2], e[1]) ? BlockClass::Clifford : BlockClass::Candidate;
    if (!z0 && !z1 && !z2 && !z3 && is_i_multiple(e[1], e[0]) && is_i_multiple(e[2], e[0]) &&
        is_i_multiple(e[3], e[0]))
        return BlockClass::Clifford;
    return BlockClass::Candidate;
}

bool proportional(const Block &a, const Block &b) {
    int p = 0;
    while (a.e[p].is_zero()) ++p;
    if (b.e[p].is_zero()) return false;
    for (int i = 0; i < 4; ++i)
        if (a.e[p] * b.e[i] != b.e[p] * a.e[i]) return false;
    return true;
}

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct OI128 {
    i128 a, b, c, d;
};

OI128 mul128(const OI128 &x, const OI128 &y) {
    return {x.a * y.a - x.b * y.d - x.c * y.c - x.d * y.b, x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c,
            x.a * y.c + x.b * y.b + x.c * y.a - x.d * y.d, x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
}

OI128 widen(const OI64 &z) { return {z.a, z.b, z.c, z.d}; }

// Same normalization as unitary_key, in machine arithmetic.
Key17 block_key(const Block &b) {
    int f = 0;
    while (b.e[f].is_zero()) ++f;
    int64_t x, y;
    b.e[f].norm_sq(x, y);
    OI128 q{x, -y, 0, y};
    OI128 uq = mul128(widen(b.e[f].conj()), q);
    std::array<i128, 17> v;
    for (int i = 0; i < 4; ++i) {
        OI128 r = mul128(widen(b.e[i]), uq);
        v[4 * i] = r.a;
        v[4 * i + 1] = r.b;
        v[4 * i + 2] = r.c;
        v[4 * i + 3] = r.d;
    }
    v[16] = i128(x) * x - 2 * i128(y) * y;
    i128 g = 0;
    for (auto c : v) g = gcd128(g, c);
    if (v[16] < 0) g = -g;
    Key17 out;
    for (int i = 0; i < 17; ++i) {
        i128 r = v[i] / g;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("search kernel: unitary key exceeds 64 bits");
        out[i] = static_cast<int64_t>(r);
    }
    return out;
}

std::string key_string(const Key17 &k) {
    std::string s;
    for (int i = 0; i < 16; ++i) {
        s += std::to_string(k[i]);
        s += (i == 15) ? "/" : ((i % 4 == 3) ? ";" : ",");
    }
    s += std::to_string(k[16]);
    return s;
}

struct Ids {
    int t1, v, t2, a2, td, d, t3, a3;
};

struct Best {
    int raw = 0;
    RealQuad p;
    Ids ids{};
    std::string enc;  // filled lazily for tie-breaks
};

struct Local {
    std::unordered_map<Key17, Best, ArrayKeyHash> best;
    SearchStats stats;
};

const std::string &encoding(const SearchSpace &sp, Best &b) {
    if (b.enc.empty()) {
        const Ids &i = b.ids;
        b.enc = sp.circuit(i.t1, i.v, i.t2, i.a2, i.td, i.d, i.t3, i.a3).encode();
    }
    return b.enc;
}

void offer(const SearchSpace &sp, Local &loc, const Key17 &key, Best cand) {
    auto [it, inserted] = loc.best.try_emplace(key, cand);
    if (inserted) return;
    Best &cur = it->second;
    int c = compare_exp(cand.raw, cand.p, cur.raw, cur.p);
    if (c > 0) return;
    if (c == 0) {
        if (cand.raw > cur.raw) return;
        if (cand.raw == cur.raw && !(encoding(sp, cand) < encoding(sp, cur))) return;
    }
    cur = std::move(cand);
}

void run_item(const SearchSpace &sp, std::size_t item_index, Local &loc) {
    const auto &item = sp.items()[item_index];
    const int T = sp.config().max_raw_t;
    const auto &st = sp.prep()[item.t1][item.v];
    const M2 &a2 = sp.mid()[item.t2][item.a2].m;
    // P[x2][x1] = A2[x2][x1] v[x1]; K_x2 = Z^x2 D diag(P[x2][0] + P[x2][1], P[x2][0] - P[x2][1]).
    OI64 p00 = a2.e[0] * st.v0, p01 = a2.e[1] * st.v1, p10 = a2.e[2] * st.v0, p11 = a2.e[3] * st.v1;
    const OI64 d0[2] = {p00 + p01, p00 - p01};
    const OI64 d1[2] = {p10 + p11, p10 - p11};
    const int kp = a2.k + st.k;
    const int budget = T - item.t1 - item.t2;
    const bool keep_det = sp.config().keep_deterministic;

    for (int td = 0; td <= budget; ++td) {
        const auto &dset = sp.data()[td];
        for (int di = 0; di < (int)dset.size(); ++di) {
            const M2 &d = dset[di].m;
            Block k0, k1;
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    k0.e[2 * r + c] = d.e[2 * r + c] * d0[c];
                    OI64 v = d.e[2 * r + c] * d1[c];
                    k1.e[2 * r + c] = r == 0 ? v : -v;
                }
            }
            const int kk = d.k + kp;
            for (int t3 = 0; td + t3 <= budget; ++t3) {
                const auto &lset = sp.last()[t3];
                for (int li = 0; li < (int)lset.size(); ++li) {
                    const M2 &a3 = lset[li].m;
                    ++loc.stats.candidates;
                    Block b[2];
                    BlockClass cls[2];
                    bool bad = false;
                    for (int o = 0; o < 2 && !bad; ++o) {
                        for (int i = 0; i < 4; ++i) {
                            b[o].e[i] = a3.e[2 * o] * k0.e[i] + a3.e[2 * o + 1] * k1.e[i];
                            if (!oi_within_guard(b[o].e[i]))
                                throw std::overflow_error("search kernel: block entry exceeds machine-word guard");
                        }
                        // B0^dag B0 + B1^dag B1 is a multiple of I, so once B0 passes the
                        // unitary-multiple test B1 does too.
                        cls[o] = classify(b[o], o == 0);
                        bad = cls[o] == BlockClass::NonUnitary;
                    }
                    if (bad) {
                        ++loc.stats.rejected_non_unitary;
                        continue;
                    }
                    bool c0 = cls[0] == BlockClass::Candidate, c1 = cls[1] == BlockClass::Candidate;
                    if (!c0 && !c1) {
                        ++loc.stats.rejected_all_clifford;
                        continue;
                    }
                    if (c0 && c1 && !proportional(b[0], b[1])) {
                        ++loc.stats.rejected_inconsistent;
                        continue;
                    }
                    // No Clifford failure branch means the circuit always applies U.
                    if (!keep_det && cls[0] != BlockClass::Clifford && cls[1] != BlockClass::Clifford) {
                        ++loc.stats.rejected_deterministic;
                        continue;
                    }
                    ++loc.stats.successes;
                    const int kb = a3.k + kk;
                    int64_t x = 0, y = 0;
                    for (int o = 0; o < 2; ++o) {
                        if (cls[o] != BlockClass::Candidate) continue;
                        for (const auto &z : b[o].e) {
                            int64_t zx, zy;
                            z.norm_sq(zx, zy);
                            x += zx;
                            y += zy;
                        }
                    }
                    Best cand;
                    cand.raw = item.t1 + item.t2 + td + t3;
                    cand.p = RealQuad(BigInt(x), BigInt(y), kb + 1);
                    cand.ids = {item.t1, item.v, item.t2, item.a2, td, di, t3, li};
                    offer(sp, loc, block_key(b[c0 ? 0 : 1]), std::move(cand));
                }
            }
        }
    }
}

void merge_local(const SearchSpace &sp, Local &into, Local &from) {
    into.stats += from.stats;
    for (auto &[k, b] : from.best) offer(sp, into, k, std::move(b));
}

}  // namespace

SearchResult run_search(const SearchSpace &space, const SearchPartition &part, int threads) {
    if (part.count < 1 || part.index < 0 || part.index >= part.count)
        throw std::invalid_argument("invalid search partition");
    const std::size_t n = space.items().size();
    const std::size_t begin = n * part.index / part.count;
    const std::size_t end = n * (part.index + 1) / part.count;

    Local global;
    if (threads == 1) {
        for (std::size_t i = begin; i < end; ++i) run_item(space, i, global);
    } else {
        int nt = threads > 0 ? threads : omp_get_max_threads();
        std::exception_ptr err;
#pragma omp parallel num_threads(nt)
        {
            Local local;
#pragma omp for schedule(dynamic, 1) nowait
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    run_item(space, i, local);
                } catch (...) {
#pragma omp critical(rus_search_error)
                    err = std::current_exception();
                }
            }
#pragma omp critical(rus_search_merge)
            merge_local(space, global, local);
        }
        if (err) std::rethrow_exception(err);
    }

    SearchResult out;
    out.stats = global.stats;
    std::vector<std::pair<std::string, Best *>> order;
    order.reserve(global.best.size());
    for (auto &[k, b] : global.best) order.emplace_back(key_string(k), &b);
    std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    for (auto &[key, b] : order) {
        const Ids &i = b->ids;
        SearchRecord rec;
        rec.circuit = space.circuit(i.t1, i.v, i.t2, i.a2, i.td, i.d, i.t3, i.a3);
        rec.analysis = analyze_circuit(rec.circuit);
        if (rec.analysis.key != key || rec.analysis.p != b->p || rec.analysis.raw_t != b->raw)
            throw std::logic_error("search kernel disagrees with exact re-analysis for " + rec.circuit.encode());
        out.records.push_back(std::move(rec));
    }
    return out;
}

SearchResult run_search(const TemplateConfig &cfg, const SearchPartition &part, int threads) {
    SearchSpace space(cfg);
    return run_search(space, part, threads);
}

void merge_into(BaseDatabase &db, const std::vector<SearchRecord> &batch) {
    for (const auto &r : batch) {
        auto it = db.entries.find(r.analysis.key);
        if (it == db.entries.end()) {
            db.entries.emplace(r.analysis.key, r);
        } else if (better_record(r, it->second)) {
            it->second = r;
        }
    }
}

BaseDatabase merge_results(const std::vector<std::vector<SearchRecord>> &batches) {
    BaseDatabase db;
    for (const auto &b : batches) merge_into(db, b);
    return db;
}

int axial_frame(const RingMatrix &u) {
    const auto &tab = CliffordTable::get();
    for (int c = 0; c < CliffordTable::kSize; ++c) {
        RingMatrix m = tab.matrix(c) * u * tab.matrix(c).adjoint();
        if (m(0, 1).is_zero() && m(1, 0).is_zero()) return c;
    }
    return -1;
}

double axial_angle(const RingMatrix &u, int frame) {
    const auto &tab = CliffordTable::get();
    RingMatrix m = tab.matrix(frame) * u * tab.matrix(frame).adjoint();
    double th = std::arg(m(1, 1).to_complex() / m(0, 0).to_complex());
    if (th < 0) th += 2 * std::numbers::pi;
    return th;
}

AxialSplit classify_axial(const BaseDatabase &db) {
    AxialSplit s;
    for (const auto &[key, rec] : db.entries)
        (axial_frame(rec.analysis.success_block) >= 0 ? s.axial : s.non_axial).push_back(key);
    return s;
}

}  // namespace rus
