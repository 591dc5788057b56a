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

#include "rus/canonical.hpp"

#include <stdexcept>
#include <unordered_set>

#include "rus/clifford.hpp"

namespace rus {

namespace {

const M2 &syllable_m2(Syllable s) {
    static const M2 th = M2::from_ring(word_matrix("TH"));
    static const M2 shth = M2::from_ring(word_matrix("SHTH"));
    return s == Syllable::TH ? th : shth;
}

using Key = std::array<int64_t, 17>;

}  // namespace

std::string CanonicalSeq::syllable_word() const {
    std::string w;
    for (Syllable s : syllables) w += s == Syllable::TH ? "TH" : "SHTH";
    return w;
}

M2 CanonicalSeq::syllable_matrix() const {
    M2 m = M2::identity();
    for (Syllable s : syllables) m = m * syllable_m2(s);
    return m;
}

M2 CanonicalSeq::matrix() const {
    const auto &tab = CliffordTable::get();
    return tab.matrix64(pre) * syllable_matrix() * tab.matrix64(post);
}

void for_each_canonical(int max_t, const std::function<void(const CanonicalSeq &)> &fn, CanonicalStats *stats) {
    if (max_t < 0 || max_t > kMaxCanonicalT)
        throw std::invalid_argument("enumerate_canonical: max_t outside [0, " + std::to_string(kMaxCanonicalT) + "]");
    std::unordered_set<Key, ArrayKeyHash> seen;
    if (stats) *stats = CanonicalStats{};
    uint64_t cumulative = 0;
    // Strings of length t in lexicographic order are the binary counters 0 .. 2^t - 1,
    // most significant syllable first. Prefix products are shared across a level.
    std::vector<M2> level{M2::identity()};
    for (int t = 0; t <= max_t; ++t) {
        uint64_t emitted = 0, dup = 0;
        for (uint64_t code = 0; code < level.size(); ++code) {
            if (!seen.insert(level[code].phase_key()).second) {
                ++dup;
                continue;
            }
            CanonicalSeq seq;
            for (int i = t - 1; i >= 0; --i) seq.syllables.push_back(static_cast<Syllable>((code >> i) & 1));
            fn(seq);
            ++emitted;
        }
        cumulative += emitted;
        if (stats) {
            stats->emitted.push_back(emitted);
            stats->duplicates.push_back(dup);
            bool match = t >= 3 && cumulative == (uint64_t(1) << (t - 3)) + 4;
            stats->matches_closed_form.push_back(match);
        }
        if (t == max_t) break;
        std::vector<M2> next;
        next.reserve(level.size() * 2);
        for (const M2 &m : level) {
            next.push_back(m * syllable_m2(Syllable::TH));
            next.push_back(m * syllable_m2(Syllable::SHTH));
        }
        level = std::move(next);
    }
}

std::vector<CanonicalSeq> enumerate_canonical(int max_t, CanonicalStats *stats) {
    std::vector<CanonicalSeq> out;
    for_each_canonical(max_t, [&](const CanonicalSeq &s) { out.push_back(s); }, stats);
    return out;
}

std::vector<std::vector<UnitaryClass>> tcount_sets(int max_t) {
    const auto &tab = CliffordTable::get();
    std::vector<std::vector<CanonicalSeq>> by_t(max_t + 1);
    for_each_canonical(max_t, [&](const CanonicalSeq &s) { by_t[s.t_count()].push_back(s); });

    std::unordered_set<Key, ArrayKeyHash> seen;
    std::vector<std::vector<UnitaryClass>> sets(max_t + 1);
    for (int t = 0; t <= max_t; ++t) {
        for (const auto &seq : by_t[t]) {
            M2 core = seq.syllable_matrix();
            std::string core_word = seq.syllable_word();
            for (int g = 0; g < CliffordTable::kSize; ++g) {
                M2 left = tab.matrix64(g) * core;
                for (int h = 0; h < CliffordTable::kSize; ++h) {
                    M2 m = left * tab.matrix64(h);
                    if (!seen.insert(m.phase_key()).second) continue;
                    sets[t].push_back({m, tab.word(g) + core_word + tab.word(h), t});
                }
            }
        }
    }
    return sets;
}

}  // namespace rus
