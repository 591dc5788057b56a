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
#include <functional>
#include <string>
#include <vector>

#include "rus/exact64.hpp"

namespace rus {

enum class Syllable : uint8_t { TH = 0, SHTH = 1 };

/// Product s1 * s2 * ... of syllables with optional Clifford factors pre * (...) * post.
struct CanonicalSeq {
    std::vector<Syllable> syllables;
    int pre = 0;
    int post = 0;

    int t_count() const { return static_cast<int>(syllables.size()); }
    /// Matrix-order word of the syllable part, e.g. "THSHTH".
    std::string syllable_word() const;
    M2 syllable_matrix() const;
    M2 matrix() const;
};

constexpr int kMaxCanonicalT = 16;

struct CanonicalStats {
    std::vector<uint64_t> emitted;     // distinct syllable strings per T-count
    std::vector<uint64_t> duplicates;  // strings rejected as repeats of earlier unitaries
    /// Whether the cumulative distinct count up to t matches 2^(t-3) + 4. Recorded, never enforced.
    std::vector<bool> matches_closed_form;
};

/// Streams syllable strings of T-count <= max_t, ordered by T-count then lexicographically
/// (TH < SHTH). Strings whose unitary equals an earlier one up to phase are skipped.
void for_each_canonical(int max_t, const std::function<void(const CanonicalSeq &)> &fn,
                        CanonicalStats *stats = nullptr);
std::vector<CanonicalSeq> enumerate_canonical(int max_t, CanonicalStats *stats = nullptr);

/// A single-qubit Clifford+T unitary modulo global phase with a realizing word.
struct UnitaryClass {
    M2 m;
    std::string word;  // matrix-order letters, see word_matrix
    int t = 0;
};

/// sets[t] holds every single-qubit unitary of minimal T-count exactly t, modulo phase,
/// built as pre * syllables * post over the Clifford table. Order is deterministic.
std::vector<std::vector<UnitaryClass>> tcount_sets(int max_t);

}  // namespace rus
