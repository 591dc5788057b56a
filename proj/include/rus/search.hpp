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
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rus/analyzer.hpp"
#include "rus/canonical.hpp"
#include "rus/circuit.hpp"

namespace rus {

/// One-ancilla, two-CZ search template.
///
///   ancilla: |0> -A1- CZ -A2- CZ -A3- measure
///   data:         ----  CZ -D-- CZ ----
///
/// Every slot ranges over single-qubit Clifford+T unitaries of a given T-count. With
/// `prune` set, A1 is reduced to the distinct prepared states modulo phase and S-powers,
/// and A3 modulo row phases, row swap and right S-powers. Both reductions move gates into
/// A2, which always ranges over the full set, so the set of reachable success unitaries
/// (and their costs) is unchanged.
struct TemplateConfig {
    std::string name = "default";
    int max_raw_t = 10;
    bool prune = true;
    /// Clifford+T slot on the data line between the CZs; without it the slot is Clifford only.
    bool data_slot = true;
    /// Circuits where every outcome applies the same non-Clifford unitary (p = 1) are
    /// deterministic, not repeat-until-success; they are dropped unless this is set.
    bool keep_deterministic = false;

    bool operator==(const TemplateConfig &o) const = default;
};

constexpr int kDeskMaxRawT = 10;

/// Contiguous slice `index` of `count` over the ordered outer items (A1 state, A2 unitary).
struct SearchPartition {
    int index = 0;
    int count = 1;
};

struct SearchStats {
    uint64_t candidates = 0;
    uint64_t rejected_non_unitary = 0;   // some block not proportional to a unitary
    uint64_t rejected_all_clifford = 0;  // no non-Clifford branch
    uint64_t rejected_inconsistent = 0;  // two branches with different unitaries
    uint64_t rejected_deterministic = 0;
    uint64_t successes = 0;

    SearchStats &operator+=(const SearchStats &o);
    bool operator==(const SearchStats &o) const = default;
};

struct SearchRecord {
    Circuit circuit;
    RusAnalysis analysis;
};

/// Total order used everywhere a single circuit per unitary is kept: lower expected T
/// (compared exactly), then lower raw T, then the lexicographically smaller encoding.
bool better_record(int raw_a, const RealQuad &p_a, const std::string &enc_a, int raw_b, const RealQuad &p_b,
                   const std::string &enc_b);
bool better_record(const SearchRecord &a, const SearchRecord &b);

/// Precomputed slot sets for a template, shared read-only by all workers.
class SearchSpace {
   public:
    explicit SearchSpace(const TemplateConfig &cfg);

    struct State {
        OI64 v0, v1;
        int k = 0;
        std::string word;
        int t = 0;
    };
    struct Item {
        int t1, v;
        int t2, a2;
    };

    const TemplateConfig &config() const { return cfg_; }
    const std::vector<Item> &items() const { return items_; }
    const std::vector<std::vector<State>> &prep() const { return prep_; }
    const std::vector<std::vector<UnitaryClass>> &mid() const { return mid_; }
    const std::vector<std::vector<UnitaryClass>> &data() const { return data_; }
    const std::vector<std::vector<UnitaryClass>> &last() const { return last_; }

    Circuit circuit(int t1, int v, int t2, int a2, int td, int d, int t3, int a3) const;
    /// Number of (A1, A2, D, A3) combinations visited.
    uint64_t combination_count() const;

   private:
    TemplateConfig cfg_;
    std::vector<std::vector<State>> prep_;
    std::vector<std::vector<UnitaryClass>> mid_, data_, last_;
    std::vector<Item> items_;
};

struct SearchResult {
    std::vector<SearchRecord> records;  // one per distinct success unitary, sorted by key
    SearchStats stats;
};

/// Runs one partition. threads == 1 uses the serial reference loop; otherwise OpenMP over
/// outer items (threads == 0 means the OpenMP default). Output does not depend on threads
/// or on how the item range is partitioned once merged.
SearchResult run_search(const SearchSpace &space, const SearchPartition &part, int threads = 1);
SearchResult run_search(const TemplateConfig &cfg, const SearchPartition &part = {}, int threads = 1);

struct BaseDatabase {
    TemplateConfig config;
    std::map<std::string, SearchRecord> entries;  // keyed by exact unitary key
    SearchStats stats;
};

/// Keeps the best record per success unitary. Associative and commutative.
BaseDatabase merge_results(const std::vector<std::vector<SearchRecord>> &batches);
void merge_into(BaseDatabase &db, const std::vector<SearchRecord> &batch);

/// Clifford index C with C U C^dagger diagonal, or -1 when U is not axial.
int axial_frame(const RingMatrix &u);
/// Rotation angle theta in [0, 2pi) with C U C^dagger proportional to diag(1, e^{i theta}).
double axial_angle(const RingMatrix &u, int frame);

struct AxialSplit {
    std::vector<std::string> axial, non_axial;
};
AxialSplit classify_axial(const BaseDatabase &db);

}  // namespace rus
