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

#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "rus/fixtures.hpp"
#include "rus/search.hpp"

using namespace rus;
using namespace rus::gates;

namespace {

const SearchResult &desk4() {
    static SearchResult r = run_search(TemplateConfig{"default", 4}, {}, 1);
    return r;
}

const SearchRecord *find_unitary(const std::vector<SearchRecord> &recs, const RingMatrix &u) {
    for (const auto &r : recs)
        if (r.analysis.success_block.proportional_to(u)) return &r;
    return nullptr;
}

std::set<std::string> keys(const std::vector<SearchRecord> &recs) {
    std::set<std::string> s;
    for (const auto &r : recs) s.insert(r.analysis.key);
    return s;
}

}  // namespace

TEST(Search, RediscoversPublishedCircuits) {
    auto t2 = run_search(TemplateConfig{"default", 2}, {}, 1);
    const auto *g = find_unitary(t2.records, fixture("gosset").target);
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->analysis.raw_t, 2);
    EXPECT_EQ(g->analysis.p, RealQuad(3, 0, 2));

    const auto *v3 = find_unitary(desk4().records, v_gate(1, 2));
    ASSERT_NE(v3, nullptr);
    EXPECT_EQ(v3->analysis.raw_t, 4);
    EXPECT_EQ(v3->analysis.p, RealQuad(5, 0, 3));

    const auto *s7 = find_unitary(desk4().records, fixture("sqrt7").target);
    ASSERT_NE(s7, nullptr);
    EXPECT_EQ(s7->analysis.raw_t, 4);
    EXPECT_EQ(s7->analysis.p, RealQuad(7, 0, 3));
}

TEST(Search, EveryRecordIsAValidRusCircuit) {
    const auto &recs = desk4().records;
    ASSERT_FALSE(recs.empty());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto &r = recs[i];
        ASSERT_TRUE(seen.insert(r.analysis.key).second);
        RingMatrix w = circuit_unitary(r.circuit);
        RusAnalysis again = analyze(w, r.circuit.width - 1, r.circuit.raw_t());
        ASSERT_EQ(again.key, r.analysis.key);
        ASSERT_EQ(again.p, r.analysis.p);
        ASSERT_LE(r.analysis.raw_t, 4);
        ASSERT_TRUE(unitarity_condition_holds(w, again));
        if (i % 16 == 0) ASSERT_LT(oracle::max_diff(w.to_complex(), oracle::simulate(r.circuit)), 1e-12);
    }
}

TEST(Search, ThreadAndPartitionIndependence) {
    TemplateConfig cfg{"default", 3};
    SearchSpace space(cfg);
    SearchResult serial = run_search(space, {}, 1);
    SearchResult par = run_search(space, {}, 4);
    EXPECT_EQ(serial.stats, par.stats);
    ASSERT_EQ(serial.records.size(), par.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        EXPECT_EQ(serial.records[i].circuit, par.records[i].circuit);
    }
    for (int parts : {4, 16}) {
        std::vector<std::vector<SearchRecord>> batches;
        SearchStats st;
        for (int i = 0; i < parts; ++i) {
            auto r = run_search(space, {i, parts}, 1);
            st += r.stats;
            batches.push_back(r.records);
        }
        BaseDatabase db = merge_results(batches);
        EXPECT_EQ(st, serial.stats);
        ASSERT_EQ(db.entries.size(), serial.records.size());
        for (const auto &r : serial.records) EXPECT_EQ(db.entries.at(r.analysis.key).circuit, r.circuit);
    }
}

TEST(Search, PruningIsSound) {
    auto pruned = run_search(TemplateConfig{"default", 2, true}, {}, 0);
    auto full = run_search(TemplateConfig{"unpruned", 2, false}, {}, 0);
    EXPECT_EQ(keys(pruned.records), keys(full.records));
    EXPECT_LT(pruned.stats.candidates, full.stats.candidates);
}

TEST(Search, MergeKeepsCheapest) {
    const auto *v3 = find_unitary(desk4().records, v_gate(1, 2));
    ASSERT_NE(v3, nullptr);
    SearchRecord worse = *v3;
    worse.analysis.raw_t = 5;
    worse.analysis.exp_t = 8.0;
    BaseDatabase db = merge_results({{worse}, {*v3}});
    EXPECT_DOUBLE_EQ(db.entries.at(v3->analysis.key).analysis.exp_t, 6.4);
    db = merge_results({{*v3}, {worse}});
    EXPECT_DOUBLE_EQ(db.entries.at(v3->analysis.key).analysis.exp_t, 6.4);

    const auto &recs = desk4().records;
    std::vector<SearchRecord> a(recs.begin(), recs.begin() + recs.size() / 2), b(recs.begin() + recs.size() / 2, recs.end());
    BaseDatabase u = merge_results({a, b});
    EXPECT_EQ(u.entries.size(), recs.size());
    BaseDatabase twice = merge_results({recs, recs});
    EXPECT_EQ(twice.entries.size(), recs.size());
}

TEST(Search, AxialClassification) {
    EXPECT_GE(axial_frame(v_gate(1, 2)), 0);
    EXPECT_GE(axial_frame(fixture("gosset").target), 0);
    EXPECT_EQ(axial_frame(fixture("sqrt7").target), -1);
    BaseDatabase db = merge_results({desk4().records});
    AxialSplit s = classify_axial(db);
    EXPECT_EQ(s.axial.size() + s.non_axial.size(), db.entries.size());
    EXPECT_FALSE(s.axial.empty());
    EXPECT_FALSE(s.non_axial.empty());
}
