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
#include <sys/wait.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "rus/commands.hpp"

using namespace rus;

namespace {

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("rus_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

template <class T>
T round_trip(const T &v) {
    return json::parse(json(v).dump()).get<T>();
}

template <class T>
void expect_stable(const T &v) {
    std::string once = json(v).dump();
    EXPECT_EQ(json(round_trip(v)).dump(), once);
}

const std::vector<BaseRef> &small_bases() {
    static std::vector<BaseRef> b = base_refs(merge_results({run_search(TemplateConfig{"default", 4}).records}));
    return b;
}

std::string flip_byte(const fs::path &p) {
    std::string s = read_text(p);
    std::size_t i = s.find("\"p\"");
    if (i == std::string::npos) i = s.size() / 2;
    s[i + 1] = s[i + 1] == 'p' ? 'q' : 'p';
    write_text_atomic(p, s);
    return s;
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(RUS_BIN) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(RoundTrip, Scalars) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> c(-1000000, 1000000);
    for (int i = 0; i < 500; ++i) {
        RingScalar s(OmegaInt(BigInt(c(rng)) * BigInt(c(rng)) * BigInt(c(rng)), BigInt(c(rng)), BigInt(c(rng)),
                              BigInt(c(rng))),
                     i % 9);
        EXPECT_EQ(round_trip(s), s);
        RealQuad q(BigInt(c(rng)), BigInt(c(rng)), i % 7);
        EXPECT_EQ(round_trip(q), q);
    }
    RingMatrix m = fixture("sqrt7").target;
    EXPECT_EQ(round_trip(m), m);
    EXPECT_EQ(json(RingScalar::inv_sqrt2())["a"], "1");
}

TEST(RoundTrip, CircuitsAndAnalyses) {
    for (const auto &f : fixtures()) {
        EXPECT_EQ(round_trip(f.circuit), f.circuit);
        RusAnalysis a = analyze_circuit(f.circuit);
        RusAnalysis b = round_trip(a);
        EXPECT_EQ(b.key, a.key);
        EXPECT_EQ(b.p, a.p);
        EXPECT_EQ(b.recovery, a.recovery);
        EXPECT_EQ(b.success_block, a.success_block);
        EXPECT_EQ(b.success_unitary, a.success_unitary);
        expect_stable(a);
        AmplificationPlan amp = optimize_amplification(15, 0.1);
        AmplificationPlan amp2 = round_trip(amp);
        EXPECT_EQ(amp2.j, amp.j);
        EXPECT_EQ(amp2.amplified_p, amp.amplified_p);
        EXPECT_TRUE(analysis_report_json(a, &amp).contains("amplification"));
    }
    json bad = json(fixture("gosset").circuit);
    bad["gates"][0]["q"] = json::array({7});
    EXPECT_THROW(bad.get<Circuit>(), FormatError);
}

TEST(RoundTrip, Databases) {
    auto recs = run_search(TemplateConfig{"default", 3}).records;
    EXPECT_EQ(from_jsonl(to_jsonl(recs)).size(), recs.size());
    EXPECT_EQ(to_jsonl(from_jsonl(to_jsonl(recs))), to_jsonl(recs));
    BaseDatabase db = merge_results({recs});
    db.config = TemplateConfig{"default", 3};
    expect_stable(db);

    AxialDb ax = expand_axial(small_bases(), 12, 1, "fnv1a:0");
    AxialDb ax2 = round_trip(ax);
    EXPECT_EQ(ax2.entries, ax.entries);
    EXPECT_EQ(ax2.generators, ax.generators);
    EXPECT_EQ(ax2.header, ax.header);

    NonAxialDb na = expand_nonaxial(small_bases(), 8, 1);
    NonAxialDb na2 = round_trip(na);
    ASSERT_EQ(na2.entries.size(), na.entries.size());
    for (std::size_t i = 0; i < na.entries.size(); ++i) {
        EXPECT_EQ(na2.entries[i].recipe, na.entries[i].recipe);
        EXPECT_EQ(na2.entries[i].euler, na.entries[i].euler);
    }
    Mat2c u = na.entries.back().unitary;
    EXPECT_EQ(lookup_nonaxial(na2, u, 1e-6).index, lookup_nonaxial(na, u, 1e-6).index);

    DecompositionPlan p = decompose_axial(ax, 0.4, 0.1);
    DecompositionPlan p2 = round_trip(p);
    EXPECT_EQ(p2.ops, p.ops);
    EXPECT_EQ(p2.exp_t, p.exp_t);
    expect_stable(p);
    ScalingFit f = fit_scaling(ax, {0.2, 0.1}, 20, 4);
    expect_stable(f);

    json wrong = json(ax);
    wrong["header"]["kind"] = "nonaxial";
    EXPECT_THROW(wrong.get<AxialDb>(), FormatError);
}

TEST(Documents, ChecksumAndVersion) {
    fs::path dir = scratch("docs");
    RunConfig rc{"test", {{"a", "1"}}, 5, 2};
    EXPECT_EQ(RunConfig::from_json(rc.to_json()).hash(), rc.hash());
    json payload{{"x", 1}};
    write_document(dir / "d.json", "rus.test", payload, provenance(rc));
    EXPECT_EQ(read_document(dir / "d.json", "rus.test"), payload);
    EXPECT_THROW(read_document(dir / "d.json", "rus.other"), FormatError);

    json doc = json::parse(read_text(dir / "d.json"));
    doc["version"] = "1.9";
    EXPECT_EQ(open_document(doc, "rus.test"), payload);
    doc["version"] = "2.0";
    EXPECT_THROW(open_document(doc, "rus.test"), FormatError);
    doc["version"] = kFormatVersion;
    doc["payload"]["x"] = 2;
    EXPECT_THROW(open_document(doc, "rus.test"), FormatError);
    EXPECT_THROW(read_text(dir / "missing.json"), IoError);
    EXPECT_EQ(fmt12(1.0 / 3), "0.333333333333");
    EXPECT_EQ(checksum("abc"), "fnv1a:e71fa2190541574b");
}

TEST(Commands, PartitionIndependentMergeAndCorruption) {
    fs::path dir = scratch("merge");
    std::ostringstream log;
    for (int parts : {1, 4, 16}) {
        fs::path shards = dir / ("s" + std::to_string(parts));
        SearchOptions so{3, "default", parts, std::nullopt, parts == 4 ? 2 : 1, shards};
        cmd_search(so, log);
        cmd_merge(shards, dir / ("b" + std::to_string(parts) + ".json"), log);
    }
    std::string one = read_text(dir / "b1.json");
    EXPECT_EQ(read_text(dir / "b4.json"), one);
    EXPECT_EQ(read_text(dir / "b16.json"), one);

    fs::path s4 = dir / "s4";
    std::string shard = read_text(s4 / "shard-0002-of-0004.jsonl");
    flip_byte(s4 / "shard-0002-of-0004.jsonl");
    EXPECT_THROW(cmd_merge(s4, dir / "bad.json", log), FormatError);
    write_text_atomic(s4 / "shard-0002-of-0004.jsonl", shard);
    fs::remove(s4 / "shard-0003-of-0004.meta.json");
    EXPECT_THROW(cmd_merge(s4, dir / "bad.json", log), FormatError);
}

TEST(Commands, VerifyReports) {
    std::ostringstream out;
    RusAnalysis g = cmd_verify("gosset", out);
    EXPECT_EQ(g.p, RealQuad(3, 0, 2));
    EXPECT_NE(out.str().find("p = (3 + 0*sqrt2)/2^2 = 0.75"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("amplification: none"), std::string::npos);
    RusAnalysis v = cmd_verify("v29", out);
    EXPECT_NEAR(v.p_double(), 0.774, 5e-4);

    fs::path dir = scratch("verify");
    write_text_atomic(dir / "id.json", R"({"width": 2, "gates": [{"g": "H", "q": [0]}], "measured": [1]})");
    try {
        cmd_verify((dir / "id.json").string(), out);
        FAIL() << "identity circuit accepted";
    } catch (const AnalysisError &e) {
        EXPECT_EQ(e.kind(), AnalysisErrorKind::NoSuccessBranch);
    }
    write_text_atomic(dir / "c.json", json(fixture("sqrt7").circuit).dump());
    EXPECT_EQ(cmd_verify((dir / "c.json").string(), out).p, RealQuad(7, 0, 3));
}

TEST(Commands, Stats) {
    BaseStats empty = base_stats(BaseDatabase{});
    EXPECT_EQ(empty.total, 0u);
    EXPECT_EQ(empty.axial + empty.non_axial + empty.amplified, 0u);

    BaseDatabase db = merge_results({run_search(TemplateConfig{"default", 4}).records});
    SearchRecord low = db.entries.begin()->second;
    low.analysis.raw_t = 15;
    low.analysis.p = RealQuad(1, 0, 3);
    low.analysis.exp_t = 120;
    low.analysis.key = "synthetic-low-p";
    db.entries.emplace(low.analysis.key, low);
    BaseStats s = base_stats(db);
    EXPECT_EQ(s.axial + s.non_axial, s.total);
    EXPECT_EQ(s.amplified, 1u);
    std::size_t before = 0, after = 0;
    for (auto [k, n] : s.exp_before) before += n;
    for (auto [k, n] : s.exp_after) after += n;
    EXPECT_EQ(before, s.total);
    EXPECT_EQ(after, s.total);
    EXPECT_EQ(s.exp_before.at(120), 1u);
    EXPECT_EQ(s.exp_after.count(120), 0u);
    std::ostringstream out;
    print_base_stats(s, out);
    EXPECT_NE(out.str().find("amplified (p < 1/3): 1"), std::string::npos);
    EXPECT_NE(base_stats_csv(s).find("split,axial,"), std::string::npos);

    AxialDb ax = expand_axial(small_bases(), 15, 1);
    auto rows = density_table(ax);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows.back().size, ax.entries.size());
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].size, rows[i - 1].size);
}

TEST(Commands, PipelineCheckpoints) {
    fs::path work = scratch("pipeline");
    PipelineOptions po;
    po.work_dir = work;
    po.max_t = 4;
    po.partitions = 3;
    po.max_exp_t = 14;
    po.eps = {0.2, 0.1, 0.05};
    po.samples = 100;
    po.threads = 2;
    std::ostringstream log;
    PipelineReport first = cmd_pipeline(po, log);
    EXPECT_EQ(first.ran.size(), 4u);
    std::string fit = read_text(work / "fit.json"), axial = read_text(work / "axial.db.json");
    EXPECT_NE(fit.find("config_hash"), std::string::npos);

    PipelineReport again = cmd_pipeline(po, log);
    EXPECT_EQ(again.skipped.size(), 4u);
    EXPECT_TRUE(again.ran.empty());

    flip_byte(work / "base.db.json");
    PipelineReport fixed = cmd_pipeline(po, log);
    EXPECT_EQ(fixed.requeued, std::vector<std::string>{"merge"});
    EXPECT_EQ(fixed.ran, (std::vector<std::string>{"merge", "expand", "fit"}));
    EXPECT_NE(log.str().find("checksum failure"), std::string::npos);
    EXPECT_EQ(read_text(work / "fit.json"), fit);
    EXPECT_EQ(read_text(work / "axial.db.json"), axial);

    flip_byte(work / "shards" / "shard-0001-of-0003.jsonl");
    PipelineReport shard = cmd_pipeline(po, log);
    EXPECT_EQ(shard.requeued, std::vector<std::string>{"search"});
    EXPECT_EQ(read_text(work / "fit.json"), fit);
}

TEST(Commands, DecomposeAndExitCodes) {
    fs::path dir = scratch("cli");
    std::ostringstream log;
    cmd_search({4, "default", 2, std::nullopt, 1, dir / "shards"}, log);
    cmd_merge(dir / "shards", dir / "base.json", log);
    cmd_db_expand({"axial", 14, dir / "base.json", dir / "axial.json", 1}, log);
    DecomposeOptions d;
    d.angle = 0.5;
    d.eps = 0.1;
    d.db = dir / "axial.json";
    d.out = dir / "plan.json";
    DecompositionPlan p = cmd_decompose(d, log);
    json plan = read_document(dir / "plan.json", "rus.plan");
    EXPECT_EQ(plan.at("flat").size(), p.ops.size());
    d.eps = 1e-9;
    EXPECT_THROW(cmd_decompose(d, log), NoEntryWithinEps);
    EXPECT_THROW(parse_unitary("1,0,0,0"), std::invalid_argument);
    EXPECT_THROW(template_by_name("nope", 3), std::invalid_argument);

    std::string db = (dir / "axial.json").string();
    EXPECT_EQ(run_cli("verify gosset"), 0);
    EXPECT_EQ(run_cli("costs --eps 1e-6"), 0);
    EXPECT_EQ(run_cli("decompose --angle 0.5 --eps 0.1 --db " + db), 0);
    EXPECT_EQ(run_cli("decompose --angle 0.5 --eps 1e-9 --db " + db), 2);
    write_text_atomic(dir / "id.json", R"({"width": 2, "gates": [], "measured": [1]})");
    EXPECT_EQ(run_cli("verify " + (dir / "id.json").string()), 3);
    EXPECT_EQ(run_cli("db stats " + (dir / "missing.json").string()), 4);
    EXPECT_EQ(run_cli("search --max-t 2"), 3);
    EXPECT_EQ(run_cli("db stats " + db + " --csv " + (dir / "d.csv").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "d.csv"));
}
