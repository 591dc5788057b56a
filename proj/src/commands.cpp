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

#include "rus/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#include "rus/clifford.hpp"

namespace rus {

int threads_from_env(int fallback) {
    const char *v = std::getenv("RUS_THREADS");
    if (!v || !*v) return fallback;
    char *end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end || n <= 0) throw std::invalid_argument(fmt::format("RUS_THREADS must be a positive integer, got '{}'", v));
    return static_cast<int>(n);
}

TemplateConfig template_by_name(const std::string &name, int max_raw_t) {
    TemplateConfig c;
    c.name = name;
    c.max_raw_t = max_raw_t;
    if (name == "default") return c;
    if (name == "unpruned") {
        c.prune = false;
        return c;
    }
    if (name == "clifford-data") {
        c.data_slot = false;
        return c;
    }
    throw std::invalid_argument("unknown template '" + name + "' (default, unpruned, clifford-data)");
}

// --- search / merge -------------------------------------------------------------------

namespace {

constexpr const char *kShardMeta = "rus.shard-meta";
constexpr const char *kBaseDb = "rus.base-db";
constexpr const char *kAxialDb = "rus.axial-db";
constexpr const char *kNonAxialDb = "rus.nonaxial-db";
constexpr const char *kPlan = "rus.plan";
constexpr const char *kFit = "rus.fit";

std::string shard_stem(int i, int n) { return fmt::format("shard-{:04d}-of-{:04d}", i, n); }

std::string num(double v) { return fmt12(v); }

std::string eps_list(const std::vector<double> &eps) {
    std::string s;
    for (double e : eps) s += (s.empty() ? "" : ",") + num(e);
    return s;
}

}  // namespace

void cmd_search(const SearchOptions &opt, std::ostream &log) {
    if (opt.partitions < 1) throw std::invalid_argument("--partitions must be at least 1");
    if (opt.partition && (*opt.partition < 0 || *opt.partition >= opt.partitions))
        throw std::invalid_argument("--partition outside [0, partitions)");
    TemplateConfig cfg = template_by_name(opt.template_name, opt.max_t);
    SearchSpace space(cfg);
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw IoError("cannot create " + opt.out_dir.string());

    RunConfig rc{"search",
                 {{"max_t", std::to_string(opt.max_t)},
                  {"template", opt.template_name},
                  {"partitions", std::to_string(opt.partitions)}},
                 0,
                 opt.threads};
    int lo = opt.partition.value_or(0), hi = opt.partition ? *opt.partition + 1 : opt.partitions;
    for (int i = lo; i < hi; ++i) {
        SearchResult r = run_search(space, {i, opt.partitions}, opt.threads);
        std::string text = to_jsonl(r.records);
        std::string stem = shard_stem(i, opt.partitions);
        write_text_atomic(opt.out_dir / (stem + ".jsonl"), text);
        json meta{{"template", cfg},
                  {"partition", i},
                  {"partitions", opt.partitions},
                  {"stats", r.stats},
                  {"records", r.records.size()},
                  {"shard_file", stem + ".jsonl"},
                  {"shard_checksum", checksum(text)}};
        write_document(opt.out_dir / (stem + ".meta.json"), kShardMeta, meta, provenance(rc));
        fmt::print(log, "partition {}/{}: {} candidates, {} records\n", i, opt.partitions, r.stats.candidates,
                   r.records.size());
    }
}

BaseDatabase cmd_merge(const fs::path &dir, const fs::path &out, std::ostream &log) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> metas;
    for (const auto &e : fs::directory_iterator(dir)) {
        std::string name = e.path().filename().string();
        if (name.size() > 10 && name.ends_with(".meta.json")) metas.push_back(e.path());
    }
    std::sort(metas.begin(), metas.end());
    if (metas.empty()) throw FormatError("no shards in " + dir.string());

    BaseDatabase db;
    std::optional<TemplateConfig> cfg;
    int partitions = -1;
    std::set<int> seen;
    for (const auto &m : metas) {
        json meta = read_document(m, kShardMeta);
        auto t = meta.at("template").get<TemplateConfig>();
        int n = meta.at("partitions").get<int>(), i = meta.at("partition").get<int>();
        if (!cfg) {
            cfg = t;
            partitions = n;
        } else if (!(t == *cfg) || n != partitions) {
            throw FormatError(m.string() + ": shard from a different search configuration");
        }
        if (!seen.insert(i).second) throw FormatError(m.string() + ": duplicate partition");
        fs::path shard = dir / meta.at("shard_file").get<std::string>();
        std::string text = read_text(shard);
        std::string sum = checksum(text);
        if (sum != meta.at("shard_checksum").get<std::string>())
            throw FormatError(shard.string() + ": checksum mismatch (stored " +
                              meta.at("shard_checksum").get<std::string>() + ", computed " + sum + ")");
        merge_into(db, from_jsonl(text));
        db.stats += meta.at("stats").get<SearchStats>();
    }
    if (static_cast<int>(seen.size()) != partitions)
        throw FormatError(fmt::format("{}: {} of {} partitions present", dir.string(), seen.size(), partitions));
    db.config = *cfg;
    RunConfig rc{"merge", {{"max_t", std::to_string(cfg->max_raw_t)}, {"template", cfg->name}}, 0, 1};
    write_document(out, kBaseDb, json(db), provenance(rc));
    fmt::print(log, "merged {} partitions: {} distinct success unitaries\n", partitions, db.entries.size());
    return db;
}

BaseDatabase load_base_db(const fs::path &path, std::string *payload_checksum) {
    json p = read_document(path, kBaseDb);
    if (payload_checksum) *payload_checksum = checksum(p.dump());
    return p.get<BaseDatabase>();
}

AxialDb load_axial_db(const fs::path &path) { return read_document(path, kAxialDb).get<AxialDb>(); }

NonAxialDb load_nonaxial_db(const fs::path &path) { return read_document(path, kNonAxialDb).get<NonAxialDb>(); }

// --- db expand / stats ----------------------------------------------------------------

void cmd_db_expand(const ExpandOptions &opt, std::ostream &log) {
    std::string base_hash;
    BaseDatabase base = load_base_db(opt.base, &base_hash);
    auto refs = base_refs(base);
    RunConfig rc{"db expand", {{"kind", opt.kind}, {"max_exp_t", num(opt.max_exp_t)}, {"base_hash", base_hash}}, 0,
                 opt.threads};
    if (opt.kind == "axial") {
        AxialDb db = expand_axial(refs, opt.max_exp_t, opt.threads, base_hash);
        write_document(opt.out, kAxialDb, json(db), provenance(rc));
        fmt::print(log, "axial database: {} generators, {} entries\n", db.generators.size(), db.entries.size());
    } else if (opt.kind == "nonaxial") {
        NonAxialDb db = expand_nonaxial(refs, opt.max_exp_t, opt.threads, base_hash);
        write_document(opt.out, kNonAxialDb, json(db), provenance(rc));
        fmt::print(log, "non-axial database: {} entries\n", db.entries.size());
    } else {
        throw std::invalid_argument("--kind must be axial or nonaxial");
    }
}

BaseStats base_stats(const BaseDatabase &db) {
    BaseStats s;
    s.total = db.entries.size();
    AxialSplit split = classify_axial(db);
    s.axial = split.axial.size();
    s.non_axial = split.non_axial.size();
    for (const auto &[key, r] : db.entries) {
        double p = r.analysis.p_double();
        int bucket = std::min(9, static_cast<int>(std::floor(p * 10)));
        ++s.t_by_p[{r.analysis.raw_t, bucket}];
        ++s.exp_before[static_cast<int>(std::floor(r.analysis.exp_t))];
        AmplificationPlan a = optimize_amplification(r.analysis.raw_t, p);
        if (a.j > 0) ++s.amplified;
        ++s.exp_after[static_cast<int>(std::floor(a.exp_t))];
    }
    return s;
}

void print_base_stats(const BaseStats &s, std::ostream &out) {
    fmt::print(out, "entries: {}\naxial: {}\nnon-axial: {}\namplified (p < 1/3): {}\n", s.total, s.axial,
               s.non_axial, s.amplified);
    fmt::print(out, "\nraw T x success probability\n{:>6}", "raw_t");
    for (int b = 0; b < 10; ++b) fmt::print(out, " {:>7}", fmt::format("{:.1f}+", b / 10.0));
    fmt::print(out, "\n");
    std::set<int> ts;
    for (const auto &[k, n] : s.t_by_p) ts.insert(k.first);
    for (int t : ts) {
        fmt::print(out, "{:>6}", t);
        for (int b = 0; b < 10; ++b) {
            auto it = s.t_by_p.find({t, b});
            fmt::print(out, " {:>7}", it == s.t_by_p.end() ? 0 : it->second);
        }
        fmt::print(out, "\n");
    }
    fmt::print(out, "\nexpected T (floor)   before    after\n");
    std::set<int> es;
    for (const auto &[e, n] : s.exp_before) es.insert(e);
    for (const auto &[e, n] : s.exp_after) es.insert(e);
    for (int e : es) {
        auto b = s.exp_before.find(e), a = s.exp_after.find(e);
        fmt::print(out, "{:>18} {:>8} {:>8}\n", e, b == s.exp_before.end() ? 0 : b->second,
                   a == s.exp_after.end() ? 0 : a->second);
    }
}

std::string base_stats_csv(const BaseStats &s) {
    std::string csv = "table,key1,key2,count\n";
    csv += fmt::format("split,axial,,{}\nsplit,non_axial,,{}\nsplit,amplified,,{}\n", s.axial, s.non_axial,
                       s.amplified);
    for (const auto &[k, n] : s.t_by_p) csv += fmt::format("raw_t_by_p,{},{:.1f},{}\n", k.first, k.second / 10.0, n);
    for (const auto &[e, n] : s.exp_before) csv += fmt::format("exp_t_before,{},,{}\n", e, n);
    for (const auto &[e, n] : s.exp_after) csv += fmt::format("exp_t_after,{},,{}\n", e, n);
    return csv;
}

std::vector<DensityReport> density_table(const AxialDb &db) {
    std::vector<double> limits;
    for (double t = 5; t < db.header.max_exp_t + 1e-9; t += 5) limits.push_back(t);
    if (limits.empty() || limits.back() < db.header.max_exp_t - 1e-9) limits.push_back(db.header.max_exp_t);
    std::vector<DensityReport> rows;
    for (double lim : limits) {
        AxialDb sub;
        sub.header = db.header;
        sub.header.max_exp_t = lim;
        for (const auto &e : db.entries)
            if (e.exp_t <= lim + 1e-9) sub.entries.push_back(e);
        rows.push_back(axial_density(sub));
    }
    return rows;
}

void print_density_table(const std::vector<DensityReport> &rows, std::ostream &out) {
    fmt::print(out, "{:>10} {:>8} {:>20} {:>20}\n", "max_exp_t", "size", "mean_gap", "max_gap");
    for (const auto &r : rows)
        fmt::print(out, "{:>10} {:>8} {:>20} {:>20}\n", num(r.max_exp_t), r.size, num(r.mean_gap), num(r.max_gap));
}

std::string density_table_csv(const std::vector<DensityReport> &rows) {
    std::string csv = "max_exp_t,size,mean_gap,max_gap\n";
    for (const auto &r : rows) csv += fmt::format("{},{},{},{}\n", num(r.max_exp_t), r.size, num(r.mean_gap), num(r.max_gap));
    return csv;
}

void cmd_db_stats(const fs::path &path, std::ostream &out, const fs::path &csv) {
    json doc;
    try {
        doc = json::parse(read_text(path));
    } catch (const json::exception &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    std::string format = doc.value("format", "");
    std::string csv_text;
    if (format == kBaseDb) {
        BaseStats s = base_stats(open_document(doc, kBaseDb).get<BaseDatabase>());
        print_base_stats(s, out);
        csv_text = base_stats_csv(s);
    } else if (format == kAxialDb) {
        auto rows = density_table(open_document(doc, kAxialDb).get<AxialDb>());
        print_density_table(rows, out);
        csv_text = density_table_csv(rows);
    } else if (format == kNonAxialDb) {
        NonAxialDb db = open_document(doc, kNonAxialDb).get<NonAxialDb>();
        std::map<int, std::size_t> hist;
        for (const auto &e : db.entries) ++hist[static_cast<int>(std::floor(e.exp_t))];
        fmt::print(out, "entries: {}\nbases: {}\n\nexpected T (floor)    count\n", db.entries.size(), db.bases.size());
        csv_text = "exp_t_floor,count\n";
        for (const auto &[e, n] : hist) {
            fmt::print(out, "{:>18} {:>8}\n", e, n);
            csv_text += fmt::format("{},{}\n", e, n);
        }
    } else {
        throw FormatError(path.string() + ": not a database (format '" + format + "')");
    }
    if (!csv.empty()) write_text_atomic(csv, csv_text);
}

// --- decompose ------------------------------------------------------------------------

Mat2c parse_unitary(const std::string &text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw std::invalid_argument("bad number '" + tok + "' in --unitary");
        }
    }
    if (v.size() != 8) throw std::invalid_argument("--unitary needs 8 comma-separated numbers");
    Mat2c m;
    for (int i = 0; i < 4; ++i) m[i] = Complex(v[2 * i], v[2 * i + 1]);
    if (!is_unitary(m, 1e-6)) throw std::invalid_argument("--unitary is not unitary");
    return m;
}

json flat_circuit(const DecompositionPlan &plan) {
    const auto &tab = CliffordTable::get();
    json seq = json::array();
    for (auto it = plan.ops.rbegin(); it != plan.ops.rend(); ++it) {
        if (it->base < 0) {
            json gates = json::array();
            for (const Gate &g : word_gates(tab.word(it->cliff), 0))
                gates.push_back({{"g", gate_name(g)}, {"q", json::array({g.q0})}});
            seq.push_back({{"type", "clifford"}, {"gates", gates}});
            continue;
        }
        const PlanCircuit &pc = plan.circuits.at(it->base);
        Circuit c = decode_circuit(pc.circuit);
        RusAnalysis a = analyze_circuit(c);
        json undo = json::array();
        for (const auto &[outcome, cl] : a.recovery) undo.push_back({{"outcome", outcome}, {"undo", tab.word(tab.inverse(cl))}});
        seq.push_back({{"type", "rus"},
                       {"circuit", c},
                       {"success_outcomes", a.success_outcomes},
                       {"recovery", undo},
                       {"exp_t", pc.exp_t}});
    }
    return seq;
}

DecompositionPlan cmd_decompose(const DecomposeOptions &opt, std::ostream &out) {
    if (opt.angle.has_value() == opt.unitary.has_value())
        throw std::invalid_argument("give exactly one of --angle and --unitary");
    if (!(opt.eps > 0)) throw std::invalid_argument("--eps must be positive");
    DecompositionPlan plan;
    RunConfig rc{"decompose", {{"eps", num(opt.eps)}, {"mode", opt.mode}}, 0, 1};
    if (opt.angle) {
        if (opt.mode != "axial") throw std::invalid_argument("--angle works with --mode axial");
        rc.params["angle"] = num(*opt.angle);
        plan = decompose_axial(load_axial_db(opt.db), *opt.angle, opt.eps);
    } else {
        std::string u;
        for (const auto &z : *opt.unitary) u += (u.empty() ? "" : ",") + num(z.real()) + "," + num(z.imag());
        rc.params["unitary"] = u;
        if (opt.mode == "axial") {
            AxialDb db = load_axial_db(opt.db);
            plan = decompose_unitary(&db, nullptr, *opt.unitary, opt.eps, DecomposeMode::AxialTriple);
        } else if (opt.mode == "nonaxial") {
            NonAxialDb db = load_nonaxial_db(opt.db);
            plan = decompose_unitary(nullptr, &db, *opt.unitary, opt.eps, DecomposeMode::NonAxial);
        } else {
            throw std::invalid_argument("--mode must be axial or nonaxial");
        }
    }
    fmt::print(out, "mode: {}\neps: {}\nachieved distance: {}\nRUS circuits: {}\nexpected T: {}\nvariance: {}\n"
                    "95% bound (Chebyshev): {}\n",
               plan.mode, num(plan.eps), num(plan.achieved_distance), plan.rus_count(), num(plan.exp_t),
               num(plan.var_t), num(plan.exp_t + plan.chebyshev_95));
    if (!opt.out.empty()) {
        json payload{{"plan", plan}, {"flat", flat_circuit(plan)}};
        write_document(opt.out, kPlan, payload, provenance(rc));
    }
    return plan;
}

// --- verify ---------------------------------------------------------------------------

void print_analysis(const RusAnalysis &a, std::ostream &out) {
    const auto &tab = CliffordTable::get();
    fmt::print(out, "ancillas: {}\n", a.ancillas);
    std::string succ;
    for (int o : a.success_outcomes) succ += (succ.empty() ? "" : ",") + std::to_string(o);
    fmt::print(out, "success outcomes: {}\n", succ);
    fmt::print(out, "p = {} = {}\n", a.p.str(), num(a.p_double()));
    fmt::print(out, "U (exact, success block / {}) = {}\n", num(a.alpha0), a.success_block.str());
    const Mat2c &u = a.success_unitary;
    auto c = [](Complex z) { return fmt::format("{}{:+}i", num(z.real()), std::stod(num(z.imag()))); };
    fmt::print(out, "U (float) = [[{}, {}], [{}, {}]]\n", c(u[0]), c(u[1]), c(u[2]), c(u[3]));
    for (const auto &[o, cl] : a.recovery) {
        std::string w = tab.word(tab.inverse(cl));
        fmt::print(out, "failure outcome {}: Clifford {} (undo with {})\n", o, tab.word(cl).empty() ? "I" : tab.word(cl),
                   w.empty() ? "I" : w);
    }
    fmt::print(out, "raw_t = {}\nexp_t = {}\nvar_t = {}\n", a.raw_t, num(a.exp_t), num(a.var_t));
    AmplificationPlan amp = optimize_amplification(a.raw_t, a.p_double());
    if (amp.j == 0)
        fmt::print(out, "amplification: none (j = 0)\n");
    else
        fmt::print(out, "amplification: j = {}, p = {}, raw_t = {}, exp_t = {}, gain = {}\n", amp.j,
                   num(amp.amplified_p), amp.amplified_t, num(amp.exp_t), num(amp.gain));
}

RusAnalysis cmd_verify(const std::string &target, std::ostream &out) {
    Circuit c;
    const Fixture *fx = nullptr;
    try {
        fx = &fixture(target);
        c = fx->circuit;
    } catch (const std::out_of_range &) {
        c = read_circuit_file(target);
    }
    if (fx) fmt::print(out, "fixture: {} ({})\n", fx->name, fx->description);
    fmt::print(out, "circuit: {}\n", c.encode());
    RusAnalysis a = analyze_circuit(c);
    print_analysis(a, out);
    return a;
}

// --- fit / costs ----------------------------------------------------------------------

ScalingFit cmd_fit(const FitOptions &opt, std::ostream &out) {
    AxialDb db = load_axial_db(opt.db);
    ScalingFit f = fit_scaling(db, opt.eps, opt.samples, opt.seed);
    fmt::print(out, "{:>12} {:>8} {:>16} {:>16} {:>16}\n", "eps", "samples", "mean_exp_t", "var_exp_t", "mean_var_t");
    for (const auto &p : f.points)
        fmt::print(out, "{:>12} {:>8} {:>16} {:>16} {:>16}\n", num(p.eps), p.samples, num(p.mean_exp_t),
                   num(p.var_exp_t), num(p.mean_var_t));
    fmt::print(out, "fit: exp_t = {} log2(1/eps) {} {}{}\n", num(f.slope), f.intercept < 0 ? "-" : "+",
               num(std::abs(f.intercept)), f.degenerate ? " (degenerate)" : "");
    if (!opt.out.empty()) {
        RunConfig rc{"fit",
                     {{"eps", eps_list(opt.eps)}, {"samples", std::to_string(opt.samples)},
                      {"db_max_exp_t", num(db.header.max_exp_t)}, {"base_hash", db.header.base_hash}},
                     opt.seed,
                     1};
        write_document(opt.out, kFit, json(f), provenance(rc));
    }
    return f;
}

void cmd_costs(double eps, std::optional<double> theta, std::optional<double> delta, std::ostream &out) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("--eps must lie in (0, 1)");
    fmt::print(out, "eps = {}\n{:<18} {:>16}  {:<40} {}\n", num(eps), "model", "T count", "formula", "note");
    for (const auto &m : reference_costs(eps, theta, delta))
        fmt::print(out, "{:<18} {:>16}  {:<40} {}\n", m.name, num(m.value), m.formula, m.note);
    fmt::print(out, "\nV-gate ratios against V3 (above 1 is better)\n");
    for (const char *name : {"v13", "v17", "v29"}) {
        const Fixture &f = fixture(name);
        RusAnalysis a = analyze_circuit(f.circuit);
        long p = name[1] == '1' ? (name[2] == '3' ? 13 : 17) : 29;
        fmt::print(out, "p = {:<3} exp_t = {:<14} ratio = {}\n", p, num(a.exp_t), num(v_ratio(p, a.exp_t)));
    }
}

// --- pipeline -------------------------------------------------------------------------

namespace {

json pipeline_config(const PipelineOptions &o) {
    return json{{"max_t", o.max_t},         {"partitions", o.partitions}, {"max_exp_t", o.max_exp_t},
                {"eps", o.eps},             {"samples", o.samples},       {"seed", o.seed},
                {"threads", o.threads}};
}

// Checksums of every file belonging to a stage, or nullopt when any is missing or fails to parse.
std::optional<json> stage_fingerprint(const std::vector<fs::path> &files, const char *format) {
    json sums = json::object();
    for (const auto &f : files) {
        if (!fs::exists(f)) return std::nullopt;
        try {
            read_document(f, format);
        } catch (const FormatError &) {
            return std::nullopt;
        }
        sums[f.filename().string()] = checksum(read_text(f));
    }
    return sums;
}

}  // namespace

PipelineReport cmd_pipeline(const PipelineOptions &opt, std::ostream &log) {
    const fs::path &w = opt.work_dir;
    std::error_code ec;
    fs::create_directories(w, ec);
    if (ec) throw IoError("cannot create " + w.string());
    const fs::path state_path = w / "pipeline.state.json";
    json cfg = pipeline_config(opt);
    std::string cfg_hash = checksum(cfg.dump());

    json state{{"config", cfg}, {"config_hash", cfg_hash}, {"stages", json::object()}};
    if (fs::exists(state_path)) {
        try {
            json old = json::parse(read_text(state_path));
            if (old.at("config_hash") == cfg_hash) state["stages"] = old.at("stages");
            else fmt::print(log, "configuration changed; starting over\n");
        } catch (const json::exception &) {
            fmt::print(log, "unreadable checkpoint; starting over\n");
        }
    }

    const fs::path shards = w / "shards", base = w / "base.db.json", axial = w / "axial.db.json",
                   fit = w / "fit.json";
    std::vector<fs::path> shard_metas;
    for (int i = 0; i < opt.partitions; ++i) {
        shard_metas.push_back(shards / (shard_stem(i, opt.partitions) + ".meta.json"));
    }

    struct Stage {
        std::string name;
        std::vector<fs::path> files;
        const char *format;
        std::function<void()> run;
    };
    std::vector<Stage> stages{
        {"search", shard_metas, kShardMeta,
         [&] {
             fs::remove_all(shards);
             cmd_search({opt.max_t, "default", opt.partitions, std::nullopt, opt.threads, shards}, log);
         }},
        {"merge", {base}, kBaseDb, [&] { cmd_merge(shards, base, log); }},
        {"expand", {axial}, kAxialDb, [&] { cmd_db_expand({"axial", opt.max_exp_t, base, axial, opt.threads}, log); }},
        {"fit", {fit}, kFit, [&] { cmd_fit({axial, opt.eps, opt.samples, opt.seed, fit}, log); }},
    };
    // Shard contents are covered by the jsonl checksum inside each meta document.
    auto shards_intact = [&] {
        for (const auto &m : shard_metas) {
            try {
                json meta = read_document(m, kShardMeta);
                fs::path f = shards / meta.at("shard_file").get<std::string>();
                if (!fs::exists(f) || checksum(read_text(f)) != meta.at("shard_checksum").get<std::string>())
                    return false;
            } catch (const std::exception &) {
                return false;
            }
        }
        return true;
    };

    PipelineReport rep;
    bool upstream_ran = false;
    for (auto &st : stages) {
        json &rec = state["stages"];
        bool recorded = rec.contains(st.name);
        if (recorded && !upstream_ran) {
            auto fp = stage_fingerprint(st.files, st.format);
            bool ok = fp && *fp == rec.at(st.name) && (st.name != "search" || shards_intact());
            if (ok) {
                fmt::print(log, "[{}] up to date\n", st.name);
                rep.skipped.push_back(st.name);
                continue;
            }
            fmt::print(log, "[{}] checksum failure in stage artifacts; stage re-queued\n", st.name);
            rep.requeued.push_back(st.name);
        }
        fmt::print(log, "[{}] running\n", st.name);
        rec.erase(st.name);
        write_text_atomic(state_path, state.dump(1) + "\n");
        st.run();
        auto fp = stage_fingerprint(st.files, st.format);
        if (!fp) throw IoError("stage " + st.name + " did not produce its artifacts");
        rec[st.name] = *fp;
        write_text_atomic(state_path, state.dump(1) + "\n");
        rep.ran.push_back(st.name);
        upstream_ran = true;
    }
    return rep;
}

}  // namespace rus
