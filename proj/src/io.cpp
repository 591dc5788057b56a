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

#include "rus/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace rus {

uint64_t fnv1a(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) { return fmt::format("{:016x}", v); }

std::string checksum(std::string_view data) { return "fnv1a:" + hex64(fnv1a(data)); }

std::string fmt12(double v) { return fmt::format("{:.12g}", v); }

namespace {

BigInt big(const json &j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    throw FormatError("expected an integer string");
}

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
    return j.at(name);
}

}  // namespace

void to_json(json &j, const RingScalar &s) {
    const OmegaInt &n = s.num();
    j = json{{"a", n.a.str()}, {"b", n.b.str()}, {"c", n.c.str()}, {"d", n.d.str()}, {"k", s.k()}};
}

void from_json(const json &j, RingScalar &s) {
    OmegaInt n(big(field(j, "a")), big(field(j, "b")), big(field(j, "c")), big(field(j, "d")));
    int k = field(j, "k").get<int>();
    if (k < 0) throw FormatError("negative denominator exponent");
    s = RingScalar::canonical(std::move(n), k);
}

void to_json(json &j, const RealQuad &q) { j = json{{"x", q.x().str()}, {"y", q.y().str()}, {"k", q.k()}}; }

void from_json(const json &j, RealQuad &q) {
    q = RealQuad(big(field(j, "x")), big(field(j, "y")), field(j, "k").get<int>());
}

void to_json(json &j, const RingMatrix &m) {
    j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

void from_json(const json &j, RingMatrix &m) {
    auto rows = field(j, "rows").get<std::size_t>(), cols = field(j, "cols").get<std::size_t>();
    auto entries = field(j, "entries").get<std::vector<RingScalar>>();
    if (entries.size() != rows * cols) throw FormatError("matrix entry count mismatch");
    m = RingMatrix(rows, cols, std::move(entries));
}

void to_json(json &j, const Circuit &c) {
    json gates = json::array();
    for (const Gate &g : c.gates) {
        json q = json::array({g.q0});
        if (g.two_qubit()) q.push_back(g.q1);
        gates.push_back({{"g", gate_name(g)}, {"q", q}});
    }
    j = json{{"width", c.width}, {"gates", gates}, {"measured", c.measured}};
}

void from_json(const json &j, Circuit &c) {
    c = Circuit{};
    c.width = field(j, "width").get<int>();
    for (const auto &g : field(j, "gates")) {
        try {
            c.gates.push_back(parse_gate(field(g, "g").get<std::string>(), field(g, "q").get<std::vector<int>>()));
        } catch (const std::invalid_argument &e) {
            throw FormatError(e.what());
        }
    }
    c.measured = field(j, "measured").get<std::vector<int>>();
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
}

json mat_to_json(const Mat2c &m) {
    json a = json::array();
    for (const auto &z : m) a.push_back(json::array({z.real(), z.imag()}));
    return a;
}

Mat2c mat_from_json(const json &j) {
    if (!j.is_array() || j.size() != 4) throw FormatError("expected four complex entries");
    Mat2c m;
    for (int i = 0; i < 4; ++i) m[i] = Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    return m;
}

void to_json(json &j, const AmplificationPlan &p) {
    j = json{{"j", p.j}, {"amplified_p", p.amplified_p}, {"amplified_t", p.amplified_t}, {"gain", p.gain},
             {"exp_t", p.exp_t}};
}

void from_json(const json &j, AmplificationPlan &p) {
    p.j = field(j, "j").get<int>();
    p.amplified_p = field(j, "amplified_p").get<double>();
    p.amplified_t = field(j, "amplified_t").get<int>();
    p.gain = field(j, "gain").get<double>();
    p.exp_t = field(j, "exp_t").get<double>();
}

void to_json(json &j, const RusAnalysis &a) {
    json rec = json::array();
    for (const auto &[o, c] : a.recovery) rec.push_back(json::array({o, c}));
    j = json{{"ancillas", a.ancillas},
             {"success_block", a.success_block},
             {"success_unitary", mat_to_json(a.success_unitary)},
             {"alpha0", a.alpha0},
             {"success_outcomes", a.success_outcomes},
             {"recovery", rec},
             {"zero_outcomes", a.zero_outcomes},
             {"outcome_weight", a.outcome_weight},
             {"p", a.p},
             {"p_float", a.p_double()},
             {"raw_t", a.raw_t},
             {"exp_t", a.exp_t},
             {"var_t", a.var_t},
             {"key", a.key}};
}

void from_json(const json &j, RusAnalysis &a) {
    a = RusAnalysis{};
    a.ancillas = field(j, "ancillas").get<int>();
    a.success_block = field(j, "success_block").get<RingMatrix>();
    a.success_unitary = mat_from_json(field(j, "success_unitary"));
    a.alpha0 = field(j, "alpha0").get<double>();
    a.success_outcomes = field(j, "success_outcomes").get<std::vector<int>>();
    for (const auto &p : field(j, "recovery")) a.recovery[p.at(0).get<int>()] = p.at(1).get<int>();
    a.zero_outcomes = field(j, "zero_outcomes").get<std::vector<int>>();
    a.outcome_weight = field(j, "outcome_weight").get<std::vector<RealQuad>>();
    a.p = field(j, "p").get<RealQuad>();
    a.raw_t = field(j, "raw_t").get<int>();
    a.exp_t = field(j, "exp_t").get<double>();
    a.var_t = field(j, "var_t").get<double>();
    a.key = field(j, "key").get<std::string>();
}

json analysis_report_json(const RusAnalysis &a, const AmplificationPlan *plan) {
    json j = a;
    if (plan) j["amplification"] = *plan;
    return j;
}

void to_json(json &j, const SearchRecord &r) { j = json{{"circuit", r.circuit}, {"analysis", r.analysis}}; }

void from_json(const json &j, SearchRecord &r) {
    r.circuit = field(j, "circuit").get<Circuit>();
    r.analysis = field(j, "analysis").get<RusAnalysis>();
}

void to_json(json &j, const SearchStats &s) {
    j = json{{"candidates", s.candidates},
             {"rejected_non_unitary", s.rejected_non_unitary},
             {"rejected_all_clifford", s.rejected_all_clifford},
             {"rejected_inconsistent", s.rejected_inconsistent},
             {"rejected_deterministic", s.rejected_deterministic},
             {"successes", s.successes}};
}

void from_json(const json &j, SearchStats &s) {
    s.candidates = field(j, "candidates").get<uint64_t>();
    s.rejected_non_unitary = field(j, "rejected_non_unitary").get<uint64_t>();
    s.rejected_all_clifford = field(j, "rejected_all_clifford").get<uint64_t>();
    s.rejected_inconsistent = field(j, "rejected_inconsistent").get<uint64_t>();
    s.rejected_deterministic = field(j, "rejected_deterministic").get<uint64_t>();
    s.successes = field(j, "successes").get<uint64_t>();
}

void to_json(json &j, const TemplateConfig &c) {
    j = json{{"name", c.name},
             {"max_raw_t", c.max_raw_t},
             {"prune", c.prune},
             {"data_slot", c.data_slot},
             {"keep_deterministic", c.keep_deterministic}};
}

void from_json(const json &j, TemplateConfig &c) {
    c.name = field(j, "name").get<std::string>();
    c.max_raw_t = field(j, "max_raw_t").get<int>();
    c.prune = field(j, "prune").get<bool>();
    c.data_slot = field(j, "data_slot").get<bool>();
    c.keep_deterministic = field(j, "keep_deterministic").get<bool>();
}

void to_json(json &j, const BaseDatabase &db) {
    json entries = json::array();
    for (const auto &[key, rec] : db.entries) entries.push_back(rec);
    j = json{{"config", db.config}, {"stats", db.stats}, {"entries", entries}};
}

void from_json(const json &j, BaseDatabase &db) {
    db = BaseDatabase{};
    db.config = field(j, "config").get<TemplateConfig>();
    db.stats = field(j, "stats").get<SearchStats>();
    for (const auto &e : field(j, "entries")) {
        SearchRecord r = e.get<SearchRecord>();
        std::string key = r.analysis.key;
        db.entries.emplace(std::move(key), std::move(r));
    }
}

void to_json(json &j, const BaseRef &b) {
    j = json{{"key", b.key},     {"circuit", b.circuit}, {"raw_t", b.raw_t},
             {"p", b.p},         {"exp_t", b.exp_t},     {"var_t", b.var_t},
             {"unitary", mat_to_json(b.unitary)}};
}

void from_json(const json &j, BaseRef &b) {
    b.key = field(j, "key").get<std::string>();
    b.circuit = field(j, "circuit").get<std::string>();
    b.raw_t = field(j, "raw_t").get<int>();
    b.p = field(j, "p").get<double>();
    b.exp_t = field(j, "exp_t").get<double>();
    b.var_t = field(j, "var_t").get<double>();
    b.unitary = mat_from_json(field(j, "unitary"));
}

void to_json(json &j, const DbHeader &h) {
    j = json{{"kind", h.kind}, {"max_exp_t", h.max_exp_t}, {"base_hash", h.base_hash}, {"tool_version", h.tool_version}};
}

void from_json(const json &j, DbHeader &h) {
    h.kind = field(j, "kind").get<std::string>();
    h.max_exp_t = field(j, "max_exp_t").get<double>();
    h.base_hash = field(j, "base_hash").get<std::string>();
    h.tool_version = field(j, "tool_version").get<std::string>();
}

void to_json(json &j, const AxialDb &db) {
    json gens = json::array();
    for (const auto &g : db.generators) gens.push_back(json::array({g.base, g.phi, g.left, g.right}));
    json entries = json::array();
    for (const auto &e : db.entries) {
        json recipe = json::array();
        for (const auto &s : e.recipe) recipe.push_back(json::array({s.generator, s.sign}));
        entries.push_back(json::array({e.theta, e.exp_t, e.var_t, recipe, e.raw, e.frame.s_power, e.frame.flip}));
    }
    j = json{{"header", db.header}, {"bases", db.bases}, {"generators", gens}, {"entries", entries}};
}

void from_json(const json &j, AxialDb &db) {
    db = AxialDb{};
    db.header = field(j, "header").get<DbHeader>();
    if (db.header.kind != "axial") throw FormatError("database kind is '" + db.header.kind + "', expected 'axial'");
    db.bases = field(j, "bases").get<std::vector<BaseRef>>();
    for (const auto &g : field(j, "generators"))
        db.generators.push_back({g.at(0).get<int>(), g.at(1).get<double>(), g.at(2).get<int>(), g.at(3).get<int>()});
    for (const auto &a : field(j, "entries")) {
        AxialEntry e;
        e.theta = a.at(0).get<double>();
        e.exp_t = a.at(1).get<double>();
        e.var_t = a.at(2).get<double>();
        for (const auto &s : a.at(3)) e.recipe.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        e.raw = a.at(4).get<double>();
        e.frame = {a.at(5).get<int>(), a.at(6).get<bool>()};
        db.entries.push_back(std::move(e));
    }
    for (std::size_t i = 1; i < db.entries.size(); ++i)
        if (!(db.entries[i - 1].theta < db.entries[i].theta)) throw FormatError("axial entries not strictly sorted");
}

void to_json(json &j, const NonAxialDb &db) {
    json entries = json::array();
    for (const auto &e : db.entries) {
        json recipe = json::array();
        for (const auto &s : e.recipe) recipe.push_back(json::array({s.base, s.cliff}));
        entries.push_back(json{{"euler", e.euler},
                               {"recipe", recipe},
                               {"left", e.left},
                               {"right", e.right},
                               {"exp_t", e.exp_t},
                               {"var_t", e.var_t}});
    }
    j = json{{"header", db.header}, {"bases", db.bases}, {"entries", entries}};
}

void from_json(const json &j, NonAxialDb &db) {
    db = NonAxialDb{};
    db.header = field(j, "header").get<DbHeader>();
    if (db.header.kind != "nonaxial")
        throw FormatError("database kind is '" + db.header.kind + "', expected 'nonaxial'");
    db.bases = field(j, "bases").get<std::vector<BaseRef>>();
    for (const auto &a : field(j, "entries")) {
        NonAxialEntry e;
        e.euler = field(a, "euler").get<std::array<double, 3>>();
        e.unitary = euler_matrix(e.euler[0], e.euler[1], e.euler[2]);
        for (const auto &s : field(a, "recipe")) e.recipe.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        e.left = field(a, "left").get<int>();
        e.right = field(a, "right").get<int>();
        e.exp_t = field(a, "exp_t").get<double>();
        e.var_t = field(a, "var_t").get<double>();
        db.entries.push_back(std::move(e));
    }
    db.build_index();
}

void to_json(json &j, const DecompositionPlan &p) {
    json ops = json::array();
    for (const Op &op : p.ops) ops.push_back(op.base >= 0 ? json{{"rus", op.base}} : json{{"clifford", op.cliff}});
    json circuits = json::array();
    for (const auto &c : p.circuits)
        circuits.push_back(json{{"key", c.key},
                                {"circuit", c.circuit},
                                {"exp_t", c.exp_t},
                                {"var_t", c.var_t},
                                {"unitary", mat_to_json(c.unitary)}});
    j = json{{"mode", p.mode},
             {"target", mat_to_json(p.target)},
             {"eps", p.eps},
             {"achieved_distance", p.achieved_distance},
             {"ops", ops},
             {"circuits", circuits},
             {"exp_t", p.exp_t},
             {"var_t", p.var_t},
             {"chebyshev_95", p.chebyshev_95}};
}

void from_json(const json &j, DecompositionPlan &p) {
    p = DecompositionPlan{};
    p.mode = field(j, "mode").get<std::string>();
    p.target = mat_from_json(field(j, "target"));
    p.eps = field(j, "eps").get<double>();
    p.achieved_distance = field(j, "achieved_distance").get<double>();
    for (const auto &o : field(j, "ops")) {
        if (o.contains("rus"))
            p.ops.push_back({-1, o.at("rus").get<int>()});
        else
            p.ops.push_back({field(o, "clifford").get<int>(), -1});
    }
    for (const auto &c : field(j, "circuits"))
        p.circuits.push_back({field(c, "key").get<std::string>(), field(c, "circuit").get<std::string>(),
                              field(c, "exp_t").get<double>(), field(c, "var_t").get<double>(),
                              mat_from_json(field(c, "unitary"))});
    p.exp_t = field(j, "exp_t").get<double>();
    p.var_t = field(j, "var_t").get<double>();
    p.chebyshev_95 = field(j, "chebyshev_95").get<double>();
}

void to_json(json &j, const ScalingFit &f) {
    json pts = json::array();
    for (const auto &p : f.points)
        pts.push_back(json{{"eps", p.eps},
                           {"samples", p.samples},
                           {"mean_exp_t", p.mean_exp_t},
                           {"var_exp_t", p.var_exp_t},
                           {"mean_var_t", p.mean_var_t},
                           {"mean_chebyshev_95", p.mean_chebyshev_95}});
    j = json{{"slope", f.slope},         {"intercept", f.intercept}, {"residual", f.residual},
             {"degenerate", f.degenerate}, {"seed", f.seed},         {"n_samples", f.n_samples},
             {"points", pts}};
}

void from_json(const json &j, ScalingFit &f) {
    f = ScalingFit{};
    f.slope = field(j, "slope").get<double>();
    f.intercept = field(j, "intercept").get<double>();
    f.residual = field(j, "residual").get<double>();
    f.degenerate = field(j, "degenerate").get<bool>();
    f.seed = field(j, "seed").get<uint64_t>();
    f.n_samples = field(j, "n_samples").get<std::size_t>();
    for (const auto &p : field(j, "points"))
        f.points.push_back({field(p, "eps").get<double>(), field(p, "samples").get<std::size_t>(),
                            field(p, "mean_exp_t").get<double>(), field(p, "var_exp_t").get<double>(),
                            field(p, "mean_var_t").get<double>(), field(p, "mean_chebyshev_95").get<double>()});
}

// --- Documents ------------------------------------------------------------------------

json RunConfig::to_json() const {
    return json{{"command", command}, {"params", params}, {"seed", seed}, {"threads", threads}};
}

RunConfig RunConfig::from_json(const json &j) {
    RunConfig c;
    c.command = field(j, "command").get<std::string>();
    c.params = field(j, "params").get<std::map<std::string, std::string>>();
    c.seed = field(j, "seed").get<uint64_t>();
    c.threads = field(j, "threads").get<int>();
    return c;
}

std::string RunConfig::hash() const { return checksum(to_json().dump()); }

json provenance(const RunConfig &cfg) {
    return json{{"tool_version", kToolVersion}, {"config", cfg.to_json()}, {"config_hash", cfg.hash()}};
}

json make_document(const std::string &format, const json &payload, const json &prov) {
    return json{{"format", format},
                {"version", kFormatVersion},
                {"tool_version", kToolVersion},
                {"provenance", prov},
                {"checksum", checksum(payload.dump())},
                {"payload", payload}};
}

json open_document(const json &doc, const std::string &format) {
    std::string got = field(doc, "format").get<std::string>();
    if (got != format) throw FormatError("document format '" + got + "', expected '" + format + "'");
    std::string version = field(doc, "version").get<std::string>();
    std::string ours = kFormatVersion;
    if (version.substr(0, version.find('.')) != ours.substr(0, ours.find('.')))
        throw FormatError("unsupported format version " + version + " (this tool reads " + ours + ")");
    const json &payload = field(doc, "payload");
    std::string sum = checksum(payload.dump());
    if (field(doc, "checksum").get<std::string>() != sum)
        throw FormatError("checksum mismatch: stored " + doc.at("checksum").get<std::string>() + ", computed " + sum);
    return payload;
}

void write_text_atomic(const std::filesystem::path &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_document(const std::filesystem::path &path, const std::string &format, const json &payload,
                    const json &prov) {
    write_text_atomic(path, make_document(format, payload, prov).dump(1) + "\n");
}

json read_document(const std::filesystem::path &path, const std::string &format) {
    json doc;
    try {
        doc = json::parse(read_text(path));
    } catch (const json::exception &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    try {
        return open_document(doc, format);
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string to_jsonl(const std::vector<SearchRecord> &records) {
    std::string out;
    for (const auto &r : records) out += json(r).dump() + "\n";
    return out;
}

std::vector<SearchRecord> from_jsonl(const std::string &text) {
    std::vector<SearchRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line).get<SearchRecord>());
        } catch (const json::exception &e) {
            throw FormatError(std::string("bad search record: ") + e.what());
        }
    }
    return out;
}

Circuit read_circuit_file(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    try {
        if (j.contains("payload")) return open_document(j, "rus.circuit").get<Circuit>();
        return j.get<Circuit>();
    } catch (const json::exception &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace rus
