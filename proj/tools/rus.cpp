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

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>

#include "rus/analyzer.hpp"
#include "rus/commands.hpp"

namespace {

enum Exit { kOk = 0, kOther = 1, kNoEntry = 2, kValidation = 3, kIo = 4 };

int fail(int code, const std::string &msg) {
    std::cerr << "rus: " << msg << "\n";
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace rus;
    CLI::App app{"Repeat-until-success circuit synthesis over Clifford+T"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (RUS_THREADS overrides)");

    SearchOptions so;
    std::string search_out;
    auto *search = app.add_subcommand("search", "Exhaustive RUS circuit search");
    search->add_option("--max-t", so.max_t, "Largest raw T count")->required();
    search->add_option("--template", so.template_name, "default, unpruned or clifford-data");
    search->add_option("--partitions", so.partitions, "Number of partitions");
    search->add_option("--partition", so.partition, "Run only this partition");
    search->add_option("--out", search_out, "Shard directory")->required();

    std::string merge_dir, merge_out;
    auto *merge = app.add_subcommand("merge", "Merge search shards into a base database");
    merge->add_option("dir", merge_dir, "Shard directory")->required();
    merge->add_option("--out", merge_out, "Base database file")->required();

    auto *db = app.add_subcommand("db", "Composition databases");
    db->require_subcommand(1);
    ExpandOptions eo;
    std::string expand_base, expand_out;
    auto *expand = db->add_subcommand("expand", "Build an axial or non-axial database");
    expand->add_option("--kind", eo.kind, "axial or nonaxial");
    expand->add_option("--max-exp-t", eo.max_exp_t, "Expected T limit");
    expand->add_option("--base", expand_base, "Base database")->required();
    expand->add_option("--out", expand_out, "Output file")->required();
    std::string stats_db, stats_csv;
    auto *stats = db->add_subcommand("stats", "Histograms or density report");
    stats->add_option("db", stats_db, "Database file")->required();
    stats->add_option("--csv", stats_csv, "Also write CSV");

    DecomposeOptions dopt;
    double angle = 0;
    std::string unitary, dec_db, dec_out;
    auto *dec = app.add_subcommand("decompose", "Approximate a rotation or unitary");
    auto *angle_opt = dec->add_option("--angle", angle, "Z rotation angle");
    auto *unitary_opt = dec->add_option("--unitary", unitary, "u00r,u00i,u01r,u01i,u10r,u10i,u11r,u11i");
    angle_opt->excludes(unitary_opt);
    dec->add_option("--eps", dopt.eps, "Target distance");
    dec->add_option("--mode", dopt.mode, "axial or nonaxial");
    dec->add_option("--db", dec_db, "Axial or non-axial database")->required();
    dec->add_option("--out", dec_out, "Plan file");

    std::string verify_target;
    bool verify_json = false;
    auto *verify = app.add_subcommand("verify", "Analyze a fixture or circuit file");
    auto *verify_opt = verify->add_option("target", verify_target, "Fixture name or circuit JSON file");
    verify->add_flag("--json", verify_json, "Print the analysis as JSON");
    bool list_fixtures = false;
    verify->add_flag("--list", list_fixtures, "List fixtures")->excludes(verify_opt);

    FitOptions fo;
    std::string fit_db, fit_out;
    auto *fit = app.add_subcommand("fit", "Fit expected T against log2(1/eps)");
    fit->add_option("--db", fit_db, "Axial database")->required();
    fit->add_option("--eps", fo.eps, "Target distances")->delimiter(',');
    fit->add_option("--samples", fo.samples, "Angles per eps");
    fit->add_option("--seed", fo.seed, "Random seed");
    fit->add_option("--out", fit_out, "Fit file");

    double costs_eps = 1e-6;
    std::optional<double> costs_theta, costs_delta;
    auto *costs = app.add_subcommand("costs", "Compare literature cost formulas");
    costs->add_option("--eps", costs_eps, "Target distance");
    costs->add_option("--theta", costs_theta, "Rotation angle for gearbox models");
    costs->add_option("--delta", costs_delta, "Hybrid split parameter");

    PipelineOptions po;
    std::string work;
    auto *pipe = app.add_subcommand("pipeline", "search, merge, expand and fit with checkpoints");
    pipe->add_option("--work", work, "Working directory")->required();
    pipe->add_option("--max-t", po.max_t, "Largest raw T count");
    pipe->add_option("--partitions", po.partitions, "Search partitions");
    pipe->add_option("--max-exp-t", po.max_exp_t, "Axial database limit");
    pipe->add_option("--eps", po.eps, "Fit distances")->delimiter(',');
    pipe->add_option("--samples", po.samples, "Angles per eps");
    pipe->add_option("--seed", po.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        threads = threads_from_env(threads);
        auto &out = std::cout;
        if (*search) {
            so.threads = threads;
            so.out_dir = search_out;
            cmd_search(so, out);
        } else if (*merge) {
            cmd_merge(merge_dir, merge_out, out);
        } else if (*expand) {
            eo.base = expand_base;
            eo.out = expand_out;
            eo.threads = threads;
            cmd_db_expand(eo, out);
        } else if (*stats) {
            cmd_db_stats(stats_db, out, stats_csv);
        } else if (*dec) {
            if (*angle_opt) dopt.angle = angle;
            if (*unitary_opt) dopt.unitary = parse_unitary(unitary);
            dopt.db = dec_db;
            dopt.out = dec_out;
            cmd_decompose(dopt, out);
        } else if (*verify) {
            if (list_fixtures) {
                for (const auto &f : fixtures()) fmt::print("{:<16} {}\n", f.name, f.description);
            } else if (verify_target.empty()) {
                throw std::invalid_argument("verify: a target or --list is required");
            } else if (verify_json) {
                std::ostringstream sink;
                RusAnalysis a = cmd_verify(verify_target, sink);
                AmplificationPlan amp = optimize_amplification(a.raw_t, a.p_double());
                std::cout << analysis_report_json(a, &amp).dump(1) << "\n";
            } else {
                cmd_verify(verify_target, out);
            }
        } else if (*fit) {
            fo.db = fit_db;
            fo.out = fit_out;
            cmd_fit(fo, out);
        } else if (*costs) {
            cmd_costs(costs_eps, costs_theta, costs_delta, out);
        } else if (*pipe) {
            po.work_dir = work;
            po.threads = threads;
            PipelineReport r = cmd_pipeline(po, out);
            fmt::print("ran {} stage(s), skipped {}, re-queued {}\n", r.ran.size(), r.skipped.size(),
                       r.requeued.size());
        }
        return kOk;
    } catch (const NoEntryWithinEps &e) {
        return fail(kNoEntry, fmt::format("{} (nearest distance {})", e.what(), fmt12(e.nearest())));
    } catch (const AnalysisError &e) {
        return fail(kValidation, fmt::format("{}: {}", analysis_error_name(e.kind()), e.what()));
    } catch (const FormatError &e) {
        return fail(kValidation, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(kValidation, e.what());
    } catch (const nlohmann::json::exception &e) {
        return fail(kValidation, e.what());
    } catch (const IoError &e) {
        return fail(kIo, e.what());
    } catch (const std::filesystem::filesystem_error &e) {
        return fail(kIo, e.what());
    } catch (const std::exception &e) {
        return fail(kOther, e.what());
    }
}
