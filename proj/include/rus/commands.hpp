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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rus/io.hpp"

namespace rus {

namespace fs = std::filesystem;

/// Worker count from RUS_THREADS when set, otherwise fallback.
int threads_from_env(int fallback);

/// Named search templates: "default" (pruned, Clifford+T data slot), "unpruned", "clifford-data".
TemplateConfig template_by_name(const std::string &name, int max_raw_t);

struct SearchOptions {
    int max_t = 4;
    std::string template_name = "default";
    int partitions = 1;
    /// Only this partition when set; all partitions otherwise.
    std::optional<int> partition;
    int threads = 1;
    fs::path out_dir;
};

/// Writes shard-<i>-of-<P>.jsonl plus a meta document with stats and the shard checksum.
void cmd_search(const SearchOptions &opt, std::ostream &log);

/// Merges every shard in dir (all partitions must be present and intact) into a base database
/// document. The output does not depend on the partition count.
BaseDatabase cmd_merge(const fs::path &dir, const fs::path &out, std::ostream &log);

BaseDatabase load_base_db(const fs::path &path, std::string *payload_checksum = nullptr);
AxialDb load_axial_db(const fs::path &path);
NonAxialDb load_nonaxial_db(const fs::path &path);

struct ExpandOptions {
    std::string kind = "axial";
    double max_exp_t = 20;
    fs::path base;
    fs::path out;
    int threads = 1;
};

void cmd_db_expand(const ExpandOptions &opt, std::ostream &log);

/// Histograms of a base database, or the density table of an axial database. csv is
/// written when non-empty.
void cmd_db_stats(const fs::path &db, std::ostream &out, const fs::path &csv = {});

struct BaseStats {
    std::size_t total = 0, axial = 0, non_axial = 0, amplified = 0;
    /// (raw_t, p bucket of width 0.1) -> count
    std::map<std::pair<int, int>, std::size_t> t_by_p;
    /// floor(exp_t) -> count, before and after amplification
    std::map<int, std::size_t> exp_before, exp_after;
};
BaseStats base_stats(const BaseDatabase &db);
void print_base_stats(const BaseStats &s, std::ostream &out);
std::string base_stats_csv(const BaseStats &s);

/// Density rows for every multiple of 5 up to the database limit.
std::vector<DensityReport> density_table(const AxialDb &db);
void print_density_table(const std::vector<DensityReport> &rows, std::ostream &out);
std::string density_table_csv(const std::vector<DensityReport> &rows);

struct DecomposeOptions {
    std::optional<double> angle;
    std::optional<Mat2c> unitary;
    double eps = 1e-2;
    std::string mode = "axial";  // axial (angle or axial triple) or nonaxial
    fs::path db;
    fs::path out;  // plan document; stdout summary only when empty
};

/// Parses "u00r,u00i,u01r,u01i,u10r,u10i,u11r,u11i".
Mat2c parse_unitary(const std::string &text);
/// Gate-level listing of a plan in application order.
json flat_circuit(const DecompositionPlan &plan);
DecompositionPlan cmd_decompose(const DecomposeOptions &opt, std::ostream &out);

/// Fixture name or circuit file. Throws AnalysisError for circuits that are not RUS.
RusAnalysis cmd_verify(const std::string &target, std::ostream &out);
void print_analysis(const RusAnalysis &a, std::ostream &out);

struct FitOptions {
    fs::path db;
    std::vector<double> eps{1e-1, 1e-2, 1e-3};
    std::size_t samples = 1000;
    uint64_t seed = 1;
    fs::path out;
};
ScalingFit cmd_fit(const FitOptions &opt, std::ostream &out);

void cmd_costs(double eps, std::optional<double> theta, std::optional<double> delta, std::ostream &out);

struct PipelineOptions {
    fs::path work_dir;
    int max_t = 6;
    int partitions = 4;
    double max_exp_t = 20;
    std::vector<double> eps{1e-1, 1e-2, 1e-3};
    std::size_t samples = 1000;
    uint64_t seed = 1;
    int threads = 1;
};

struct PipelineReport {
    std::vector<std::string> ran, skipped, requeued;
};

/// search -> merge -> expand (axial) -> fit with a checkpoint file. Completed stages whose
/// artifacts still verify are skipped; a stage whose artifact fails its checksum is re-run,
/// along with everything after it.
PipelineReport cmd_pipeline(const PipelineOptions &opt, std::ostream &log);

}  // namespace rus
