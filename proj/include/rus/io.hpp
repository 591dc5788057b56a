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
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rus/analyzer.hpp"
#include "rus/composer.hpp"
#include "rus/decomposer.hpp"
#include "rus/fixtures.hpp"
#include "rus/search.hpp"

namespace rus {

using json = nlohmann::json;

inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr const char *kFormatVersion = "1.0";

/// File system failures (exit code 4).
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed, mismatched or corrupted content (exit code 3).
class FormatError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t fnv1a(std::string_view data);
std::string hex64(uint64_t v);
/// "fnv1a:<16 hex digits>" of data.
std::string checksum(std::string_view data);

/// Fixed 12-significant-digit formatting used by every report.
std::string fmt12(double v);

// --- JSON conversions (found by nlohmann through ADL) ---------------------------------

void to_json(json &j, const RingScalar &s);
void from_json(const json &j, RingScalar &s);
void to_json(json &j, const RealQuad &q);
void from_json(const json &j, RealQuad &q);
void to_json(json &j, const RingMatrix &m);
void from_json(const json &j, RingMatrix &m);
void to_json(json &j, const Circuit &c);
void from_json(const json &j, Circuit &c);
void to_json(json &j, const AmplificationPlan &p);
void from_json(const json &j, AmplificationPlan &p);
void to_json(json &j, const RusAnalysis &a);
void from_json(const json &j, RusAnalysis &a);
void to_json(json &j, const SearchRecord &r);
void from_json(const json &j, SearchRecord &r);
void to_json(json &j, const SearchStats &s);
void from_json(const json &j, SearchStats &s);
void to_json(json &j, const TemplateConfig &c);
void from_json(const json &j, TemplateConfig &c);
void to_json(json &j, const BaseDatabase &db);
void from_json(const json &j, BaseDatabase &db);
void to_json(json &j, const BaseRef &b);
void from_json(const json &j, BaseRef &b);
void to_json(json &j, const DbHeader &h);
void from_json(const json &j, DbHeader &h);
void to_json(json &j, const AxialDb &db);
void from_json(const json &j, AxialDb &db);
void to_json(json &j, const NonAxialDb &db);
void from_json(const json &j, NonAxialDb &db);
void to_json(json &j, const DecompositionPlan &p);
void from_json(const json &j, DecompositionPlan &p);
void to_json(json &j, const ScalingFit &f);
void from_json(const json &j, ScalingFit &f);

json mat_to_json(const Mat2c &m);
Mat2c mat_from_json(const json &j);

/// Analysis JSON with an amplification plan attached.
json analysis_report_json(const RusAnalysis &a, const AmplificationPlan *plan);

// --- Documents ------------------------------------------------------------------------

/// Command parameters recorded next to every output.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    uint64_t seed = 0;
    int threads = 1;

    json to_json() const;
    static RunConfig from_json(const json &j);
    std::string hash() const;
};

json provenance(const RunConfig &cfg);

/// {"format", "version", "tool_version", "provenance", "checksum", "payload"}; the checksum covers
/// the compact dump of the payload.
json make_document(const std::string &format, const json &payload, const json &prov);
/// Checks format, major version and checksum; returns the payload.
json open_document(const json &doc, const std::string &format);

/// Writes to a temporary file in the same directory and renames it over path.
void write_text_atomic(const std::filesystem::path &path, const std::string &content);
std::string read_text(const std::filesystem::path &path);

void write_document(const std::filesystem::path &path, const std::string &format, const json &payload,
                    const json &prov);
json read_document(const std::filesystem::path &path, const std::string &format);

/// One compact JSON object per line.
std::string to_jsonl(const std::vector<SearchRecord> &records);
std::vector<SearchRecord> from_jsonl(const std::string &text);

/// Circuit in the plain gate-list schema, or a circuit document.
Circuit read_circuit_file(const std::filesystem::path &path);

}  // namespace rus
