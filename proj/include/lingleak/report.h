/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LINGLEAK_REPORT_H_
#define LINGLEAK_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/linguametrics.h"
#include "lingleak/table.h"

namespace lingleak {

struct LeakageSummary {
  std::string language;
  std::map<int, int64_t> extraction_unique;  // prompt size -> unique count
  std::optional<double> memorization_tail_mass;
  std::optional<double> mia_accuracy;
  std::optional<double> mia_overlap;
};

std::string LeakageSummaryToJson(const LeakageSummary& summary);
absl::StatusOr<LeakageSummary> LeakageSummaryFromJson(std::string_view json);

inline constexpr double kDefaultTailThreshold = 0.02;
inline constexpr const char* kIndicatorColumns[] = {"M", "S", "R",
                                                    "T", "C", "D"};

// Spearman's rho with average ranks. Returns nullopt when either input is
// constant.
absl::StatusOr<std::optional<double>> Spearman(const std::vector<double>& x,
                                               const std::vector<double>& y);

// One row per language: the six indicators followed by leakage columns
// (extract_k<size>, mem_tail_mass, mia_accuracy, mia_overlap). Missing
// measures are null. Key sets must match.
absl::StatusOr<Table> Join(
    const std::map<std::string, LinguisticProfile>& profiles,
    const std::map<std::string, LeakageSummary>& leakage);

// Table with language and the six indicators.
Table ProfileTable(const std::map<std::string, LinguisticProfile>& profiles);

struct Correlation {
  std::string indicator;
  std::string measure;
  std::optional<double> rho;
  int n = 0;
};

// Spearman between every indicator column and every leakage column of a
// joined table, over the rows where both are present. Pairs with fewer than
// three rows report a null rho.
std::vector<Correlation> CorrelationReport(const Table& joined);
Table CorrelationTable(const std::vector<Correlation>& correlations);

struct Artifact {
  std::string name;  // file stem, [A-Za-z0-9_.-]
  std::optional<Table> table;
  std::optional<std::string> json;  // overrides the table's JSON rendering
  std::optional<std::string> svg;
  // Verbatim files (full file name, content), written for every format.
  std::vector<std::pair<std::string, std::string>> raw_files;
};

enum class OutputFormat { kJson, kCsv, kSvg };

struct ManifestEntry {
  std::string path;  // relative to out_dir
  std::string sha256;
  uint64_t bytes = 0;
};

// Writes <name>.{csv,json,svg} for the requested formats plus
// manifest.json, which lists every written file (sorted by path) with its
// digest.
absl::StatusOr<std::vector<ManifestEntry>> Emit(
    const std::vector<Artifact>& artifacts, const std::string& out_dir,
    const std::set<OutputFormat>& formats);

absl::StatusOr<std::set<OutputFormat>> ParseFormats(const std::string& spec);

// Reads a whole file, with the path in any error.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& content);

}  // namespace lingleak

#endif  // LINGLEAK_REPORT_H_
