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

#include "lingleak/report.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "lingleak/digest.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

std::vector<double> AverageRanks(const std::vector<double>& v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = static_cast<double>(i + j) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

const LinguisticProfile& Get(const std::map<std::string, LinguisticProfile>& m,
                             const std::string& k) {
  return m.at(k);
}

std::vector<double> IndicatorValues(const LinguisticProfile& p) {
  return {p.morph_complexity, p.syntactic_entropy, p.redundancy,
          p.avg_word_len,     p.cap_rate,          p.vocab_richness};
}

Cell OptionalCell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate();
}

bool ValidStem(const std::string& name) {
  if (name.empty() || name == "manifest" || name == "manifest.json") {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.';
  });
}

}  // namespace

std::string LeakageSummaryToJson(const LeakageSummary& summary) {
  nlohmann::ordered_json extraction = nlohmann::ordered_json::object();
  for (const auto& [k, c] : summary.extraction_unique) {
    extraction[StrCat(k)] = c;
  }
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j = {
      {"language", summary.language},
      {"extraction_unique", extraction},
      {"memorization_tail_mass", opt(summary.memorization_tail_mass)},
      {"mia_accuracy", opt(summary.mia_accuracy)},
      {"mia_overlap", opt(summary.mia_overlap)}};
  return j.dump(2) + "\n";
}

absl::StatusOr<LeakageSummary> LeakageSummaryFromJson(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("leakage summary is not a JSON object");
  }
  try {
    LeakageSummary s;
    s.language = j.at("language").get<std::string>();
    for (const auto& [k, c] : j.at("extraction_unique").items()) {
      s.extraction_unique[std::stoi(k)] = c.get<int64_t>();
    }
    auto opt = [&j](const char* key) -> std::optional<double> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      return it->get<double>();
    };
    s.memorization_tail_mass = opt("memorization_tail_mass");
    s.mia_accuracy = opt("mia_accuracy");
    s.mia_overlap = opt("mia_overlap");
    return s;
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(
        StrCat("malformed leakage summary: ", e.what()));
  }
}

absl::StatusOr<std::optional<double>> Spearman(const std::vector<double>& x,
                                               const std::vector<double>& y) {
  if (x.size() != y.size()) {
    return absl::InvalidArgumentError("spearman inputs differ in length");
  }
  if (x.size() < 3) {
    return absl::InvalidArgumentError("spearman needs at least 3 pairs");
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1) / 2;  // mean of ranks 1..n, also under ties
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) return std::optional<double>();
  return std::optional<double>(
      std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0));
}

absl::StatusOr<Table> Join(
    const std::map<std::string, LinguisticProfile>& profiles,
    const std::map<std::string, LeakageSummary>& leakage) {
  std::vector<std::string> unmatched;
  for (const auto& [lang, p] : profiles) {
    if (!leakage.count(lang)) unmatched.push_back(StrCat("profile:", lang));
  }
  for (const auto& [lang, l] : leakage) {
    if (!profiles.count(lang)) unmatched.push_back(StrCat("leakage:", lang));
  }
  if (!unmatched.empty()) {
    return absl::InvalidArgumentError(
        StrCat("join key mismatch: ", StrJoin(unmatched, ", ")));
  }
  std::set<int> sizes;
  for (const auto& [lang, l] : leakage) {
    for (const auto& [k, c] : l.extraction_unique) sizes.insert(k);
  }
  Table t;
  t.columns = {"language"};
  for (const char* c : kIndicatorColumns) t.columns.push_back(c);
  for (int k : sizes) t.columns.push_back(StrCat("extract_k", k));
  t.columns.insert(t.columns.end(),
                   {"mem_tail_mass", "mia_accuracy", "mia_overlap"});
  for (const auto& [lang, l] : leakage) {
    std::vector<Cell> row = {lang};
    for (double v : IndicatorValues(Get(profiles, lang))) row.push_back(v);
    for (int k : sizes) {
      auto it = l.extraction_unique.find(k);
      row.push_back(it == l.extraction_unique.end()
                        ? Cell(std::monostate())
                        : Cell(static_cast<double>(it->second)));
    }
    row.push_back(OptionalCell(l.memorization_tail_mass));
    row.push_back(OptionalCell(l.mia_accuracy));
    row.push_back(OptionalCell(l.mia_overlap));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table ProfileTable(const std::map<std::string, LinguisticProfile>& profiles) {
  Table t;
  t.columns = {"language"};
  for (const char* c : kIndicatorColumns) t.columns.push_back(c);
  for (const auto& [lang, p] : profiles) {
    std::vector<Cell> row = {lang};
    for (double v : IndicatorValues(p)) row.push_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Correlation> CorrelationReport(const Table& joined) {
  std::vector<Correlation> out;
  const size_t first_measure = 1 + std::size(kIndicatorColumns);
  for (size_t i = 1; i < first_measure && i < joined.columns.size(); ++i) {
    for (size_t m = first_measure; m < joined.columns.size(); ++m) {
      std::vector<double> x, y;
      for (const auto& row : joined.rows) {
        const double* a = std::get_if<double>(&row[i]);
        const double* b = std::get_if<double>(&row[m]);
        if (a && b) {
          x.push_back(*a);
          y.push_back(*b);
        }
      }
      Correlation c{joined.columns[i], joined.columns[m], std::nullopt,
                    static_cast<int>(x.size())};
      if (x.size() >= 3) {
        auto rho = Spearman(x, y);
        if (rho.ok()) c.rho = *rho;
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

Table CorrelationTable(const std::vector<Correlation>& correlations) {
  Table t;
  t.columns = {"indicator", "measure", "rho", "n"};
  for (const auto& c : correlations) {
    t.rows.push_back({c.indicator, c.measure, OptionalCell(c.rho),
                      static_cast<double>(c.n)});
  }
  return t;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return absl::DataLossError(StrCat("read failed: ", path));
  return buf.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(StrCat("cannot write ", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) return absl::DataLossError(StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::set<OutputFormat>> ParseFormats(const std::string& spec) {
  std::set<OutputFormat> formats;
  for (std::string_view part : StrSplit(spec, ',')) {
    if (part == "json") {
      formats.insert(OutputFormat::kJson);
    } else if (part == "csv") {
      formats.insert(OutputFormat::kCsv);
    } else if (part == "svg") {
      formats.insert(OutputFormat::kSvg);
    } else if (part == "all") {
      formats = {OutputFormat::kJson, OutputFormat::kCsv, OutputFormat::kSvg};
    } else {
      return absl::InvalidArgumentError(
          StrCat("unknown format '", part, "' (json, csv, svg, all)"));
    }
  }
  return formats;
}

absl::StatusOr<std::vector<ManifestEntry>> Emit(
    const std::vector<Artifact>& artifacts, const std::string& out_dir,
    const std::set<OutputFormat>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        StrCat("cannot create ", out_dir, ": ", ec.message()));
  }
  std::map<std::string, std::string> files;
  auto put = [&files](const std::string& file,
                      const std::string& content) -> absl::Status {
    if (!files.emplace(file, content).second) {
      return absl::InvalidArgumentError(StrCat("two artifacts write ", file));
    }
    return absl::OkStatus();
  };
  for (const Artifact& a : artifacts) {
    if (!ValidStem(a.name)) {
      return absl::InvalidArgumentError(
          StrCat("invalid artifact name '", a.name, "'"));
    }
    if (formats.count(OutputFormat::kCsv) && a.table) {
      RETURN_IF_ERROR(put(a.name + ".csv", WriteCsv(*a.table)));
    }
    if (formats.count(OutputFormat::kJson)) {
      if (a.json) {
        RETURN_IF_ERROR(put(a.name + ".json", *a.json));
      } else if (a.table) {
        RETURN_IF_ERROR(put(a.name + ".json", WriteTableJson(*a.table)));
      }
    }
    if (formats.count(OutputFormat::kSvg) && a.svg) {
      RETURN_IF_ERROR(put(a.name + ".svg", *a.svg));
    }
    for (const auto& [file, content] : a.raw_files) {
      if (!ValidStem(file)) {
        return absl::InvalidArgumentError(
            StrCat("invalid file name '", file, "'"));
      }
      RETURN_IF_ERROR(put(file, content));
    }
  }
  std::vector<ManifestEntry> manifest;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [name, content] : files) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    RETURN_IF_ERROR(WriteFile(path, content));
    manifest.push_back({name, Sha256Hex(content), content.size()});
    entries.push_back({{"path", name},
                       {"sha256", manifest.back().sha256},
                       {"bytes", manifest.back().bytes}});
  }
  nlohmann::ordered_json doc = {{"files", entries}};
  RETURN_IF_ERROR(
      WriteFile((std::filesystem::path(out_dir) / "manifest.json").string(),
                doc.dump(2) + "\n"));
  return manifest;
}

}  // namespace lingleak
