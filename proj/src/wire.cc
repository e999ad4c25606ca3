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

#include "lingleak/wire.h"

#include <cmath>
#include <set>

#include "json.hpp"
#include "lingleak/corpus.h"
#include "lingleak/strings.h"
#include "lingleak/table.h"

namespace lingleak {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Calls fn(line_number, object) for every non-blank line.
template <typename Fn>
absl::Status ForEachJsonLine(std::string_view content, std::string_view what,
                             Fn&& fn) {
  int line_no = 0;
  for (std::string_view line : StrSplit(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      return absl::InvalidArgumentError(
          StrCat(what, " line ", line_no, ": not a JSON object"));
    }
    try {
      absl::Status s = fn(line_no, obj);
      if (!s.ok()) {
        return absl::InvalidArgumentError(
            StrCat(what, " line ", line_no, ": ", s.message()));
      }
    } catch (const json::exception& e) {
      return absl::InvalidArgumentError(
          StrCat(what, " line ", line_no, ": ", e.what()));
    }
  }
  return absl::OkStatus();
}

absl::Status Require(const json& obj, const char* key, json::value_t type) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    return absl::InvalidArgumentError(StrCat("missing field \"", key, "\""));
  }
  const bool ok =
      type == json::value_t::number_float
          ? it->is_number()
          : (type == json::value_t::number_integer ? it->is_number_integer()
                                                   : it->type() == type);
  if (!ok) {
    return absl::InvalidArgumentError(
        StrCat("field \"", key, "\" has the wrong type"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Table> ParseMatrixCsv(std::string_view content,
                                     std::string_view what) {
  auto table = ParseCsv(content);
  if (!table.ok()) {
    return absl::InvalidArgumentError(
        StrCat(what, ": ", table.status().message()));
  }
  if (table->columns.empty() || table->columns[0] != "model_id") {
    return absl::InvalidArgumentError(
        StrCat(what, ": first header field must be model_id"));
  }
  for (size_t r = 0; r < table->rows.size(); ++r) {
    const auto& row = table->rows[r];
    if (!std::holds_alternative<std::string>(row[0])) {
      return absl::InvalidArgumentError(
          StrCat(what, " row ", r + 2, ": model_id must be a string"));
    }
    for (size_t c = 1; c < row.size(); ++c) {
      if (!std::holds_alternative<double>(row[c])) {
        return absl::InvalidArgumentError(StrCat(what, " row ", r + 2,
                                                 ", column ", table->columns[c],
                                                 ": expected a number"));
      }
    }
  }
  return table;
}

Table MatrixTable(const LossMatrix& lm, bool mask) {
  Table t;
  t.columns = {"model_id"};
  t.columns.insert(t.columns.end(), lm.doc_ids.begin(), lm.doc_ids.end());
  for (size_t m = 0; m < lm.model_ids.size(); ++m) {
    std::vector<Cell> row = {lm.model_ids[m]};
    for (size_t d = 0; d < lm.doc_ids.size(); ++d) {
      row.push_back(mask ? static_cast<double>(lm.in_mask[m][d])
                         : lm.losses[m][d]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string WriteGenerationLog(const std::vector<GenerationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j = {{"doc_id", r.doc_id},
                      {"prompt_size", r.prompt_size},
                      {"prompt", r.prompt},
                      {"generation", r.generation},
                      {"model_id", r.model_id}};
    StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<GenerationRecord>> ParseGenerationLog(
    std::string_view content) {
  std::vector<GenerationRecord> out;
  absl::Status s = ForEachJsonLine(
      content, "generation log", [&](int, const json& j) -> absl::Status {
        for (const char* key : {"doc_id", "prompt", "generation", "model_id"}) {
          if (absl::Status r = Require(j, key, json::value_t::string);
              !r.ok()) {
            return r;
          }
        }
        if (absl::Status r =
                Require(j, "prompt_size", json::value_t::number_integer);
            !r.ok()) {
          return r;
        }
        GenerationRecord rec;
        rec.doc_id = j["doc_id"].get<std::string>();
        rec.prompt_size = j["prompt_size"].get<int>();
        if (rec.prompt_size < 1) {
          return absl::InvalidArgumentError("prompt_size must be >= 1");
        }
        rec.prompt = j["prompt"].get<std::string>();
        rec.generation = j["generation"].get<std::string>();
        rec.model_id = j["model_id"].get<std::string>();
        out.push_back(std::move(rec));
        return absl::OkStatus();
      });
  if (!s.ok()) return s;
  return out;
}

std::string WriteLossesCsv(const LossMatrix& lm) {
  return WriteCsv(MatrixTable(lm, false));
}

std::string WriteMaskCsv(const LossMatrix& lm) {
  return WriteCsv(MatrixTable(lm, true));
}

absl::StatusOr<LossMatrix> ParseLossMatrix(std::string_view losses_csv,
                                           std::string_view mask_csv) {
  auto losses = ParseMatrixCsv(losses_csv, "losses.csv");
  if (!losses.ok()) return losses.status();
  auto mask = ParseMatrixCsv(mask_csv, "mask.csv");
  if (!mask.ok()) return mask.status();
  if (losses->columns != mask->columns) {
    return absl::InvalidArgumentError("losses.csv and mask.csv headers differ");
  }
  if (losses->rows.size() != mask->rows.size()) {
    return absl::InvalidArgumentError(
        "losses.csv and mask.csv have different row counts");
  }
  LossMatrix lm;
  lm.doc_ids.assign(losses->columns.begin() + 1, losses->columns.end());
  std::set<std::string> unique(lm.doc_ids.begin(), lm.doc_ids.end());
  if (unique.size() != lm.doc_ids.size()) {
    return absl::InvalidArgumentError("duplicate doc id in header");
  }
  for (size_t r = 0; r < losses->rows.size(); ++r) {
    const auto& lrow = losses->rows[r];
    const auto& mrow = mask->rows[r];
    const std::string& id = std::get<std::string>(lrow[0]);
    if (id != std::get<std::string>(mrow[0])) {
      return absl::InvalidArgumentError(
          StrCat("row ", r + 2, ": model ids differ between files"));
    }
    lm.model_ids.push_back(id);
    std::vector<double> l;
    std::vector<uint8_t> m;
    for (size_t c = 1; c < lrow.size(); ++c) {
      l.push_back(std::get<double>(lrow[c]));
      const double flag = std::get<double>(mrow[c]);
      if (flag != 0 && flag != 1) {
        return absl::InvalidArgumentError(
            StrCat("mask.csv row ", r + 2, ": flags must be 0 or 1"));
      }
      m.push_back(flag == 1);
    }
    lm.losses.push_back(std::move(l));
    lm.in_mask.push_back(std::move(m));
  }
  if (absl::Status s = lm.Validate(); !s.ok()) return s;
  return lm;
}

std::string WriteScoresJsonl(const std::vector<CounterfactualScore>& scores) {
  std::string out;
  for (const auto& s : scores) {
    ordered_json j = {{"doc_id", s.doc_id},
                      {"score", s.score},
                      {"n_in", s.n_in},
                      {"n_out", s.n_out},
                      {"flagged", s.flagged}};
    StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<CounterfactualScore>> ParseScoresJsonl(
    std::string_view content) {
  std::vector<CounterfactualScore> out;
  absl::Status s = ForEachJsonLine(
      content, "scores", [&](int, const json& j) -> absl::Status {
        absl::Status r = Require(j, "doc_id", json::value_t::string);
        if (r.ok()) r = Require(j, "score", json::value_t::number_float);
        if (r.ok()) r = Require(j, "n_in", json::value_t::number_integer);
        if (r.ok()) r = Require(j, "n_out", json::value_t::number_integer);
        if (r.ok()) r = Require(j, "flagged", json::value_t::boolean);
        if (!r.ok()) return r;
        CounterfactualScore cs;
        cs.doc_id = j["doc_id"].get<std::string>();
        cs.score = j["score"].get<double>();
        cs.n_in = j["n_in"].get<int>();
        cs.n_out = j["n_out"].get<int>();
        cs.flagged = j["flagged"].get<bool>();
        if (cs.n_in < 1 || cs.n_out < 1) {
          return absl::InvalidArgumentError("n_in and n_out must be >= 1");
        }
        out.push_back(std::move(cs));
        return absl::OkStatus();
      });
  if (!s.ok()) return s;
  return out;
}

std::string WriteTrajectoriesJsonl(
    const std::vector<ConfidenceTrajectory>& trajectories) {
  std::string out;
  for (const auto& t : trajectories) {
    ordered_json j = {
        {"doc_id", t.doc_id}, {"member", t.member}, {"conf", t.conf}};
    StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<ConfidenceTrajectory>> ParseTrajectoriesJsonl(
    std::string_view content) {
  std::vector<ConfidenceTrajectory> out;
  absl::Status s = ForEachJsonLine(
      content, "trajectories", [&](int, const json& j) -> absl::Status {
        absl::Status r = Require(j, "doc_id", json::value_t::string);
        if (r.ok()) r = Require(j, "member", json::value_t::boolean);
        if (r.ok()) r = Require(j, "conf", json::value_t::array);
        if (!r.ok()) return r;
        ConfidenceTrajectory t;
        t.doc_id = j["doc_id"].get<std::string>();
        t.member = j["member"].get<bool>();
        for (const auto& v : j["conf"]) {
          if (!v.is_number()) {
            return absl::InvalidArgumentError("conf values must be numbers");
          }
          t.conf.push_back(v.get<double>());
        }
        if (!out.empty() && t.conf.size() != out.front().conf.size()) {
          return absl::InvalidArgumentError(StrCat("conf has ", t.conf.size(),
                                                   " epochs, expected ",
                                                   out.front().conf.size()));
        }
        out.push_back(std::move(t));
        return absl::OkStatus();
      });
  if (!s.ok()) return s;
  if (absl::Status v = ValidateTrajectories(out); !v.ok()) return v;
  return out;
}

absl::StatusOr<WireKind> ParseWireKind(std::string_view name) {
  if (name == "corpus") return WireKind::kCorpus;
  if (name == "generations") return WireKind::kGenerations;
  if (name == "scores") return WireKind::kScores;
  if (name == "trajectories") return WireKind::kTrajectories;
  return absl::InvalidArgumentError(
      StrCat("unknown wire kind '", name,
             "' (corpus, generations, scores, trajectories)"));
}

absl::Status ValidateWire(WireKind kind, std::string_view content) {
  switch (kind) {
    case WireKind::kCorpus: {
      LoadOptions options;
      return ParseCorpus(content, options).status();
    }
    case WireKind::kGenerations:
      return ParseGenerationLog(content).status();
    case WireKind::kScores:
      return ParseScoresJsonl(content).status();
    case WireKind::kTrajectories:
      return ParseTrajectoriesJsonl(content).status();
  }
  return absl::InternalError("unreachable");
}

}  // namespace lingleak
