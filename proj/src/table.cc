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

#include "lingleak/table.h"

#include <cmath>
#include <cstdlib>

#include "json.hpp"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

void AppendQuoted(std::string* out, std::string_view s) {
  out->push_back('"');
  for (char c : s) {
    if (c == '"') out->push_back('"');
    out->push_back(c);
  }
  out->push_back('"');
}

struct RawField {
  std::string text;
  bool quoted = false;
};

// RFC 4180 records; quoted fields may span lines.
absl::StatusOr<std::vector<std::vector<RawField>>> SplitRecords(
    std::string_view text) {
  std::vector<std::vector<RawField>> records;
  std::vector<RawField> record;
  RawField field;
  size_t i = 0;
  int line = 1;
  bool at_field_start = true;
  while (i < text.size()) {
    const char c = text[i];
    if (at_field_start && c == '"') {
      field.quoted = true;
      ++i;
      while (true) {
        if (i >= text.size()) {
          return absl::InvalidArgumentError(
              StrCat("unterminated quoted field at line ", line));
        }
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.text.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        field.text.push_back(text[i++]);
      }
      at_field_start = false;
      if (i < text.size() && text[i] != ',' && text[i] != '\n' &&
          text[i] != '\r') {
        return absl::InvalidArgumentError(
            StrCat("text after closing quote at line ", line));
      }
      continue;
    }
    if (c == ',') {
      record.push_back(std::move(field));
      field = RawField();
      at_field_start = true;
      ++i;
    } else if (c == '\n' || c == '\r') {
      record.push_back(std::move(field));
      field = RawField();
      records.push_back(std::move(record));
      record.clear();
      at_field_start = true;
      i += (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
      ++line;
    } else {
      field.text.push_back(c);
      at_field_start = false;
      ++i;
    }
  }
  if (!at_field_start || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

std::string WriteCsv(const Table& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out.push_back(',');
    AppendQuoted(&out, table.columns[c]);
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      if (const double* d = std::get_if<double>(&row[c])) {
        out += FormatDouble(*d);
      } else if (const std::string* s = std::get_if<std::string>(&row[c])) {
        AppendQuoted(&out, *s);
      }
    }
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<Table> ParseCsv(std::string_view text) {
  auto records = SplitRecords(text);
  if (!records.ok()) return records.status();
  if (records->empty()) return absl::InvalidArgumentError("CSV has no header");
  Table table;
  for (const RawField& f : (*records)[0]) table.columns.push_back(f.text);
  for (size_t r = 1; r < records->size(); ++r) {
    const auto& raw = (*records)[r];
    if (raw.size() != table.columns.size()) {
      return absl::InvalidArgumentError(StrCat("CSV record ", r + 1, " has ",
                                               raw.size(), " fields, expected ",
                                               table.columns.size()));
    }
    std::vector<Cell> row;
    for (const RawField& f : raw) {
      if (f.quoted) {
        row.emplace_back(f.text);
      } else if (f.text.empty()) {
        row.emplace_back(std::monostate());
      } else {
        // Unquoted text that is not a number is a string, as written by
        // minimal-quoting CSV writers.
        char* end = nullptr;
        const double v = std::strtod(f.text.c_str(), &end);
        if (end == f.text.c_str() + f.text.size()) {
          row.emplace_back(v);
        } else {
          row.emplace_back(f.text);
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string WriteTableJson(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (size_t c = 0; c < row.size(); ++c) {
      if (const double* d = std::get_if<double>(&row[c])) {
        obj[table.columns[c]] =
            std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
      } else if (const std::string* s = std::get_if<std::string>(&row[c])) {
        obj[table.columns[c]] = *s;
      } else {
        obj[table.columns[c]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

}  // namespace lingleak
