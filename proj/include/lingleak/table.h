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

#ifndef LINGLEAK_TABLE_H_
#define LINGLEAK_TABLE_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace lingleak {

// Null, number or string. Numbers print in shortest round-trip form and
// strings are always quoted in CSV, so parsing restores the exact cell.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table& other) const = default;
};

std::string WriteCsv(const Table& table);
absl::StatusOr<Table> ParseCsv(std::string_view text);

// Array of row objects; nulls stay null.
std::string WriteTableJson(const Table& table);

}  // namespace lingleak

#endif  // LINGLEAK_TABLE_H_
