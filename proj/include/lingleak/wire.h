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

// Readers, writers and validators for the files exchanged with external
// model back ends.

#ifndef LINGLEAK_WIRE_H_
#define LINGLEAK_WIRE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lingleak/matchindex.h"
#include "lingleak/memorization.h"
#include "lingleak/mia.h"

namespace lingleak {

// {"doc_id", "prompt_size", "prompt", "generation", "model_id"}
std::string WriteGenerationLog(const std::vector<GenerationRecord>& records);
absl::StatusOr<std::vector<GenerationRecord>> ParseGenerationLog(
    std::string_view content);

// losses.csv and mask.csv: header "model_id,<doc ids...>", one row per model
// in the same order in both files.
std::string WriteLossesCsv(const LossMatrix& lm);
std::string WriteMaskCsv(const LossMatrix& lm);
absl::StatusOr<LossMatrix> ParseLossMatrix(std::string_view losses_csv,
                                           std::string_view mask_csv);

// {"doc_id", "score", "n_in", "n_out", "flagged"}
std::string WriteScoresJsonl(const std::vector<CounterfactualScore>& scores);
absl::StatusOr<std::vector<CounterfactualScore>> ParseScoresJsonl(
    std::string_view content);

// {"doc_id", "member", "conf": [...]}
std::string WriteTrajectoriesJsonl(
    const std::vector<ConfidenceTrajectory>& trajectories);
absl::StatusOr<std::vector<ConfidenceTrajectory>> ParseTrajectoriesJsonl(
    std::string_view content);

enum class WireKind { kCorpus, kGenerations, kScores, kTrajectories };
absl::StatusOr<WireKind> ParseWireKind(std::string_view name);

// Validates a single-file wire format; errors name the offending line.
absl::Status ValidateWire(WireKind kind, std::string_view content);

}  // namespace lingleak

#endif  // LINGLEAK_WIRE_H_
