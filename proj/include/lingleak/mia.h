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

#ifndef LINGLEAK_MIA_H_
#define LINGLEAK_MIA_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/bin_classifier.h"
#include "lingleak/boosting.h"
#include "lingleak/corpus.h"

namespace lingleak {

struct ConfidenceTrajectory {
  std::string doc_id;
  bool member = false;
  std::vector<double> conf;  // top-class probability at epochs 1..E
};

// One trajectory per corpus document; membership follows the classifier's
// in-mask. Epoch 0 (untrained) is never included.
absl::StatusOr<std::vector<ConfidenceTrajectory>> CollectTrajectories(
    const BinClassifier& classifier, const Corpus& corpus);

// Checks that every trajectory has the same positive length and values in
// [0, 1].
absl::Status ValidateTrajectories(
    const std::vector<ConfidenceTrajectory>& trajectories);

struct AttackModel {
  StumpEnsemble ensemble;
  int epochs = 0;

  int Predict(const ConfidenceTrajectory& t) const {
    return ensemble.Predict(t.conf);
  }
};

absl::StatusOr<AttackModel> TrainAttack(
    const std::vector<ConfidenceTrajectory>& shadow,
    const BoostingConfig& config = {});

// Refuses a shadow set that shares document ids with the target set.
absl::Status CheckShadowDisjoint(
    const std::vector<ConfidenceTrajectory>& shadow,
    const std::vector<ConfidenceTrajectory>& target);

struct Histogram {
  std::vector<double> edges;  // n_bins + 1 shared edges
  std::vector<int64_t> counts;
};

struct MiaResult {
  double accuracy = 0;
  std::optional<double> precision_in;   // null when nothing predicted in
  std::optional<double> precision_out;  // null when nothing predicted out
  int64_t true_in = 0, false_in = 0, true_out = 0, false_out = 0;
  int64_t n = 0;
  Histogram final_in;   // final-epoch confidences of true members
  Histogram final_out;  // final-epoch confidences of non-members
  std::string threshold_provenance;
};

// Metrics are cross-checked against a naive recount; a mismatch is an
// internal error.
absl::StatusOr<MiaResult> EvaluateMia(
    const AttackModel& attack, const std::vector<ConfidenceTrajectory>& target);

struct SeparabilityReport {
  int epoch = 0;  // 1-based
  Histogram in;
  Histogram out;
  double overlap = 0;  // sum over bins of min(p_in, p_out)
};

inline constexpr int kSeparabilityBins = 20;

// `epoch` is 1-based; nullopt selects the final epoch.
absl::StatusOr<SeparabilityReport> Separability(
    const std::vector<ConfidenceTrajectory>& trajectories,
    std::optional<int> epoch = std::nullopt, int n_bins = kSeparabilityBins);

Histogram UnitHistogram(const std::vector<double>& values, int n_bins);

}  // namespace lingleak

#endif  // LINGLEAK_MIA_H_
