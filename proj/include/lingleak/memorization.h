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

#ifndef LINGLEAK_MEMORIZATION_H_
#define LINGLEAK_MEMORIZATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lingleak/bin_classifier.h"
#include "lingleak/corpus.h"
#include "lingleak/matchindex.h"

namespace lingleak {

using InMask = std::vector<std::vector<uint8_t>>;  // [model][doc]

// Per-model, per-document losses with the membership of each cell.
struct LossMatrix {
  std::vector<std::string> model_ids;
  std::vector<std::string> doc_ids;
  std::vector<std::vector<double>> losses;  // [model][doc]
  InMask in_mask;                           // [model][doc], 1 = trained on

  // Shape, non-negativity and per-document scorability.
  absl::Status Validate() const;
};

// Bernoulli(inclusion_prob) membership per (model, doc). A document drawn
// all-in or all-out is redrawn with the next attempt counter until it has
// at least one model on each side.
absl::StatusOr<InMask> MakeEnsembleMasks(size_t n_docs, int n_models = 10,
                                         double inclusion_prob = 0.5,
                                         uint64_t seed = 0);

struct CounterfactualScore {
  std::string doc_id;
  double score = 0;  // mean out-loss minus mean in-loss
  int n_in = 0;
  int n_out = 0;
  bool flagged = false;
};

absl::StatusOr<std::vector<CounterfactualScore>> CounterfactualScores(
    const LossMatrix& lm, int threads = 1);

// Flags every score at or above the upper-tail threshold: the
// ceil((1 - percentile) * N)-th largest score. Returns the threshold.
absl::StatusOr<double> FlagMemorized(std::vector<CounterfactualScore>& scores,
                                     double percentile = 0.95);

// Fraction of scores strictly above `threshold`.
double TailMass(const std::vector<CounterfactualScore>& scores,
                double threshold);

struct CdfTable {
  std::string statistic;  // sentence_length | word_count | unique_words
  std::string subset;     // all | flagged
  std::vector<CdfPoint> points;
};

struct SurfaceCdfResult {
  std::vector<CdfTable> tables;
  std::vector<std::string> notices;
};

// sentence_length counts characters of the document text; word_count counts
// tokens; unique_words counts case-folded token types.
absl::StatusOr<SurfaceCdfResult> SurfaceCdfs(
    const Corpus& corpus, const std::vector<CounterfactualScore>& scores);

absl::StatusOr<std::vector<int64_t>> AuditLabelDistribution(
    const Corpus& corpus, int n_bins = 9);

struct EnsembleOptions {
  int n_models = 10;
  double inclusion_prob = 0.5;
  uint64_t seed = 0;
  ClassifierOptions classifier;
  int threads = 1;
};

// Trains one classifier per mask row on `corpus` and records every
// document's final-epoch loss.
absl::StatusOr<LossMatrix> RunToyEnsemble(const Corpus& corpus,
                                          const EnsembleOptions& options);

}  // namespace lingleak

#endif  // LINGLEAK_MEMORIZATION_H_
