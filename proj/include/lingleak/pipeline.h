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

// End-to-end run of every attack on the built-in toy models.

#ifndef LINGLEAK_PIPELINE_H_
#define LINGLEAK_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/bin_classifier.h"
#include "lingleak/boosting.h"
#include "lingleak/corpus.h"
#include "lingleak/linguametrics.h"
#include "lingleak/matchindex.h"
#include "lingleak/memorization.h"
#include "lingleak/mia.h"
#include "lingleak/report.h"

namespace lingleak {

struct ToyPipelineOptions {
  uint64_t seed = 0;
  double train_fraction = 0.8;
  int n_bins = 9;
  MetricOptions metrics;
  // Extraction.
  std::vector<int> prompt_sizes = {5, 12, 25, 37};
  int ngram_order = 5;
  double ngram_smoothing = 0.01;
  int max_new_tokens = 64;
  int seed_ngram = 5;
  DetectOptions detect;
  // Counterfactual memorization.
  int n_models = 10;
  double inclusion_prob = 0.5;
  double percentile = 0.95;
  double tail_threshold = 0.02;
  ClassifierOptions classifier;
  // Membership inference.
  BoostingConfig attack;
  int threads = 1;
};

struct ToyPipelineResult {
  std::string language;
  Corpus corpus;  // split and binned
  LinguisticProfile profile;
  std::vector<GenerationRecord> generations;
  LogEvaluation evaluation;
  ExtractionReport extraction;
  LossMatrix losses;
  std::vector<CounterfactualScore> scores;
  double flag_threshold = 0;
  SurfaceCdfResult surface_cdfs;
  std::vector<int64_t> label_histogram;
  std::vector<ConfidenceTrajectory> target;
  std::vector<ConfidenceTrajectory> shadow;
  AttackModel attack;
  MiaResult mia;
  SeparabilityReport separability;
  LeakageSummary summary;
};

// Splits and bins the corpus, profiles it, then runs extraction against an
// n-gram model, an ensemble for counterfactual scores, and a target/shadow
// classifier pair for membership inference. Target and shadow use disjoint
// halves of the corpus.
absl::StatusOr<ToyPipelineResult> RunToyPipeline(
    const Corpus& corpus, const ToyPipelineOptions& options);

struct TrajectorySets {
  std::vector<ConfidenceTrajectory> target;
  std::vector<ConfidenceTrajectory> shadow;
};

// Splits a split-and-binned corpus into two disjoint halves by seeded hash
// and trains one classifier per half on its train documents; each half's
// trajectories cover all of its documents.
absl::StatusOr<TrajectorySets> ToyMembershipTrajectories(
    const Corpus& corpus, const ClassifierOptions& classifier, uint64_t seed);

// Artifacts for one pipeline run, names prefixed by the language tag.
std::vector<Artifact> PipelineArtifacts(const ToyPipelineResult& result);

// Cross-corpus artifacts: profile table, joined table and correlations.
absl::StatusOr<std::vector<Artifact>> CrossCorpusArtifacts(
    const std::vector<ToyPipelineResult>& results);

}  // namespace lingleak

#endif  // LINGLEAK_PIPELINE_H_
