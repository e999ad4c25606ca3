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

#include "lingleak/memorization.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "lingleak/parallel.h"
#include "lingleak/rng.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"
#include "lingleak/unicode.h"

namespace lingleak {
namespace {

constexpr uint64_t kMaskStream = 21;
constexpr int kMaxMaskAttempts = 10000;

}  // namespace

absl::Status LossMatrix::Validate() const {
  const size_t m = model_ids.size();
  const size_t n = doc_ids.size();
  if (m == 0 || n == 0) {
    return absl::InvalidArgumentError("loss matrix is empty");
  }
  if (losses.size() != m || in_mask.size() != m) {
    return absl::InvalidArgumentError(
        "loss and mask rows must match the model count");
  }
  for (size_t r = 0; r < m; ++r) {
    if (losses[r].size() != n || in_mask[r].size() != n) {
      return absl::InvalidArgumentError(
          StrCat("row for model ", model_ids[r], " has the wrong width"));
    }
    for (size_t d = 0; d < n; ++d) {
      if (!(losses[r][d] >= 0) || !std::isfinite(losses[r][d])) {
        return absl::InvalidArgumentError(
            StrCat("loss for model ", model_ids[r], ", doc ", doc_ids[d],
                   " is not a finite non-negative number"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<InMask> MakeEnsembleMasks(size_t n_docs, int n_models,
                                         double inclusion_prob, uint64_t seed) {
  if (n_models < 2) return absl::InvalidArgumentError("n_models must be >= 2");
  if (!(inclusion_prob > 0 && inclusion_prob < 1)) {
    return absl::InvalidArgumentError("inclusion_prob must lie in (0, 1)");
  }
  InMask mask(n_models, std::vector<uint8_t>(n_docs, 0));
  for (size_t d = 0; d < n_docs; ++d) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxMaskAttempts) {
        return absl::InternalError(
            StrCat("could not draw a scorable mask for doc ", d));
      }
      const uint64_t base = CounterHash(seed, kMaskStream + attempt, d);
      int in = 0;
      for (int m = 0; m < n_models; ++m) {
        mask[m][d] = UnitDouble(CounterHash(base, 0, m)) < inclusion_prob;
        in += mask[m][d];
      }
      if (in > 0 && in < n_models) break;
    }
  }
  return mask;
}

absl::StatusOr<std::vector<CounterfactualScore>> CounterfactualScores(
    const LossMatrix& lm, int threads) {
  RETURN_IF_ERROR(lm.Validate());
  const size_t n = lm.doc_ids.size();
  std::vector<CounterfactualScore> out(n);
  ParallelFor(n, threads, [&](size_t d) {
    // Sums run in model-id order so row permutations cannot change bits.
    std::vector<size_t> rows(lm.model_ids.size());
    for (size_t r = 0; r < rows.size(); ++r) rows[r] = r;
    std::sort(rows.begin(), rows.end(), [&](size_t a, size_t b) {
      return lm.model_ids[a] < lm.model_ids[b];
    });
    double in_sum = 0, out_sum = 0;
    CounterfactualScore& s = out[d];
    s.doc_id = lm.doc_ids[d];
    for (size_t r : rows) {
      if (lm.in_mask[r][d]) {
        in_sum += lm.losses[r][d];
        ++s.n_in;
      } else {
        out_sum += lm.losses[r][d];
        ++s.n_out;
      }
    }
    if (s.n_in > 0 && s.n_out > 0)
      s.score = out_sum / s.n_out - in_sum / s.n_in;
  });
  for (const CounterfactualScore& s : out) {
    if (s.n_in == 0 || s.n_out == 0) {
      return absl::InvalidArgumentError(
          StrCat("document ", s.doc_id, " has ", s.n_in, " in-models and ",
                 s.n_out, " out-models; both must be >= 1"));
    }
  }
  return out;
}

absl::StatusOr<double> FlagMemorized(std::vector<CounterfactualScore>& scores,
                                     double percentile) {
  if (scores.size() < 20) {
    return absl::InvalidArgumentError(StrCat(
        "need at least 20 scores to flag a percentile, got ", scores.size()));
  }
  if (!(percentile > 0 && percentile < 1)) {
    return absl::InvalidArgumentError("percentile must lie in (0, 1)");
  }
  std::vector<double> sorted;
  for (const auto& s : scores) sorted.push_back(s.score);
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  // The epsilon keeps (1 - 0.95) * 100 from rounding up to 6.
  size_t tail = static_cast<size_t>(
      std::ceil((1.0 - percentile) * static_cast<double>(n) - 1e-9));
  tail = std::clamp<size_t>(tail, 1, n);
  const double threshold = sorted[n - tail];
  for (auto& s : scores) s.flagged = s.score >= threshold;
  return threshold;
}

double TailMass(const std::vector<CounterfactualScore>& scores,
                double threshold) {
  if (scores.empty()) return 0.0;
  size_t above = 0;
  for (const auto& s : scores) above += s.score > threshold;
  return static_cast<double>(above) / static_cast<double>(scores.size());
}

absl::StatusOr<SurfaceCdfResult> SurfaceCdfs(
    const Corpus& corpus, const std::vector<CounterfactualScore>& scores) {
  std::unordered_map<std::string, bool> flagged;
  for (const auto& s : scores) flagged[s.doc_id] = s.flagged;
  std::vector<double> stats[3][2];
  for (const Document& doc : corpus.docs) {
    auto it = flagged.find(doc.id);
    if (it == flagged.end()) {
      return absl::InvalidArgumentError(
          StrCat("no score for document ", doc.id));
    }
    std::set<std::string> types;
    for (const Token& t : doc.tokens) types.insert(CaseFold(t.surface));
    const double values[3] = {static_cast<double>(CodePointCount(doc.text)),
                              static_cast<double>(doc.tokens.size()),
                              static_cast<double>(types.size())};
    for (int s = 0; s < 3; ++s) {
      stats[s][0].push_back(values[s]);
      if (it->second) stats[s][1].push_back(values[s]);
    }
  }
  static constexpr const char* kStats[3] = {"sentence_length", "word_count",
                                            "unique_words"};
  SurfaceCdfResult result;
  for (int s = 0; s < 3; ++s) {
    result.tables.push_back({kStats[s], "all", EmpiricalCdf(stats[s][0])});
  }
  if (stats[0][1].empty()) {
    result.notices.push_back("no flagged documents; flagged CDFs omitted");
  } else {
    for (int s = 0; s < 3; ++s) {
      result.tables.push_back(
          {kStats[s], "flagged", EmpiricalCdf(stats[s][1])});
    }
  }
  return result;
}

absl::StatusOr<std::vector<int64_t>> AuditLabelDistribution(
    const Corpus& corpus, int n_bins) {
  std::vector<int64_t> hist(n_bins, 0);
  for (const Document& doc : corpus.docs) {
    if (!doc.bin_label) {
      return absl::FailedPreconditionError(
          StrCat("document ", doc.id, " has no bin label"));
    }
    if (*doc.bin_label < 0 || *doc.bin_label >= n_bins) {
      return absl::InvalidArgumentError(StrCat(
          "document ", doc.id, " has out-of-range bin label ", *doc.bin_label));
    }
    ++hist[*doc.bin_label];
  }
  return hist;
}

absl::StatusOr<LossMatrix> RunToyEnsemble(const Corpus& corpus,
                                          const EnsembleOptions& options) {
  ASSIGN_OR_RETURN(InMask mask,
                   MakeEnsembleMasks(corpus.docs.size(), options.n_models,
                                     options.inclusion_prob, options.seed));
  LossMatrix lm;
  for (const Document& doc : corpus.docs) lm.doc_ids.push_back(doc.id);
  lm.in_mask = mask;
  lm.losses.assign(options.n_models, {});
  std::vector<absl::Status> status(options.n_models);
  ParallelFor(options.n_models, options.threads, [&](size_t m) {
    std::set<std::string> in;
    for (size_t d = 0; d < corpus.docs.size(); ++d) {
      if (mask[m][d]) in.insert(corpus.docs[d].id);
    }
    ClassifierOptions copts = options.classifier;
    copts.seed = CounterHash(options.seed, kMaskStream - 1, m);
    auto model = BinClassifier::Train(corpus, in, copts);
    if (!model.ok()) {
      status[m] = model.status();
      return;
    }
    lm.losses[m].resize(corpus.docs.size());
    for (size_t d = 0; d < corpus.docs.size(); ++d) {
      lm.losses[m][d] = model->SnapshotLoss(model->epochs(), d);
    }
  });
  for (const absl::Status& s : status) RETURN_IF_ERROR(s);
  for (int m = 0; m < options.n_models; ++m) {
    lm.model_ids.push_back(fmt::format("model-{:02d}", m));
  }
  RETURN_IF_ERROR(lm.Validate());
  return lm;
}

}  // namespace lingleak
