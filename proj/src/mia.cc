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

#include "lingleak/mia.h"

#include <algorithm>
#include <set>

#include "lingleak/strings.h"

namespace lingleak {

absl::StatusOr<std::vector<ConfidenceTrajectory>> CollectTrajectories(
    const BinClassifier& classifier, const Corpus& corpus) {
  std::vector<ConfidenceTrajectory> out;
  for (const Document& doc : corpus.docs) {
    const std::optional<size_t> index = classifier.DocIndex(doc.id);
    if (!index) {
      return absl::FailedPreconditionError(
          StrCat("classifier has no snapshots for document ", doc.id));
    }
    ConfidenceTrajectory t;
    t.doc_id = doc.id;
    t.member = classifier.in_mask().count(doc.id) > 0;
    for (int e = 1; e <= classifier.epochs(); ++e) {
      const auto& p = classifier.SnapshotProbabilities(e, *index);
      t.conf.push_back(*std::max_element(p.begin(), p.end()));
    }
    out.push_back(std::move(t));
  }
  return out;
}

absl::Status ValidateTrajectories(
    const std::vector<ConfidenceTrajectory>& trajectories) {
  if (trajectories.empty()) {
    return absl::InvalidArgumentError("no trajectories");
  }
  const size_t e = trajectories[0].conf.size();
  if (e == 0) return absl::InvalidArgumentError("trajectories have 0 epochs");
  std::set<std::string> ids;
  for (const auto& t : trajectories) {
    if (t.conf.size() != e) {
      return absl::InvalidArgumentError(StrCat("trajectory ", t.doc_id, " has ",
                                               t.conf.size(),
                                               " epochs, expected ", e));
    }
    for (double c : t.conf) {
      if (!(c >= 0 && c <= 1)) {
        return absl::InvalidArgumentError(
            StrCat("trajectory ", t.doc_id, " has confidence outside [0,1]"));
      }
    }
    if (!ids.insert(t.doc_id).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate trajectory id ", t.doc_id));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<AttackModel> TrainAttack(
    const std::vector<ConfidenceTrajectory>& shadow,
    const BoostingConfig& config) {
  if (absl::Status s = ValidateTrajectories(shadow); !s.ok()) return s;
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (const auto& t : shadow) {
    x.push_back(t.conf);
    y.push_back(t.member ? 1 : 0);
  }
  auto fit = StumpEnsemble::Fit(x, y, config);
  if (!fit.ok()) return fit.status();
  AttackModel attack{std::move(*fit), static_cast<int>(shadow[0].conf.size())};
  return attack;
}

absl::Status CheckShadowDisjoint(
    const std::vector<ConfidenceTrajectory>& shadow,
    const std::vector<ConfidenceTrajectory>& target) {
  std::set<std::string> ids;
  for (const auto& t : target) ids.insert(t.doc_id);
  for (const auto& t : shadow) {
    if (ids.count(t.doc_id)) {
      return absl::InvalidArgumentError(
          StrCat("shadow and target sets share document ", t.doc_id,
                 "; supply a disjoint shadow split"));
    }
  }
  return absl::OkStatus();
}

Histogram UnitHistogram(const std::vector<double>& values, int n_bins) {
  Histogram h;
  for (int b = 0; b <= n_bins; ++b) {
    h.edges.push_back(static_cast<double>(b) / n_bins);
  }
  h.counts.assign(n_bins, 0);
  for (double v : values) {
    int b = static_cast<int>(v * n_bins);
    ++h.counts[std::clamp(b, 0, n_bins - 1)];
  }
  return h;
}

absl::StatusOr<MiaResult> EvaluateMia(
    const AttackModel& attack,
    const std::vector<ConfidenceTrajectory>& target) {
  if (absl::Status s = ValidateTrajectories(target); !s.ok()) return s;
  if (static_cast<int>(target[0].conf.size()) != attack.epochs) {
    return absl::InvalidArgumentError(
        StrCat("target trajectories have ", target[0].conf.size(),
               " epochs but the attack was trained on ", attack.epochs));
  }
  MiaResult r;
  std::vector<int> predicted;
  std::vector<double> final_in, final_out;
  for (const auto& t : target) {
    const int p = attack.Predict(t);
    predicted.push_back(p);
    if (t.member) {
      (p ? r.true_in : r.false_out)++;
      final_in.push_back(t.conf.back());
    } else {
      (p ? r.false_in : r.true_out)++;
      final_out.push_back(t.conf.back());
    }
  }
  if (final_in.empty() || final_out.empty()) {
    return absl::InvalidArgumentError(
        "target set must contain both members and non-members");
  }
  r.n = static_cast<int64_t>(target.size());
  r.accuracy = static_cast<double>(r.true_in + r.true_out) / r.n;
  if (r.true_in + r.false_in > 0) {
    r.precision_in = static_cast<double>(r.true_in) /
                     static_cast<double>(r.true_in + r.false_in);
  }
  if (r.true_out + r.false_out > 0) {
    r.precision_out = static_cast<double>(r.true_out) /
                      static_cast<double>(r.true_out + r.false_out);
  }

  // Naive recount from the raw prediction list.
  int64_t correct = 0, pred_in = 0, pred_in_ok = 0, pred_out = 0,
          pred_out_ok = 0;
  for (size_t i = 0; i < target.size(); ++i) {
    const bool truth = target[i].member;
    const bool guess = predicted[i] == 1;
    correct += truth == guess;
    if (guess) {
      ++pred_in;
      pred_in_ok += truth;
    } else {
      ++pred_out;
      pred_out_ok += !truth;
    }
  }
  const bool consistent =
      correct == r.true_in + r.true_out && pred_in == r.true_in + r.false_in &&
      pred_in_ok == r.true_in && pred_out == r.true_out + r.false_out &&
      pred_out_ok == r.true_out &&
      r.accuracy == static_cast<double>(correct) / static_cast<double>(r.n);
  if (!consistent) {
    return absl::InternalError("confusion matrix failed the naive recount");
  }

  r.final_in = UnitHistogram(final_in, kSeparabilityBins);
  r.final_out = UnitHistogram(final_out, kSeparabilityBins);
  r.threshold_provenance =
      StrCat("stumps:", attack.ensemble.stumps().size(),
             ";margin>=0;digest=", attack.ensemble.Digest());
  return r;
}

absl::StatusOr<SeparabilityReport> Separability(
    const std::vector<ConfidenceTrajectory>& trajectories,
    std::optional<int> epoch, int n_bins) {
  if (absl::Status s = ValidateTrajectories(trajectories); !s.ok()) return s;
  if (n_bins < 1) return absl::InvalidArgumentError("n_bins must be >= 1");
  const int e = epoch.value_or(static_cast<int>(trajectories[0].conf.size()));
  if (e < 1 || e > static_cast<int>(trajectories[0].conf.size())) {
    return absl::OutOfRangeError(StrCat("epoch ", e, " not covered"));
  }
  std::vector<double> in, out;
  for (const auto& t : trajectories) {
    (t.member ? in : out).push_back(t.conf[e - 1]);
  }
  SeparabilityReport rep;
  rep.epoch = e;
  rep.in = UnitHistogram(in, n_bins);
  rep.out = UnitHistogram(out, n_bins);
  if (!in.empty() && !out.empty()) {
    for (int b = 0; b < n_bins; ++b) {
      rep.overlap += std::min(static_cast<double>(rep.in.counts[b]) /
                                  static_cast<double>(in.size()),
                              static_cast<double>(rep.out.counts[b]) /
                                  static_cast<double>(out.size()));
    }
    rep.overlap = std::min(rep.overlap, 1.0);
  }
  return rep;
}

}  // namespace lingleak
