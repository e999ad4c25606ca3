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

#include "lingleak/boosting.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "lingleak/digest.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

absl::StatusOr<StumpEnsemble> StumpEnsemble::Fit(
    const std::vector<std::vector<double>>& x, const std::vector<int>& y,
    const BoostingConfig& config) {
  if (config.max_depth != 1) {
    return absl::InvalidArgumentError("only max_depth = 1 is supported");
  }
  if (config.n_rounds < 0 || !(config.learning_rate > 0)) {
    return absl::InvalidArgumentError("invalid n_rounds or learning_rate");
  }
  if (x.empty() || x.size() != y.size()) {
    return absl::InvalidArgumentError("features and labels must align");
  }
  const size_t n = x.size();
  const size_t e = x[0].size();
  size_t positives = 0;
  for (size_t i = 0; i < n; ++i) {
    if (x[i].size() != e) {
      return absl::InvalidArgumentError("ragged feature rows");
    }
    if (y[i] != 0 && y[i] != 1) {
      return absl::InvalidArgumentError("labels must be 0 or 1");
    }
    positives += y[i];
  }
  if (positives == 0 || positives == n) {
    return absl::InvalidArgumentError("training set has a single class");
  }

  StumpEnsemble model;
  model.config_ = config;
  model.n_features_ = static_cast<int>(e);
  const double rate = static_cast<double>(positives) / static_cast<double>(n);
  model.base_margin_ = std::log(rate / (1 - rate));

  // Presorted order per feature; stable so equal values keep row order.
  std::vector<std::vector<size_t>> order(e);
  for (size_t f = 0; f < e; ++f) {
    order[f].resize(n);
    std::iota(order[f].begin(), order[f].end(), 0);
    std::stable_sort(order[f].begin(), order[f].end(),
                     [&](size_t a, size_t b) { return x[a][f] < x[b][f]; });
  }

  std::vector<double> margin(n, model.base_margin_);
  std::vector<double> g(n), h(n);
  const double lambda = config.l2;
  for (int round = 0; round < config.n_rounds; ++round) {
    double g_total = 0, h_total = 0;
    for (size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(margin[i]);
      g[i] = p - y[i];
      h[i] = std::max(p * (1 - p), 1e-16);
      g_total += g[i];
      h_total += h[i];
    }
    const double parent = g_total * g_total / (h_total + lambda);
    double best_gain = 0;
    bool found = false;
    Stump best;
    double best_gl = 0, best_hl = 0;
    for (size_t f = 0; f < e; ++f) {
      double gl = 0, hl = 0;
      for (size_t k = 0; k + 1 < n; ++k) {
        const size_t i = order[f][k];
        gl += g[i];
        hl += h[i];
        const double here = x[i][f];
        const double next = x[order[f][k + 1]][f];
        if (here == next) continue;
        const double gr = g_total - gl;
        const double hr = h_total - hl;
        if (hl < config.min_child_weight || hr < config.min_child_weight) {
          continue;
        }
        const double gain =
            gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent;
        if (gain > best_gain) {
          best_gain = gain;
          found = true;
          best.feature = static_cast<int>(f);
          best.threshold = here + (next - here) / 2;
          best_gl = gl;
          best_hl = hl;
        }
      }
    }
    if (!found) break;
    best.left = -config.learning_rate * best_gl / (best_hl + lambda);
    best.right = -config.learning_rate * (g_total - best_gl) /
                 (h_total - best_hl + lambda);
    for (size_t i = 0; i < n; ++i) {
      margin[i] += x[i][best.feature] < best.threshold ? best.left : best.right;
    }
    model.stumps_.push_back(best);
  }
  return model;
}

double StumpEnsemble::Margin(const std::vector<double>& x) const {
  double m = base_margin_;
  for (const Stump& s : stumps_) {
    m += x[s.feature] < s.threshold ? s.left : s.right;
  }
  return m;
}

double StumpEnsemble::Probability(const std::vector<double>& x) const {
  return Sigmoid(Margin(x));
}

int StumpEnsemble::Predict(const std::vector<double>& x) const {
  return Margin(x) >= 0 ? 1 : 0;
}

std::string StumpEnsemble::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "lingleak-stumps-v1";
  j["n_features"] = n_features_;
  j["base_margin"] = base_margin_;
  j["config"] = {{"n_rounds", config_.n_rounds},
                 {"max_depth", config_.max_depth},
                 {"learning_rate", config_.learning_rate},
                 {"l2", config_.l2},
                 {"min_child_weight", config_.min_child_weight}};
  nlohmann::ordered_json stumps = nlohmann::ordered_json::array();
  for (const Stump& s : stumps_) {
    stumps.push_back({{"feature", s.feature},
                      {"threshold", s.threshold},
                      {"left", s.left},
                      {"right", s.right}});
  }
  j["stumps"] = std::move(stumps);
  return j.dump(2);
}

absl::StatusOr<StumpEnsemble> StumpEnsemble::FromJson(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("attack model is not valid JSON");
  }
  try {
    if (j.at("format").get<std::string>() != "lingleak-stumps-v1") {
      return absl::InvalidArgumentError("unknown attack model format");
    }
    StumpEnsemble model;
    model.n_features_ = j.at("n_features").get<int>();
    model.base_margin_ = j.at("base_margin").get<double>();
    const auto& c = j.at("config");
    model.config_.n_rounds = c.at("n_rounds").get<int>();
    model.config_.max_depth = c.at("max_depth").get<int>();
    model.config_.learning_rate = c.at("learning_rate").get<double>();
    model.config_.l2 = c.at("l2").get<double>();
    model.config_.min_child_weight = c.at("min_child_weight").get<double>();
    for (const auto& s : j.at("stumps")) {
      Stump stump{s.at("feature").get<int>(), s.at("threshold").get<double>(),
                  s.at("left").get<double>(), s.at("right").get<double>()};
      if (stump.feature < 0 || stump.feature >= model.n_features_) {
        return absl::InvalidArgumentError("stump feature out of range");
      }
      model.stumps_.push_back(stump);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        StrCat("malformed attack model: ", e.what()));
  }
}

std::string StumpEnsemble::Digest() const { return Sha256Hex(ToJson()); }

}  // namespace lingleak
