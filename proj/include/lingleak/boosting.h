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

#ifndef LINGLEAK_BOOSTING_H_
#define LINGLEAK_BOOSTING_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace lingleak {

struct BoostingConfig {
  int n_rounds = 100;
  int max_depth = 1;  // only stumps are supported
  double learning_rate = 0.1;
  double l2 = 1.0;                // leaf-weight regularizer
  double min_child_weight = 1.0;  // minimum hessian mass per leaf
};

struct Stump {
  int feature = 0;
  double threshold = 0;  // x[feature] < threshold goes left
  double left = 0;
  double right = 0;
};

// Gradient-boosted decision stumps under logistic loss. Split search is
// exact over midpoints of distinct feature values; ties keep the lowest
// feature and then the lowest threshold.
class StumpEnsemble {
 public:
  static absl::StatusOr<StumpEnsemble> Fit(
      const std::vector<std::vector<double>>& x, const std::vector<int>& y,
      const BoostingConfig& config);

  double Margin(const std::vector<double>& x) const;
  double Probability(const std::vector<double>& x) const;
  int Predict(const std::vector<double>& x) const;

  int n_features() const { return n_features_; }
  double base_margin() const { return base_margin_; }
  const std::vector<Stump>& stumps() const { return stumps_; }
  const BoostingConfig& config() const { return config_; }

  std::string ToJson() const;
  static absl::StatusOr<StumpEnsemble> FromJson(const std::string& json);
  // SHA-256 of ToJson().
  std::string Digest() const;

 private:
  BoostingConfig config_;
  int n_features_ = 0;
  double base_margin_ = 0;
  std::vector<Stump> stumps_;
};

}  // namespace lingleak

#endif  // LINGLEAK_BOOSTING_H_
