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

#ifndef LINGLEAK_SVG_H_
#define LINGLEAK_SVG_H_

#include <string>
#include <utility>
#include <vector>

namespace lingleak {

struct BarSeries {
  std::string name;
  std::vector<double> values;  // one per category
};

// Grouped bar chart.
std::string RenderBarChart(const std::string& title,
                           const std::vector<std::string>& categories,
                           const std::vector<BarSeries>& series);

struct LineSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Step plot for empirical CDFs (y in [0, 1]).
std::string RenderStepChart(const std::string& title,
                            const std::string& x_label,
                            const std::vector<LineSeries>& series);

}  // namespace lingleak

#endif  // LINGLEAK_SVG_H_
