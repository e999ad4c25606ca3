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

#include "lingleak/svg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lingleak/strings.h"

namespace lingleak {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759",
                                    "#76b7b2", "#59a14f", "#edc948"};

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string Num(double v) { return fmt::format("{:.2f}", v); }

std::string Header(const std::string& title) {
  return StrCat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"", Num(kWidth),
      "\" height=\"", Num(kHeight), "\" viewBox=\"0 0 ", Num(kWidth), " ",
      Num(kHeight), "\" font-family=\"sans-serif\" font-size=\"11\">\n",
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n", "<text x=\"",
      Num(kWidth / 2), "\" y=\"20\" text-anchor=\"middle\" ",
      "font-size=\"14\">", Escape(title), "</text>\n");
}

std::string Axes(double y_max) {
  const double x0 = kLeft, y0 = kHeight - kBottom;
  std::string out = StrCat("<line x1=\"", Num(x0), "\" y1=\"", Num(y0),
                           "\" x2=\"", Num(kWidth - kRight), "\" y2=\"",
                           Num(y0), "\" stroke=\"black\"/>\n", "<line x1=\"",
                           Num(x0), "\" y1=\"", Num(kTop), "\" x2=\"", Num(x0),
                           "\" y2=\"", Num(y0), "\" stroke=\"black\"/>\n");
  for (int t = 0; t <= 4; ++t) {
    const double v = y_max * t / 4;
    const double y = y0 - (y0 - kTop) * t / 4;
    StrAppend(&out, "<text x=\"", Num(x0 - 6), "\" y=\"", Num(y + 4),
              "\" text-anchor=\"end\">", FormatDouble(v), "</text>\n");
  }
  return out;
}

std::string Legend(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 14 * static_cast<double>(i);
    StrAppend(&out, "<rect x=\"", Num(kWidth - kRight - 120), "\" y=\"",
              Num(y - 8), "\" width=\"10\" height=\"10\" fill=\"",
              kPalette[i % 6], "\"/>\n", "<text x=\"",
              Num(kWidth - kRight - 105), "\" y=\"", Num(y + 1), "\">",
              Escape(names[i]), "</text>\n");
  }
  return out;
}

}  // namespace

std::string RenderBarChart(const std::string& title,
                           const std::vector<std::string>& categories,
                           const std::vector<BarSeries>& series) {
  double y_max = 0;
  for (const auto& s : series) {
    for (double v : s.values) y_max = std::max(y_max, v);
  }
  if (y_max <= 0) y_max = 1;
  std::string out = Header(title) + Axes(y_max);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double group_w =
      plot_w / static_cast<double>(std::max<size_t>(categories.size(), 1));
  const double bar_w =
      group_w * 0.8 / static_cast<double>(std::max<size_t>(series.size(), 1));
  for (size_t c = 0; c < categories.size(); ++c) {
    const double gx = kLeft + group_w * static_cast<double>(c);
    for (size_t s = 0; s < series.size(); ++s) {
      const double v = c < series[s].values.size() ? series[s].values[c] : 0;
      const double h = plot_h * std::max(v, 0.0) / y_max;
      StrAppend(&out, "<rect x=\"",
                Num(gx + group_w * 0.1 + bar_w * static_cast<double>(s)),
                "\" y=\"", Num(kTop + plot_h - h), "\" width=\"", Num(bar_w),
                "\" height=\"", Num(h), "\" fill=\"", kPalette[s % 6],
                "\"/>\n");
    }
    StrAppend(&out, "<text x=\"", Num(gx + group_w / 2), "\" y=\"",
              Num(kHeight - kBottom + 16), "\" text-anchor=\"middle\">",
              Escape(categories[c]), "</text>\n");
  }
  std::vector<std::string> names;
  for (const auto& s : series) names.push_back(s.name);
  out += Legend(names) + "</svg>\n";
  return out;
}

std::string RenderStepChart(const std::string& title,
                            const std::string& x_label,
                            const std::vector<LineSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
  }
  if (!(x_min < x_max)) {
    x_min = std::isfinite(x_min) ? x_min - 1 : 0;
    x_max = x_min + 2;
  }
  std::string out = Header(title) + Axes(1.0);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) {
    return kLeft + plot_w * (x - x_min) / (x_max - x_min);
  };
  auto py = [&](double y) { return kTop + plot_h * (1 - y); };
  for (size_t s = 0; s < series.size(); ++s) {
    std::string path = StrCat("M", Num(px(x_min)), ",", Num(py(0)));
    double last = 0;
    for (const auto& [x, y] : series[s].points) {
      StrAppend(&path, " L", Num(px(x)), ",", Num(py(last)), " L", Num(px(x)),
                ",", Num(py(y)));
      last = y;
    }
    StrAppend(&path, " L", Num(px(x_max)), ",", Num(py(last)));
    StrAppend(&out, "<path d=\"", path, "\" fill=\"none\" stroke=\"",
              kPalette[s % 6], "\" stroke-width=\"1.5\"/>\n");
  }
  StrAppend(&out, "<text x=\"", Num(kLeft), "\" y=\"",
            Num(kHeight - kBottom + 16), "\">", FormatDouble(x_min),
            "</text>\n<text x=\"", Num(kWidth - kRight), "\" y=\"",
            Num(kHeight - kBottom + 16), "\" text-anchor=\"end\">",
            FormatDouble(x_max), "</text>\n<text x=\"", Num(kWidth / 2),
            "\" y=\"", Num(kHeight - 10), "\" text-anchor=\"middle\">",
            Escape(x_label), "</text>\n");
  std::vector<std::string> names;
  for (const auto& s : series) names.push_back(s.name);
  out += Legend(names) + "</svg>\n";
  return out;
}

}  // namespace lingleak
