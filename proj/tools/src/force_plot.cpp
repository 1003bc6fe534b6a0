/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "force_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace poda::cli {

double ForcePlotData::reconstruction_gap() const {
  double sum = base_value;
  for (const auto& c : contributions) sum += c.contribution;
  return sum - final_value;
}

nlohmann::json ForcePlotData::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : contributions) {
    items.push_back({{"feature", c.feature}, {"value", c.value}, {"contribution", c.contribution}});
  }
  return {{"method", method},
          {"base_value", base_value},
          {"final_value", final_value},
          {"contributions", std::move(items)},
          {"reconstruction_gap", reconstruction_gap()},
          {"additive", is_additive()}};
}

ForcePlotData make_force_plot(const Attribution& attribution,
                              const CoalitionValueTable& table,
                              const std::vector<std::string>& feature_names) {
  ForcePlotData out;
  out.method = method_name(attribution.method);
  out.base_value = table.empty_value();
  out.final_value = table.full_value();
  const auto& x = table.instance().values;
  for (std::size_t i = 0; i < attribution.scores.size(); ++i) {
    out.contributions.push_back(
        {i < feature_names.size() ? feature_names[i] : "x" + std::to_string(i), x[i],
         attribution.scores[i]});
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string force_plot_svg(const std::vector<ForcePlotData>& plots, const std::string& title) {
  constexpr double kWidth = 760.0;
  constexpr double kLeft = 120.0;
  constexpr double kRight = 40.0;
  constexpr double kRowHeight = 70.0;
  const double height = 40.0 + kRowHeight * static_cast<double>(plots.size());

  // Shared axis over every running sum so rows are comparable.
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& p : plots) {
    double run = p.base_value;
    auto take = [&](double v) {
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    };
    take(run);
    for (const auto& c : p.contributions) take(run += c.contribution);
    take(p.final_value);
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double span = hi - lo;
  auto px = [&](double v) { return kLeft + (v - lo) / span * (kWidth - kLeft - kRight); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"10\" y=\"20\" font-size=\"14\">" << escape(title) << "</text>\n";
  for (std::size_t r = 0; r < plots.size(); ++r) {
    const auto& p = plots[r];
    const double y = 40.0 + kRowHeight * static_cast<double>(r);
    svg << "<text x=\"10\" y=\"" << y + 22 << "\">" << escape(p.method) << "</text>\n";
    double run = p.base_value;
    for (const auto& c : p.contributions) {
      const double next = run + c.contribution;
      const double x0 = px(std::min(run, next));
      const double w = std::max(0.5, std::abs(px(next) - px(run)));
      svg << "<rect x=\"" << x0 << "\" y=\"" << y + 10 << "\" width=\"" << w
          << "\" height=\"18\" fill=\"" << (c.contribution >= 0 ? "#d6336c" : "#1c7ed6")
          << "\" stroke=\"white\"><title>" << escape(c.feature) << " = " << fmt(c.value)
          << ": " << fmt(c.contribution) << "</title></rect>\n";
      run = next;
    }
    svg << "<line x1=\"" << px(p.base_value) << "\" x2=\"" << px(p.base_value) << "\" y1=\""
        << y + 6 << "\" y2=\"" << y + 32 << "\" stroke=\"#555\"/>\n";
    svg << "<line x1=\"" << px(p.final_value) << "\" x2=\"" << px(p.final_value) << "\" y1=\""
        << y + 6 << "\" y2=\"" << y + 32 << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << px(p.base_value) << "\" y=\"" << y + 45
        << "\" text-anchor=\"middle\" fill=\"#555\">base " << fmt(p.base_value) << "</text>\n";
    svg << "<text x=\"" << px(p.final_value) << "\" y=\"" << y + 4
        << "\" text-anchor=\"middle\">f(x) " << fmt(p.final_value) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace poda::cli
