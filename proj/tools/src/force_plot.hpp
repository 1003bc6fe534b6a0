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

#ifndef PODA_TOOLS_FORCE_PLOT_HPP_
#define PODA_TOOLS_FORCE_PLOT_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/attribution.hpp"
#include "poda/masking.hpp"

namespace poda::cli {

inline constexpr double kForcePlotTolerance = 1e-6;

struct ForceContribution {
  std::string feature;
  double value = 0.0;
  double contribution = 0.0;
};

// Additive picture of one attribution: base + sum(contributions) = final
// for zero-discrepancy methods.
struct ForcePlotData {
  std::string method;
  double base_value = 0.0;
  double final_value = 0.0;
  std::vector<ForceContribution> contributions;

  double reconstruction_gap() const;
  bool is_additive() const { return std::abs(reconstruction_gap()) <= kForcePlotTolerance; }
  nlohmann::json to_json() const;
};

ForcePlotData make_force_plot(const Attribution& attribution,
                              const CoalitionValueTable& table,
                              const std::vector<std::string>& feature_names);

// Static horizontal force plot, one row per entry.
std::string force_plot_svg(const std::vector<ForcePlotData>& plots,
                           const std::string& title);

}  // namespace poda::cli

#endif  // PODA_TOOLS_FORCE_PLOT_HPP_
