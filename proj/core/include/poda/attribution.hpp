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

#ifndef PODA_ATTRIBUTION_HPP_
#define PODA_ATTRIBUTION_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/dividends.hpp"
#include "poda/masking.hpp"
#include "poda/oracle.hpp"
#include "poda/xi_allocation.hpp"

namespace poda {

enum class Method { kOcc1, kShap, kWeightedShap, kTaylorPoda, kTaylorPodaCapped, kLime };

// "occ1", "shap", "weightedshap", "taylorpoda", "taylorpoda-c", "lime".
std::string method_name(Method method);
std::optional<Method> parse_method(const std::string& name);
// Whether the method exposes tunable interaction allocation.
bool method_adapts(Method method);

// Per-feature scores a_1..a_d produced by one method for one instance.
struct Attribution {
  Method method = Method::kShap;
  std::vector<double> scores;
  // f_empty(x) + sum(a) - f(x).
  double discrepancy = std::numeric_limits<double>::quiet_NaN();
  double aup = std::numeric_limits<double>::quiet_NaN();
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Per-coalition semivalue weights: every coalition S of size s (not
// containing i) contributes weights[s] * (f_{S+i} - f_S) to a_i.
struct WeightFamily {
  std::string id;
  std::vector<double> weights;
};

// w_s = s!(d-1-s)!/d!, which reproduces the Shapley value.
WeightFamily shapley_family(int d);
// The 16 default families: Beta(p,q) densities for (p,q) in {0.5,1,2,4}^2
// evaluated at the size-bin midpoints (s + 0.5)/d, normalized to sum to 1
// over sizes. Ids look like "beta(0.5,2)".
std::vector<WeightFamily> beta_families(int d);

// a_i = f(x) - f_{G\{i}}(x).
Attribution occ1(const CoalitionValueTable& table);

// Exact Shapley value over a FULL table.
Attribution shap_exact(const CoalitionValueTable& table);

// Semivalue scores for one family; FULL table required.
std::vector<double> semivalue(const CoalitionValueTable& table,
                              const WeightFamily& family);

// Semivalue for each family, keeping the AUP-minimizing one (ties go to the
// earlier family). Metadata lists every family's AUP.
Attribution weighted_shap(const CoalitionValueTable& table,
                          const std::vector<WeightFamily>& families);

struct TaylorPodaOptions {
  // Diagnostic escape hatch for non-simplex xi (e.g. the OCC-1 reduction).
  bool require_simplex = true;
};

// a_i = f(x) - f_{G\{i}}(x) - sum_{S containing i, |S|>1} (1 - xi_{i,S}) H(S).
Attribution taylorpoda(const CoalitionValueTable& table, const XiAllocation& xi,
                       TaylorPodaOptions options = {});
Attribution taylorpoda(const CoalitionValueTable& table, const DividendMap& dividends,
                       const XiAllocation& xi, TaylorPodaOptions options = {});

// Same sum truncated to 1 < |S| <= sigma. Works on FULL or capped tables.
Attribution taylorpoda_capped(const CoalitionValueTable& table, const XiAllocation& xi,
                              int sigma);
Attribution taylorpoda_capped(const CoalitionValueTable& table,
                              const DividendMap& dividends, const XiAllocation& xi,
                              int sigma);

// Per-feature gap between the capped and full attributions,
// sum_{S containing i, |S|>sigma} (1 - xi_{i,S}) H(S). FULL table required.
std::vector<double> capped_gap(const CoalitionValueTable& full_table,
                               const XiAllocation& xi, int sigma);

struct LimeConfig {
  std::size_t n_samples = 1000;
  // <= 0 selects 0.75 * sqrt(d).
  double kernel_width = 0.0;
  double ridge_penalty = 1e-3;
  std::uint64_t seed = 0;
};

// Weighted ridge surrogate over random binary masks; absent features take the
// background mean. Scores are the fitted mask coefficients. Discrepancy and
// AUP are left unset (they need a coalition table).
Attribution lime(const ModelSpec& model, const FeatureVector& x,
                 const BackgroundSet& bg, const LimeConfig& config);

// Fills discrepancy, and AUP when every top-m coalition is resolvable.
void score_attribution(Attribution& attribution, const CoalitionValueTable& table);
void score_attribution(Attribution& attribution, const CoalitionValueTable& table,
                       const CoalitionLookup& lookup);

}  // namespace poda

#endif  // PODA_ATTRIBUTION_HPP_
