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

#include "poda/attribution.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "poda/error.hpp"
#include "poda/metrics.hpp"

namespace poda {

std::string method_name(Method method) {
  switch (method) {
    case Method::kOcc1: return "occ1";
    case Method::kShap: return "shap";
    case Method::kWeightedShap: return "weightedshap";
    case Method::kTaylorPoda: return "taylorpoda";
    case Method::kTaylorPodaCapped: return "taylorpoda-c";
    case Method::kLime: return "lime";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (Method m : {Method::kOcc1, Method::kShap, Method::kWeightedShap,
                   Method::kTaylorPoda, Method::kTaylorPodaCapped, Method::kLime}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

bool method_adapts(Method method) {
  return method == Method::kWeightedShap || method == Method::kTaylorPoda ||
         method == Method::kTaylorPodaCapped;
}

nlohmann::json Attribution::to_json() const {
  return {{"method", method_name(method)},
          {"scores", scores},
          {"discrepancy", discrepancy},
          {"aup", aup},
          {"metadata", metadata}};
}

namespace {

void require_full(const CoalitionValueTable& table, const char* what) {
  if (!table.is_full()) {
    throw MissingCoalition(std::string(what) + " needs a FULL coalition table, got sigma=" +
                           table.sigma().to_string());
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

std::vector<double> semivalue_scores(const CoalitionValueTable& table,
                                     std::span<const double> size_weights) {
  const int d = table.dimension();
  const auto f = table.values().by_mask();
  std::vector<double> a(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double sum = 0.0;
    for (std::uint64_t m = 0; m < f.size(); ++m) {
      if (m & bit) continue;
      sum += size_weights[static_cast<std::size_t>(std::popcount(m))] * (f[m | bit] - f[m]);
    }
    a[static_cast<std::size_t>(i)] = sum;
  }
  return a;
}

// Leading OCC-1 term minus the (1 - xi) share of every dividend with
// 1 < |S| <= cap. Coalitions are visited in canonical order, so a smaller cap
// is a prefix of the same accumulation.
std::vector<double> taylor_scores(const CoalitionValueTable& table,
                                  const DividendMap& dividends, const XiAllocation& xi,
                                  int cap, bool require_simplex) {
  const int d = table.dimension();
  if (xi.dimension() != d) {
    throw InvalidAllocation("xi is for " + std::to_string(xi.dimension()) +
                            " features, table has " + std::to_string(d));
  }
  xi.require_coverage(cap);
  if (require_simplex) xi.require_simplex();

  const CoalitionKey all = CoalitionKey::full(d);
  const double fx = table.full_value();
  std::vector<double> a(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = fx - table.value(all.without(i));

  for (const auto& [s, weights] : xi.entries()) {
    if (s.size() > cap) break;
    const double h = dividends.value(s);
    int r = 0;
    for (std::uint64_t rest = s.bits(); rest != 0; rest &= rest - 1, ++r) {
      const int i = std::countr_zero(rest);
      a[static_cast<std::size_t>(i)] -= (1.0 - weights[static_cast<std::size_t>(r)]) * h;
    }
  }
  return a;
}

Attribution finish(Method method, std::vector<double> scores,
                   const CoalitionValueTable& table) {
  Attribution out;
  out.method = method;
  out.scores = std::move(scores);
  score_attribution(out, table);
  return out;
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void score_attribution(Attribution& attribution, const CoalitionValueTable& table) {
  attribution.discrepancy = discrepancy(attribution.scores, table);
  if (table.is_full()) attribution.aup = aup(attribution.scores, table);
}

void score_attribution(Attribution& attribution, const CoalitionValueTable& table,
                       const CoalitionLookup& lookup) {
  attribution.discrepancy = discrepancy(attribution.scores, table);
  attribution.aup = aup(attribution.scores, table.full_value(), lookup);
}

WeightFamily shapley_family(int d) {
  WeightFamily family{"shapley", {}};
  for (int s = 0; s < d; ++s) family.weights.push_back(1.0 / (d * binomial(d - 1, s)));
  return family;
}

std::vector<WeightFamily> beta_families(int d) {
  static constexpr double kGrid[] = {0.5, 1.0, 2.0, 4.0};
  std::vector<WeightFamily> out;
  for (double p : kGrid) {
    for (double q : kGrid) {
      WeightFamily family;
      family.id = "beta(" + format_param(p) + "," + format_param(q) + ")";
      double total = 0.0;
      for (int s = 0; s < d; ++s) {
        const double t = (s + 0.5) / d;
        const double density = std::pow(t, p - 1.0) * std::pow(1.0 - t, q - 1.0);
        family.weights.push_back(density);
        total += density;
      }
      for (double& w : family.weights) w /= total;
      out.push_back(std::move(family));
    }
  }
  return out;
}

Attribution occ1(const CoalitionValueTable& table) {
  const int d = table.dimension();
  const CoalitionKey all = CoalitionKey::full(d);
  const double fx = table.full_value();
  std::vector<double> a(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = fx - table.value(all.without(i));
  return finish(Method::kOcc1, std::move(a), table);
}

Attribution shap_exact(const CoalitionValueTable& table) {
  require_full(table, "exact SHAP");
  const auto family = shapley_family(table.dimension());
  return finish(Method::kShap, semivalue_scores(table, family.weights), table);
}

std::vector<double> semivalue(const CoalitionValueTable& table,
                              const WeightFamily& family) {
  require_full(table, "WeightedSHAP");
  if (family.weights.size() != static_cast<std::size_t>(table.dimension())) {
    throw DimensionError("weight family '" + family.id + "' has " +
                         std::to_string(family.weights.size()) + " sizes for d=" +
                         std::to_string(table.dimension()));
  }
  return semivalue_scores(table, family.weights);
}

Attribution weighted_shap(const CoalitionValueTable& table,
                          const std::vector<WeightFamily>& families) {
  if (families.empty()) throw EmptyFamilyList("WeightedSHAP needs at least one weight family");
  require_full(table, "WeightedSHAP");
  std::vector<double> best;
  double best_aup = 0.0;
  std::size_t best_index = 0;
  nlohmann::json family_aups = nlohmann::json::array();
  for (std::size_t k = 0; k < families.size(); ++k) {
    auto scores = semivalue(table, families[k]);
    const double score_aup = aup(scores, table);
    family_aups.push_back({{"family", families[k].id}, {"aup", score_aup}});
    if (k == 0 || score_aup < best_aup) {
      best = std::move(scores);
      best_aup = score_aup;
      best_index = k;
    }
  }
  Attribution out = finish(Method::kWeightedShap, std::move(best), table);
  out.metadata["weight_family"] = families[best_index].id;
  out.metadata["weight_family_index"] = best_index;
  out.metadata["weight_family_aups"] = std::move(family_aups);
  return out;
}

Attribution taylorpoda(const CoalitionValueTable& table, const XiAllocation& xi,
                       TaylorPodaOptions options) {
  require_full(table, "TaylorPODA");
  return taylorpoda(table, harsanyi_all(table), xi, options);
}

Attribution taylorpoda(const CoalitionValueTable& table, const DividendMap& dividends,
                       const XiAllocation& xi, TaylorPodaOptions options) {
  require_full(table, "TaylorPODA");
  const int d = table.dimension();
  Attribution out = finish(Method::kTaylorPoda,
                           taylor_scores(table, dividends, xi, d, options.require_simplex),
                           table);
  out.metadata["sigma"] = "FULL";
  return out;
}

Attribution taylorpoda_capped(const CoalitionValueTable& table, const XiAllocation& xi,
                              int sigma) {
  return taylorpoda_capped(table, harsanyi_all(table), xi, sigma);
}

Attribution taylorpoda_capped(const CoalitionValueTable& table,
                              const DividendMap& dividends, const XiAllocation& xi,
                              int sigma) {
  const int d = table.dimension();
  if (sigma < 1 || sigma > d) {
    throw DimensionError("sigma must lie in [1, d]; got " + std::to_string(sigma));
  }
  if (sigma > table.sigma().cap(d)) {
    throw MissingCoalition("sigma=" + std::to_string(sigma) + " exceeds the table's cap " +
                           table.sigma().to_string());
  }
  Attribution out = finish(Method::kTaylorPodaCapped,
                           taylor_scores(table, dividends, xi, sigma, true), table);
  out.metadata["sigma"] = sigma;
  return out;
}

std::vector<double> capped_gap(const CoalitionValueTable& full_table,
                               const XiAllocation& xi, int sigma) {
  require_full(full_table, "the capped gap");
  const auto dividends = harsanyi_all(full_table);
  const auto capped = taylorpoda_capped(full_table, dividends, xi, sigma);
  const auto full = taylorpoda(full_table, dividends, xi);
  std::vector<double> gap(capped.scores.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = capped.scores[i] - full.scores[i];
  return gap;
}

Attribution lime(const ModelSpec& model, const FeatureVector& x, const BackgroundSet& bg,
                 const LimeConfig& config) {
  const std::size_t d = x.size();
  if (d != model.input_dim()) {
    throw DimensionError("instance has " + std::to_string(d) + " features, model expects " +
                         std::to_string(model.input_dim()));
  }
  if (bg.size() == 0) throw DimensionError("LIME needs a non-empty background");
  if (bg.dimension() != d) throw DimensionError("background dimension mismatch");

  Attribution out;
  out.method = Method::kLime;
  if (d == 1) {
    // One feature: the whole output change belongs to it.
    const double fx = evaluate(model, x.values);
    out.scores = {fx - masked_output(model, x.values, CoalitionKey::empty(), bg)};
    out.metadata["degenerate"] = "d=1";
    return out;
  }
  if (config.n_samples < 2) throw SingularFit("LIME needs at least 2 samples");

  std::vector<double> mean(d, 0.0);
  for (std::size_t b = 0; b < bg.size(); ++b) {
    const auto row = bg.rows.row(b);
    for (std::size_t i = 0; i < d; ++i) mean[i] += row[i];
  }
  for (double& m : mean) m /= static_cast<double>(bg.size());

  const double width = config.kernel_width > 0.0
                           ? config.kernel_width
                           : 0.75 * std::sqrt(static_cast<double>(d));
  const std::size_t n = config.n_samples;
  std::mt19937_64 rng(config.seed);
  std::vector<CoalitionKey> masks;
  masks.reserve(n);
  masks.push_back(CoalitionKey::full(static_cast<int>(d)));
  while (masks.size() < n) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (rng() >> 63) bits |= std::uint64_t{1} << i;
    }
    masks.push_back(CoalitionKey(bits));
  }

  RowMatrix rows(n, d);
  for (std::size_t k = 0; k < n; ++k) splice(x.values, mean, masks[k], rows.row(k));
  const auto y = evaluate_batch(model, rows);

  const Eigen::Index p = static_cast<Eigen::Index>(d) + 1;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd z(p);
  for (std::size_t k = 0; k < n; ++k) {
    const double dist = static_cast<double>(static_cast<int>(d) - masks[k].size());
    const double w = std::exp(-(dist * dist) / (width * width));
    z(0) = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      z(static_cast<Eigen::Index>(i) + 1) = masks[k].contains(static_cast<int>(i)) ? 1.0 : 0.0;
    }
    gram.noalias() += w * z * z.transpose();
    rhs.noalias() += w * y[k] * z;
  }
  for (Eigen::Index j = 1; j < p; ++j) gram(j, j) += config.ridge_penalty;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const auto& diag = ldlt.vectorD();
  const double scale = diag.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || !(scale > 0.0) ||
      diag.minCoeff() <= 1e-12 * scale) {
    throw SingularFit("weighted ridge system is singular; raise ridge_penalty or n_samples");
  }
  const Eigen::VectorXd theta = ldlt.solve(rhs);
  if (!theta.allFinite()) throw SingularFit("weighted ridge solution is not finite");

  out.scores.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.scores[i] = theta(static_cast<Eigen::Index>(i) + 1);
  out.metadata["intercept"] = theta(0);
  out.metadata["n_samples"] = n;
  out.metadata["kernel_width"] = width;
  out.metadata["ridge_penalty"] = config.ridge_penalty;
  out.metadata["seed"] = config.seed;
  return out;
}

}  // namespace poda
