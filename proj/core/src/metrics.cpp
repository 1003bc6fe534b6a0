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

#include "poda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "poda/error.hpp"

namespace poda {

std::vector<int> importance_order(std::span<const double> scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(scores[static_cast<std::size_t>(a)]) >
           std::abs(scores[static_cast<std::size_t>(b)]);
  });
  return order;
}

CoalitionKey top_features(std::span<const int> order, int m) {
  CoalitionKey key;
  for (int k = 0; k < m; ++k) key = key.with(order[static_cast<std::size_t>(k)]);
  return key;
}

RecoveryCurve recovery_curve(std::span<const double> scores, double full_value,
                             const CoalitionLookup& lookup) {
  const auto order = importance_order(scores);
  RecoveryCurve curve;
  curve.full_value = full_value;
  curve.masked.reserve(order.size());
  CoalitionKey key;
  for (std::size_t m = 0; m < order.size(); ++m) {
    key = key.with(order[m]);
    // I(d) = G, whose masked output is f(x) itself.
    curve.masked.push_back(m + 1 == order.size() ? full_value : lookup(key));
  }
  return curve;
}

RecoveryCurve recovery_curve(std::span<const double> scores,
                             const CoalitionValueTable& table) {
  if (scores.size() != static_cast<std::size_t>(table.dimension())) {
    throw DimensionError("attribution has " + std::to_string(scores.size()) +
                         " scores for a " + std::to_string(table.dimension()) +
                         "-feature table");
  }
  return recovery_curve(scores, table.full_value(),
                        [&table](CoalitionKey s) { return table.value(s); });
}

double aup(const RecoveryCurve& curve) {
  double total = 0.0;
  for (double v : curve.masked) total += std::abs(curve.full_value - v);
  return total;
}

double aup(std::span<const double> scores, const CoalitionValueTable& table) {
  return aup(recovery_curve(scores, table));
}

double aup(std::span<const double> scores, double full_value,
           const CoalitionLookup& lookup) {
  return aup(recovery_curve(scores, full_value, lookup));
}

double discrepancy(std::span<const double> scores, const CoalitionValueTable& table) {
  double sum = 0.0;
  for (double a : scores) sum += a;
  return table.empty_value() + sum - table.full_value();
}

namespace {

void require_same_length(std::span<const RecoveryCurve> samples) {
  if (samples.empty()) throw InsufficientSamples("no samples to evaluate");
  for (const auto& s : samples) {
    if (s.masked.size() != samples.front().masked.size()) {
      throw DimensionError("recovery curves of different lengths");
    }
  }
}

}  // namespace

std::vector<double> inclusion_mse_curve(std::span<const RecoveryCurve> samples) {
  require_same_length(samples);
  const std::size_t d = samples.front().masked.size();
  std::vector<double> curve(d, 0.0);
  for (std::size_t m = 0; m < d; ++m) {
    double sum = 0.0;
    for (const auto& s : samples) {
      const double err = s.full_value - s.masked[m];
      sum += err * err;
    }
    curve[m] = sum / static_cast<double>(samples.size());
  }
  return curve;
}

double inclusion_mse(std::span<const RecoveryCurve> samples) {
  const auto curve = inclusion_mse_curve(samples);
  double sum = 0.0;
  for (double v : curve) sum += v;
  return sum / static_cast<double>(curve.size());
}

double sample_inclusion_mse(const RecoveryCurve& curve) {
  double sum = 0.0;
  for (double v : curve.masked) {
    const double err = curve.full_value - v;
    sum += err * err;
  }
  return sum / static_cast<double>(curve.masked.size());
}

double roc_auc(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Midranks (1-based) with ties averaged.
  std::vector<double> rank(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = mid;
    i = j + 1;
  }
  double positives = 0.0;
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (labels[k] > 0.5) {
      positives += 1.0;
      rank_sum += rank[k];
    }
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw DegenerateLabels("ROC-AUC needs at least one positive and one negative label");
  }
  return (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

std::vector<double> inclusion_auc_curve(std::span<const RecoveryCurve> samples,
                                        std::span<const double> labels) {
  require_same_length(samples);
  if (labels.size() != samples.size()) {
    throw DimensionError("need one label per sample");
  }
  const std::size_t d = samples.front().masked.size();
  std::vector<double> curve(d, 0.0);
  std::vector<double> predictions(samples.size());
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t k = 0; k < samples.size(); ++k) predictions[k] = samples[k].masked[m];
    curve[m] = roc_auc(predictions, labels);
  }
  return curve;
}

double inclusion_auc(std::span<const RecoveryCurve> samples,
                     std::span<const double> labels) {
  const auto curve = inclusion_auc_curve(samples, labels);
  double sum = 0.0;
  for (double v : curve) sum += v;
  return sum / static_cast<double>(curve.size());
}

Interval aggregate(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw InsufficientSamples("confidence intervals need at least 2 values, got " +
                              std::to_string(n));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double half = 1.96 * sd / std::sqrt(static_cast<double>(n));
  return Interval{mean, mean - half, mean + half};
}

std::string format_interval(const Interval& interval, int precision) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.*f (%.*f, %.*f)", precision, interval.mean,
                precision, interval.low, precision, interval.high);
  return buf;
}

nlohmann::json interval_to_json(const Interval& interval) {
  return {{"mean", interval.mean},
          {"ci_low", interval.low},
          {"ci_high", interval.high},
          {"formatted", format_interval(interval)}};
}

nlohmann::json MetricReport::to_json() const {
  nlohmann::json out;
  auto& rows = out["per_sample"] = nlohmann::json::array();
  for (const auto& r : per_sample) {
    rows.push_back({{"sample_id", r.sample_id},
                    {"method", r.method},
                    {"aup", r.aup},
                    {"discrepancy", r.discrepancy}});
  }
  auto& methods_json = out["methods"] = nlohmann::json::array();
  for (const auto& m : methods) {
    nlohmann::json entry;
    entry["method"] = m.method;
    auto& agg = entry["aggregates"] = nlohmann::json::object();
    for (const auto& [name, interval] : m.aggregates) agg[name] = interval_to_json(interval);
    entry["inclusion_curves"] = m.inclusion_curves;
    methods_json.push_back(std::move(entry));
  }
  return out;
}

std::string MetricReport::per_sample_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "sample_id,method,aup,discrepancy\n";
  for (const auto& r : per_sample) {
    out << r.sample_id << ',' << r.method << ',' << r.aup << ',' << r.discrepancy << '\n';
  }
  return out.str();
}

}  // namespace poda
