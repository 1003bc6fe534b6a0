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

#ifndef PODA_METRICS_HPP_
#define PODA_METRICS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/coalition.hpp"
#include "poda/masking.hpp"

namespace poda {

// Feature indices by descending |a_i|; ties keep ascending index.
std::vector<int> importance_order(std::span<const double> scores);

// The top-m coalition I(m) of an importance order.
CoalitionKey top_features(std::span<const int> order, int m);

// Prediction recovery: masked[m-1] = f_{I(m)}(x) for m = 1..d.
struct RecoveryCurve {
  double full_value = 0.0;
  std::vector<double> masked;
};

RecoveryCurve recovery_curve(std::span<const double> scores,
                             const CoalitionValueTable& table);
RecoveryCurve recovery_curve(std::span<const double> scores, double full_value,
                             const CoalitionLookup& lookup);

// sum_{m=1..d} |f(x) - f_{I(m)}(x)|. Throws MissingCoalition when a top-m
// coalition is absent from the table.
double aup(std::span<const double> scores, const CoalitionValueTable& table);
double aup(std::span<const double> scores, double full_value,
           const CoalitionLookup& lookup);
double aup(const RecoveryCurve& curve);

// f_empty(x) + sum(a) - f(x), signed.
double discrepancy(std::span<const double> scores, const CoalitionValueTable& table);

// Per-m mean over samples of (f(x) - f_{I(m)}(x))^2.
std::vector<double> inclusion_mse_curve(std::span<const RecoveryCurve> samples);
// (1/d) sum over m of inclusion_mse_curve.
double inclusion_mse(std::span<const RecoveryCurve> samples);
// Per-sample (1/d) sum_m (f(x) - f_{I(m)}(x))^2; their mean is inclusion_mse.
double sample_inclusion_mse(const RecoveryCurve& curve);

// Mann-Whitney ROC-AUC of scores against binary labels (label > 0.5 is
// positive); tied scores count 1/2. Throws DegenerateLabels on one class.
double roc_auc(std::span<const double> scores, std::span<const double> labels);
// Per-m AUC of the masked predictions f_{I(m)}(x) across samples.
std::vector<double> inclusion_auc_curve(std::span<const RecoveryCurve> samples,
                                        std::span<const double> labels);
double inclusion_auc(std::span<const RecoveryCurve> samples,
                     std::span<const double> labels);

struct Interval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// mean +/- 1.96 s / sqrt(n), s the sample standard deviation. n >= 2.
Interval aggregate(std::span<const double> values);
// "0.2213 (0.1991, 0.2435)"
std::string format_interval(const Interval& interval, int precision = 4);
nlohmann::json interval_to_json(const Interval& interval);

struct PerSampleMetrics {
  std::size_t sample_id = 0;
  std::string method;
  double aup = 0.0;
  double discrepancy = 0.0;
};

struct MethodSummary {
  std::string method;
  // metric name -> (mean, ci_low, ci_high)
  std::map<std::string, Interval> aggregates;
  // metric name -> per-m values
  std::map<std::string, std::vector<double>> inclusion_curves;
};

// Dataset-level evaluation results.
struct MetricReport {
  std::vector<PerSampleMetrics> per_sample;
  std::vector<MethodSummary> methods;

  nlohmann::json to_json() const;
  // sample_id,method,aup,discrepancy
  std::string per_sample_csv() const;
};

}  // namespace poda

#endif  // PODA_METRICS_HPP_
