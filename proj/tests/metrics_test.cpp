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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "poda/attribution.hpp"
#include "poda/error.hpp"
#include "test_support.hpp"

namespace poda {
namespace {

using testing::polynomial;
using testing::table_for;

const CoalitionValueTable& hand_table() {
  static const auto t =
      table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}, {5.0, {{0, 1}}}}), {2, 3}, {{0, 0}});
  return t;
}

TEST(ImportanceOrderTest, DescendingAbsTiesByIndex) {
  const std::vector<double> a{0.5, -2.0, 2.0, 0.0};
  EXPECT_EQ(importance_order(a), (std::vector<int>{1, 2, 0, 3}));
  const std::vector<int> order{1, 2, 0, 3};
  EXPECT_EQ(top_features(order, 2), CoalitionKey(0b0110));
  EXPECT_EQ(top_features(order, 0), CoalitionKey::empty());
}

TEST(AupTest, HandValues) {
  const std::vector<double> a{13, 3};
  EXPECT_DOUBLE_EQ(aup(a, hand_table()), 6.0);
  const std::vector<double> b{3, 13};
  EXPECT_DOUBLE_EQ(aup(b, hand_table()), 16.0);
  const auto curve = recovery_curve(a, hand_table());
  EXPECT_EQ(curve.masked, (std::vector<double>{10, 16}));
  EXPECT_DOUBLE_EQ(aup(curve), 6.0);
}

TEST(AupTest, SingleFeatureIsZero) {
  const auto t = table_for(polynomial(1, {{3.0, {{0, 1}}}}), {2}, {{0}});
  const std::vector<double> a{6};
  EXPECT_DOUBLE_EQ(aup(a, t), 0.0);
}

TEST(AupTest, MissingCoalitionOnCappedTable) {
  std::mt19937_64 rng(1);
  const auto t = table_for(testing::random_mlp(5, rng), testing::random_point(5, rng),
                           {{0, 0, 0, 0, 0}}, Sigma::capped(1));
  const std::vector<double> a{5, 4, 3, 2, 1};
  EXPECT_THROW(aup(a, t), MissingCoalition);
}

TEST(AupTest, LastTermIsZeroAndScaleInvariant) {
  std::mt19937_64 rng(2);
  const auto t = table_for(testing::random_mlp(5, rng), testing::random_point(5, rng),
                           testing::random_rows(5, 3, rng));
  const auto a = shap_exact(t).scores;
  const auto curve = recovery_curve(a, t);
  EXPECT_EQ(curve.masked.back(), t.full_value());
  std::vector<double> scaled = a;
  for (double& v : scaled) v *= 7.5;
  EXPECT_EQ(aup(a, t), aup(scaled, t));
  EXPECT_GE(aup(a, t), 0.0);
}

TEST(DiscrepancyTest, HandValues) {
  const auto t = table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}}), {2, 3}, {{0, 0}});
  const std::vector<double> occ{6, 6};
  EXPECT_DOUBLE_EQ(discrepancy(occ, t), 6.0);
  const auto additive =
      table_for(polynomial(2, {{1.0, {{0, 1}}}, {1.0, {{1, 1}}}}), {2, 3}, {{0, 0}});
  EXPECT_DOUBLE_EQ(discrepancy(occ1(additive).scores, additive), 0.0);
}

TEST(InclusionMseTest, HandValues) {
  const std::vector<double> a{13, 3};
  const std::vector<RecoveryCurve> one{recovery_curve(a, hand_table())};
  EXPECT_DOUBLE_EQ(inclusion_mse(one), 18.0);
  EXPECT_EQ(inclusion_mse_curve(one), (std::vector<double>{36.0, 0.0}));
  EXPECT_DOUBLE_EQ(sample_inclusion_mse(one.front()), 18.0);

  const auto single = table_for(polynomial(2, {{1.0, {{0, 1}}}}), {2, 3}, {{0, 0}});
  const std::vector<double> sensible{2, 0};
  const std::vector<RecoveryCurve> perfect{recovery_curve(sensible, single)};
  EXPECT_EQ(inclusion_mse_curve(perfect).front(), 0.0);
  EXPECT_DOUBLE_EQ(inclusion_mse(perfect), 0.0);

  const auto zero = table_for(polynomial(2, {}), {2, 3}, {{0, 0}});
  const std::vector<RecoveryCurve> zeros{recovery_curve(sensible, zero)};
  EXPECT_DOUBLE_EQ(inclusion_mse(zeros), 0.0);
}

TEST(InclusionMseTest, MeanOfPerSampleValues) {
  std::mt19937_64 rng(3);
  const auto model = testing::random_mlp(4, rng);
  std::vector<RecoveryCurve> curves;
  double mean = 0.0;
  for (int k = 0; k < 6; ++k) {
    const auto t = table_for(model, testing::random_point(4, rng), testing::random_rows(4, 3, rng));
    curves.push_back(recovery_curve(shap_exact(t).scores, t));
    mean += sample_inclusion_mse(curves.back()) / 6.0;
  }
  EXPECT_NEAR(inclusion_mse(curves), mean, 1e-12);
}

TEST(RocAucTest, Basics) {
  const std::vector<double> s{0.9, 0.1};
  const std::vector<double> l{1, 0};
  EXPECT_DOUBLE_EQ(roc_auc(s, l), 1.0);
  const std::vector<double> tied{0.5, 0.5};
  EXPECT_DOUBLE_EQ(roc_auc(tied, l), 0.5);
  const std::vector<double> same{1, 1};
  EXPECT_THROW(roc_auc(s, same), DegenerateLabels);
}

TEST(RocAucTest, RandomLabelsNearHalf) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> s, l;
  for (int k = 0; k < 5000; ++k) {
    s.push_back(u(rng));
    l.push_back(coin(rng) ? 1.0 : 0.0);
  }
  EXPECT_NEAR(roc_auc(s, l), 0.5, 0.05);
}

TEST(InclusionAucTest, PerfectSeparation) {
  std::vector<RecoveryCurve> curves{{1.0, {0.9, 0.8, 0.95}}, {0.0, {0.1, 0.2, 0.05}}};
  const std::vector<double> labels{1, 0};
  EXPECT_DOUBLE_EQ(inclusion_auc(curves, labels), 1.0);
  EXPECT_EQ(inclusion_auc_curve(curves, labels).size(), 3u);
  const std::vector<double> one_class{1, 1};
  EXPECT_THROW(inclusion_auc(curves, one_class), DegenerateLabels);
}

TEST(AggregateTest, Intervals) {
  const std::vector<double> constant{3, 3, 3};
  const auto c = aggregate(constant);
  EXPECT_DOUBLE_EQ(c.low, 3.0);
  EXPECT_DOUBLE_EQ(c.high, 3.0);
  const std::vector<double> two{0, 2};
  const auto t = aggregate(two);
  EXPECT_DOUBLE_EQ(t.mean, 1.0);
  EXPECT_NEAR(t.high - t.mean, 1.96, 1e-12);
  EXPECT_NEAR(t.mean - t.low, 1.96, 1e-12);
  const std::vector<double> single{1};
  EXPECT_THROW(aggregate(single), InsufficientSamples);
  EXPECT_EQ(format_interval({0.2213, 0.1991, 0.2435}), "0.2213 (0.1991, 0.2435)");
}

TEST(MetricReportTest, Serialization) {
  MetricReport report;
  report.per_sample.push_back({0, "shap", 1.5, 0.0});
  report.per_sample.push_back({1, "shap", 2.5, 0.0});
  MethodSummary summary;
  summary.method = "shap";
  summary.aggregates["aup"] = {2.0, 1.0, 3.0};
  report.methods.push_back(summary);
  const auto j = report.to_json();
  EXPECT_EQ(j["per_sample"].size(), 2u);
  const auto csv = report.per_sample_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "sample_id,method,aup,discrepancy");
}

}  // namespace
}  // namespace poda
