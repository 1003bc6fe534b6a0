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

#include "poda/allocation.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "poda/error.hpp"
#include "poda/metrics.hpp"
#include "test_support.hpp"

namespace poda {
namespace {

using testing::polynomial;
using testing::table_for;

TEST(SampleSimplexTest, MembershipAndDeterminism) {
  std::mt19937_64 rng(1);
  const std::vector<double> alpha{1.0, 1.0, 1.0};
  for (int k = 0; k < 200; ++k) {
    const auto v = sample_simplex(alpha, 3, rng);
    EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
    for (double c : v) {
      EXPECT_GT(c, 0.0);
      EXPECT_LT(c, 1.0);
    }
  }
  std::mt19937_64 a(9), b(9);
  EXPECT_EQ(sample_simplex(alpha, 3, a), sample_simplex(alpha, 3, b));
}

TEST(SampleSimplexTest, ConcentratedMean) {
  std::mt19937_64 rng(2);
  const std::vector<double> alpha{1000.0, 1000.0};
  double sum = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) sum += sample_simplex(alpha, 2, rng)[0];
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(SampleSimplexTest, InvalidAlpha) {
  std::mt19937_64 rng(3);
  const std::vector<double> zero{0.0};
  const std::vector<double> negative{1.0, -1.0};
  const std::vector<double> wrong_len{1.0, 1.0};
  const std::vector<double> inf{INFINITY};
  EXPECT_THROW(sample_simplex(zero, 3, rng), InvalidAlpha);
  EXPECT_THROW(sample_simplex(negative, 2, rng), InvalidAlpha);
  EXPECT_THROW(sample_simplex(wrong_len, 3, rng), InvalidAlpha);
  EXPECT_THROW(sample_simplex(inf, 3, rng), InvalidAlpha);
}

TEST(GenerateCandidatesTest, UniformFirstAndSimplex) {
  CandidateOptions opts;
  opts.dirichlet.seed = 5;
  const auto c = generate_candidates(4, Sigma::full(), opts);
  ASSERT_EQ(c.size(), 16u);
  EXPECT_EQ(c.front(), XiAllocation::uniform(4, 4));
  for (const auto& xi : c) {
    EXPECT_TRUE(xi.is_simplex());
    EXPECT_EQ(xi.size(), 11u);
    EXPECT_NO_THROW(xi.require_coverage(4));
  }
  EXPECT_NE(c[1], c[2]);
}

TEST(GenerateCandidatesTest, D2HasOneEntry) {
  const auto c = generate_candidates(2, Sigma::full(), {});
  for (const auto& xi : c) {
    ASSERT_EQ(xi.size(), 1u);
    EXPECT_EQ(xi.entries().begin()->second.size(), 2u);
  }
}

TEST(GenerateCandidatesTest, CappedAndDeterministic) {
  CandidateOptions opts;
  opts.n_candidates = 4;
  opts.include_uniform = false;
  opts.dirichlet.seed = 11;
  const auto a = generate_candidates(6, Sigma::capped(2), opts);
  EXPECT_EQ(a, generate_candidates(6, Sigma::capped(2), opts));
  EXPECT_NE(a.front(), XiAllocation::uniform(6, 2));
  for (const auto& xi : a) EXPECT_EQ(xi.max_size(), 2);
  opts.n_candidates = 0;
  EXPECT_THROW(generate_candidates(3, Sigma::full(), opts), InvalidAllocation);
}

TEST(OptimizeXiTest, UniformOnlyIsShap) {
  std::mt19937_64 rng(4);
  const auto table = table_for(testing::random_mlp(5, rng), testing::random_point(5, rng),
                               testing::random_rows(5, 3, rng));
  const auto sel = optimize_xi(table, {XiAllocation::uniform(5, 5)});
  EXPECT_LE(testing::max_abs_diff(sel.attribution.scores, shap_exact(table).scores), 1e-9);
  EXPECT_EQ(sel.selected, 0u);
}

TEST(OptimizeXiTest, HandTieGoesToLowerIndex) {
  const auto table =
      table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}, {5.0, {{0, 1}}}}), {2, 3}, {{0, 0}});
  XiAllocation a(2), b(2);
  a.set(CoalitionKey(0b11), {0.9, 0.1});
  b.set(CoalitionKey(0b11), {0.1, 0.9});
  const auto sel = optimize_xi(table, {a, b});
  EXPECT_EQ(sel.selected, 0u);
  EXPECT_NEAR(sel.attribution.scores[0], 15.4, 1e-12);
  EXPECT_NEAR(sel.attribution.scores[1], 0.6, 1e-12);
  EXPECT_EQ(sel.candidate_aups, (std::vector<double>{6.0, 6.0}));
  const auto other = optimize_xi(table, {b, a});
  EXPECT_NEAR(other.attribution.scores[0], 10.6, 1e-12);
  EXPECT_NEAR(other.attribution.scores[1], 5.4, 1e-12);
  EXPECT_EQ(sel.attribution.metadata["candidate_index"], 0);
}

TEST(OptimizeXiTest, DominatesShapAndIsMonotone) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 3 + trial % 4;
    const auto table = table_for(testing::random_mlp(d, rng), testing::random_point(d, rng),
                                 testing::random_rows(d, 3, rng));
    CandidateOptions opts;
    opts.dirichlet.seed = static_cast<std::uint64_t>(trial);
    const auto candidates = generate_candidates(d, Sigma::full(), opts);
    const auto sel = optimize_xi(table, candidates);
    const double shap_aup = aup(shap_exact(table).scores, table);
    EXPECT_LE(sel.attribution.aup, shap_aup);
    EXPECT_LE(std::abs(sel.attribution.discrepancy), 1e-9);
    const std::vector<XiAllocation> fewer(candidates.begin(), candidates.begin() + 8);
    EXPECT_LE(sel.attribution.aup, optimize_xi(table, fewer).attribution.aup);
  }
}

TEST(OptimizeXiTest, CappedUsesLookup) {
  std::mt19937_64 rng(7);
  const auto model = testing::random_mlp(6, rng);
  const auto x = testing::random_point(6, rng);
  const auto bg = testing::background(testing::random_rows(6, 3, rng));
  const auto capped = build_table(model, testing::point(x), bg, Sigma::capped(2));
  const MaskedValueCache cache(capped, model, bg);
  CandidateOptions opts;
  opts.dirichlet.seed = 3;
  const auto candidates = generate_candidates(6, Sigma::capped(2), opts);
  const auto sel = optimize_xi(capped, candidates, 2, cache.lookup());
  EXPECT_EQ(sel.attribution.method, Method::kTaylorPodaCapped);
  EXPECT_EQ(sel.candidate_aups.size(), 16u);
  const auto full = build_table(model, testing::point(x), bg, Sigma::full());
  EXPECT_NEAR(sel.attribution.aup, aup(sel.attribution.scores, full), 1e-12);
}

TEST(OptimizeXiTest, RequiresCandidatesAndFullTable) {
  std::mt19937_64 rng(8);
  const auto model = testing::random_mlp(4, rng);
  const auto full = table_for(model, testing::random_point(4, rng), {{0, 0, 0, 0}});
  EXPECT_THROW(optimize_xi(full, {}), InvalidAllocation);
  const auto capped =
      table_for(model, testing::random_point(4, rng), {{0, 0, 0, 0}}, Sigma::capped(2));
  EXPECT_THROW(optimize_xi(capped, {XiAllocation::uniform(4, 4)}), MissingCoalition);
}

}  // namespace
}  // namespace poda
