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

#include "poda/dividends.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "poda/error.hpp"
#include "test_support.hpp"

namespace poda {
namespace {

using testing::polynomial;
using testing::table_for;

TEST(HarsanyiTest, AdditiveModelHasNoPairDividend) {
  const auto table = table_for(polynomial(2, {{1.0, {{0, 1}}}, {1.0, {{1, 1}}}}), {2, 3},
                               {{0, 0}});
  EXPECT_DOUBLE_EQ(harsanyi(table, CoalitionKey(0b11)), 0.0);
}

TEST(HarsanyiTest, ProductDividend) {
  const auto table = table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}}), {2, 3}, {{0, 0}});
  EXPECT_DOUBLE_EQ(harsanyi(table, CoalitionKey(0b11)), 6.0);
  const auto all = harsanyi_all(table);
  EXPECT_DOUBLE_EQ(all.value(CoalitionKey(0b01)), 0.0);
  EXPECT_DOUBLE_EQ(all.value(CoalitionKey(0b10)), 0.0);
  EXPECT_DOUBLE_EQ(all.value(CoalitionKey(0b11)), 6.0);
  EXPECT_DOUBLE_EQ(all.value(CoalitionKey::empty()), table.empty_value());
}

TEST(HarsanyiTest, TripleProduct) {
  const auto table =
      table_for(polynomial(3, {{1.0, {{0, 1}, {1, 1}, {2, 1}}}}), {1, 1, 1}, {{0, 0, 0}});
  const auto all = harsanyi_all(table);
  EXPECT_DOUBLE_EQ(all.value(CoalitionKey(0b111)), 1.0);
  for (auto pair : {0b011, 0b101, 0b110}) EXPECT_DOUBLE_EQ(all.value(CoalitionKey(pair)), 0.0);
}

TEST(HarsanyiTest, MissingCoalitionOnCappedTable) {
  std::mt19937_64 rng(1);
  const auto model = testing::random_mlp(5, rng);
  const auto table =
      table_for(model, testing::random_point(5, rng), {{0, 0, 0, 0, 0}}, Sigma::capped(2));
  EXPECT_THROW(harsanyi(table, CoalitionKey(0b00111)), MissingCoalition);
  const auto all = harsanyi_all(table);
  EXPECT_NE(all.find(CoalitionKey(0b00011)), nullptr);
  // G\{i} is stored but its subsets are not, so it has no dividend.
  EXPECT_EQ(all.find(CoalitionKey(0b11110)), nullptr);
  EXPECT_THROW(mobius_identity_check(table, all), MissingCoalition);
}

TEST(HarsanyiTest, BulkMatchesDirectAndSingletons) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 6;
    const auto model = testing::random_mlp(d, rng);
    const auto table = table_for(model, testing::random_point(d, rng),
                                 testing::random_rows(d, 3, rng));
    const auto all = harsanyi_all(table);
    for (CoalitionKey s : table.keys()) {
      if (s.is_empty()) continue;
      EXPECT_NEAR(all.value(s), harsanyi(table, s), 1e-10);
    }
    for (int i = 0; i < d; ++i) {
      const auto si = CoalitionKey::singleton(i);
      EXPECT_NEAR(all.value(si), table.value(si) - table.empty_value(), 1e-15);
    }
  }
}

TEST(HarsanyiTest, CappedBulkMatchesFull) {
  std::mt19937_64 rng(6);
  const auto model = testing::random_mlp(6, rng);
  const auto x = testing::random_point(6, rng);
  const auto rows = testing::random_rows(6, 4, rng);
  const auto full = harsanyi_all(table_for(model, x, rows));
  const auto capped = harsanyi_all(table_for(model, x, rows, Sigma::capped(3)));
  for (CoalitionKey s : capped.keys()) EXPECT_NEAR(capped.value(s), full.value(s), 1e-12);
}

TEST(MobiusTest, ReconstructsEveryCoalition) {
  std::mt19937_64 rng(10);
  const auto model = testing::random_mlp(6, rng);
  const auto table =
      table_for(model, testing::random_point(6, rng), testing::random_rows(6, 5, rng));
  const auto all = harsanyi_all(table);
  EXPECT_LE(mobius_identity_check(table, all), 1e-12);
  for (CoalitionKey t : table.keys()) {
    double sum = table.empty_value();
    for_each_subset(t, [&](CoalitionKey s) {
      if (!s.is_empty()) sum += all.value(s);
    });
    EXPECT_NEAR(sum, table.value(t), 1e-9);
  }
}

TEST(MobiusTest, HandExample) {
  const auto table =
      table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}, {5.0, {{0, 1}}}}), {2, 3}, {{0, 0}});
  EXPECT_DOUBLE_EQ(table.value(CoalitionKey(0b01)), 10.0);
  EXPECT_DOUBLE_EQ(table.full_value(), 16.0);
  EXPECT_LE(mobius_identity_check(table, harsanyi_all(table)), 1e-12);
}

TEST(DividendsTest, AdditiveModelNullity) {
  std::mt19937_64 rng(12);
  std::vector<Monomial> monos;
  for (int i = 0; i < 5; ++i) monos.push_back({1.0 + i, {{i, 1 + i % 3}}});
  const auto table = table_for(polynomial(5, monos), testing::random_point(5, rng),
                               testing::random_rows(5, 6, rng));
  const auto all = harsanyi_all(table);
  for (CoalitionKey s : all.keys()) {
    if (s.size() > 1) EXPECT_NEAR(all.value(s), 0.0, 1e-9);
  }
}

TEST(DividendsTest, DumpFormat) {
  const auto table = table_for(polynomial(2, {{1.0, {{0, 1}, {1, 1}}}}), {2, 3}, {{0, 0}});
  const auto dump = dump_dividends(harsanyi_all(table));
  ASSERT_EQ(dump.size(), 4u);
  EXPECT_EQ(dump[3]["coalition"], "0b11");
}

}  // namespace
}  // namespace poda
