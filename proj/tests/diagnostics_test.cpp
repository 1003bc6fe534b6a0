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

#include "poda/diagnostics.hpp"

#include <gtest/gtest.h>

#include "poda/error.hpp"
#include "test_support.hpp"

namespace poda {
namespace {

TEST(DiagnoseTest, BatteryReproducesPostulatePattern) {
  const auto cases = polynomial_battery(20, 42);
  ASSERT_EQ(cases.size(), 20u);
  const auto m = diagnose(cases, {});
  EXPECT_FALSE(m.additive_only);

  const auto* occ = m.find(Method::kOcc1);
  ASSERT_NE(occ, nullptr);
  EXPECT_TRUE(occ->precision);
  EXPECT_TRUE(occ->federation);
  EXPECT_FALSE(occ->zero_discrepancy);
  EXPECT_FALSE(occ->adaptation);

  const auto* shap = m.find(Method::kShap);
  EXPECT_TRUE(shap->precision && shap->federation && shap->zero_discrepancy);
  EXPECT_FALSE(shap->adaptation);

  const auto* ws = m.find(Method::kWeightedShap);
  EXPECT_FALSE(ws->precision);
  EXPECT_TRUE(ws->federation);
  EXPECT_FALSE(ws->zero_discrepancy);
  EXPECT_TRUE(ws->adaptation);

  const auto* tp = m.find(Method::kTaylorPoda);
  EXPECT_TRUE(tp->precision && tp->federation && tp->zero_discrepancy && tp->adaptation);

  const auto* lime = m.find(Method::kLime);
  EXPECT_FALSE(lime->applicable);
  const auto j = m.to_json();
  EXPECT_EQ(j["rows"][4]["precision"], "n/a");
  EXPECT_NE(m.to_text().find("n/a"), std::string::npos);
}

TEST(DiagnoseTest, AdditiveModelIsFlagged) {
  const auto model =
      testing::polynomial(3, {{1.0, {{0, 1}}}, {2.0, {{1, 2}}}, {-1.0, {{2, 3}}}});
  const auto cases = model_cases(model, RowMatrix::from_rows({{1, 2, 3}, {-1, 0.5, 2}}),
                                 testing::background({{0.5, 0.5, 0.5}}));
  DiagnoseOptions opts;
  opts.methods = {Method::kOcc1, Method::kShap, Method::kTaylorPoda, Method::kWeightedShap};
  const auto m = diagnose(cases, opts);
  EXPECT_TRUE(m.additive_only);
  for (Method method : {Method::kOcc1, Method::kShap, Method::kTaylorPoda}) {
    const auto* row = m.find(method);
    EXPECT_TRUE(row->precision && row->federation && row->zero_discrepancy);
  }
  // Non-Shapley semivalues rescale independent effects even without interactions.
  EXPECT_FALSE(m.find(Method::kWeightedShap)->precision);
  EXPECT_TRUE(m.to_json().contains("note"));
}

TEST(DiagnoseTest, CappedRowHoldsPrecisionAndFederation) {
  DiagnoseOptions opts;
  opts.methods = {Method::kTaylorPodaCapped};
  const auto m = diagnose(polynomial_battery(10, 7), opts);
  const auto* row = m.find(Method::kTaylorPodaCapped);
  EXPECT_TRUE(row->precision);
  EXPECT_TRUE(row->federation);
}

TEST(DiagnoseTest, PreconditionErrors) {
  std::mt19937_64 rng(1);
  const auto mlp = testing::random_mlp(2, rng);
  const auto rows = RowMatrix::from_rows({{1, 2}});
  EXPECT_THROW(model_cases(mlp, rows, testing::background({{0, 0}})), NotPolynomial);
  const auto poly = testing::polynomial(2, {{1.0, {{0, 1}, {1, 1}}}});
  EXPECT_THROW(model_cases(poly, rows, testing::background({{0, 0}, {1, 1}})),
               BackgroundNotSingleRow);
}

TEST(DiagnoseTest, Deterministic) {
  const auto a = diagnose(polynomial_battery(5, 3), {}).to_json();
  const auto b = diagnose(polynomial_battery(5, 3), {}).to_json();
  EXPECT_EQ(a.dump(), b.dump());
}

}  // namespace
}  // namespace poda
