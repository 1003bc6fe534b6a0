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

#include "poda/oracle.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "poda/error.hpp"
#include "test_support.hpp"

namespace poda {
namespace {

using nlohmann::json;

ModelSpec stub(const std::string& mode, int timeout_ms = 5000, int max_rows = 0,
               const std::string& extra = "") {
  json doc{{"type", "external"},
           {"input_dim", 3},
           {"command", std::string(PODA_STUB_ORACLE) + " " + mode + " " + extra},
           {"timeout_ms", timeout_ms}};
  if (max_rows > 0) doc["max_batch_rows"] = max_rows;
  return parse_model(doc);
}

TEST(LoadModelTest, MlpShapes) {
  const auto model = parse_model(json::parse(R"({
    "type": "mlp", "input_dim": 2,
    "layers": [
      {"weights": [[1,0],[0,1],[1,1]], "bias": [0,0,0], "activation": "tanh"},
      {"weights": [[1,1,1]], "bias": [0], "activation": "identity"}]})"));
  EXPECT_EQ(model.input_dim(), 2u);
  ASSERT_NE(model.mlp(), nullptr);
  EXPECT_EQ(model.mlp()->layers.size(), 2u);
}

TEST(LoadModelTest, PolynomialEncodesProduct) {
  const auto model = parse_model(json::parse(
      R"({"type":"polynomial","input_dim":2,"monomials":[{"coef":1,"exps":{"0":1,"1":1}}]})"));
  ASSERT_NE(model.polynomial(), nullptr);
  const std::vector<double> x{2.0, 3.0};
  EXPECT_DOUBLE_EQ(evaluate(model, x), 6.0);
}

TEST(LoadModelTest, ChainMismatchIsDimensionError) {
  EXPECT_THROW(parse_model(json::parse(R"({
    "type": "mlp", "input_dim": 2,
    "layers": [
      {"weights": [[1,0],[0,1],[1,1]], "bias": [0,0,0], "activation": "tanh"},
      {"weights": [[1,1,1,1]], "bias": [0], "activation": "identity"}]})")),
               DimensionError);
}

TEST(LoadModelTest, Rejections) {
  EXPECT_THROW(parse_model(json::parse(R"({"type":"mlp","input_dim":1,"layers":[
      {"weights":[[1]],"bias":[0],"activation":"gelu"}]})")),
               UnsupportedActivation);
  EXPECT_THROW(parse_model(json::parse(R"({"type":"tree"})")), ParseError);
  EXPECT_THROW(parse_model(json::parse(
                   R"({"type":"polynomial","input_dim":2,"monomials":[{"coef":1,"exps":{"2":1}}]})")),
               DimensionError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), ParseError);
  EXPECT_THROW(parse_model(json::parse(R"({"type":"external","input_dim":2,"command":""})")),
               ParseError);
}

TEST(EvaluateTest, ZeroWeightLogisticIsHalf) {
  MlpModel mlp;
  mlp.layers = {{2, 1, {0.0, 0.0}, {0.0}, Activation::kIdentity}};
  mlp.final_transform = FinalTransform::kLogistic;
  const ModelSpec model(mlp, 2, OutputKind::kProbability);
  const std::vector<double> x{4.0, -7.0};
  EXPECT_DOUBLE_EQ(evaluate(model, x), 0.5);
}

TEST(EvaluateTest, LinearLayer) {
  MlpModel mlp;
  mlp.layers = {{2, 1, {1.0, 1.0}, {0.0}, Activation::kIdentity}};
  const ModelSpec model(mlp, 2);
  const std::vector<double> x{2.0, 3.0};
  EXPECT_DOUBLE_EQ(evaluate(model, x), 5.0);
}

TEST(EvaluateTest, RejectsBadInputs) {
  const auto model = testing::polynomial(2, {{1.0, {{0, 1}, {1, 1}}}});
  const std::vector<double> short_x{1.0};
  EXPECT_THROW(evaluate(model, short_x), DimensionError);
  const std::vector<double> nan_x{1.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(evaluate(model, nan_x), NonFiniteInput);
}

TEST(EvaluateTest, NonFiniteOutputRejected) {
  const auto model = testing::polynomial(1, {{1e300, {{0, 2}}}});
  const std::vector<double> x{1e10};
  EXPECT_THROW(evaluate(model, x), NonFiniteOutput);
}

TEST(EvaluateBatchTest, MatchesSingleEvaluation) {
  std::mt19937_64 rng(3);
  const auto model = testing::random_mlp(4, rng);
  const auto rows = testing::random_rows(4, 25, rng);
  const auto out = evaluate_batch(model, RowMatrix::from_rows(rows));
  ASSERT_EQ(out.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) EXPECT_EQ(out[r], evaluate(model, rows[r]));
}

TEST(EvaluateBatchTest, EmptyAndNanRow) {
  const auto model = testing::polynomial(2, {{1.0, {{0, 1}}}});
  EXPECT_TRUE(evaluate_batch(model, RowMatrix(0, 2)).empty());
  const auto bad = RowMatrix::from_rows({{1.0, 2.0}, {std::nan(""), 0.0}});
  EXPECT_THROW(evaluate_batch(model, bad), NonFiniteInput);
}

TEST(ActivationTest, SoftplusApproachesReluWithSharpness) {
  double previous = std::numeric_limits<double>::infinity();
  for (double k : {1.0, 4.0, 16.0, 64.0}) {
    double gap = 0.0;
    for (double z : {-2.0, -0.3, 0.0, 0.4, 2.5}) {
      gap = std::max(gap, std::abs(apply_activation(Activation::kSoftplus, z, k) -
                                   apply_activation(Activation::kRelu, z)));
    }
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_EQ(parse_activation("tanh"), Activation::kTanh);
  EXPECT_EQ(activation_name(Activation::kSoftplus), "softplus");
}

TEST(ModelJsonTest, RoundTrip) {
  std::mt19937_64 rng(5);
  const auto model = testing::random_mlp(3, rng, Activation::kSoftplus);
  const auto again = parse_model(model_to_json(model));
  const std::vector<double> x{0.1, -0.4, 0.9};
  EXPECT_EQ(evaluate(model, x), evaluate(again, x));
}

TEST(ExternalOracleTest, AnswersBatches) {
  const auto model = stub("ok");
  const auto out = evaluate_batch(model, RowMatrix::from_rows({{1, 2, 3}, {0, 0, 1}}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[0], 1 + 4 + 9 + 2);
  EXPECT_DOUBLE_EQ(out[1], 3.0);
  const std::vector<double> x{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(evaluate(model, x), 7.0);
}

TEST(ExternalOracleTest, ChunksLargeBatches) {
  // The stub exits when a request exceeds 10 rows.
  const auto model = stub("ok", 5000, 10, "10");
  RowMatrix rows(35, 3);
  const auto out = evaluate_batch(model, rows);
  EXPECT_EQ(out.size(), 35u);
}

TEST(ExternalOracleTest, ProtocolViolationsAreOracleErrors) {
  const auto rows = RowMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_THROW(evaluate_batch(stub("bad-id"), rows), OracleError);
  EXPECT_THROW(evaluate_batch(stub("short"), rows), OracleError);
  EXPECT_THROW(evaluate_batch(stub("garbage"), rows), OracleError);
  EXPECT_THROW(evaluate_batch(stub("exit"), rows), OracleError);
}

TEST(ExternalOracleTest, Timeout) {
  const auto rows = RowMatrix::from_rows({{1, 2, 3}});
  EXPECT_THROW(evaluate_batch(stub("hang", 200), rows), OracleError);
}

TEST(ExternalOracleTest, MissingCommand) {
  json doc{{"type", "external"}, {"input_dim", 1}, {"command", "/nonexistent/oracle"},
           {"timeout_ms", 2000}};
  const auto model = parse_model(doc);
  const std::vector<double> x{1.0};
  EXPECT_THROW(evaluate(model, x), OracleError);
}

}  // namespace
}  // namespace poda
