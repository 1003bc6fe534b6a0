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

#ifndef PODA_ORACLE_HPP_
#define PODA_ORACLE_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace poda {

// A single input x of a model, with optional feature names.
struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> names;

  std::size_t size() const { return values.size(); }
  std::span<const double> span() const { return values; }
};

// Dense row-major matrix of feature rows.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RowMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const { return data_; }

  void append_row(std::span<const double> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Activation { kTanh, kLogistic, kRelu, kSoftplus, kIdentity };
enum class FinalTransform { kNone, kLogistic };
enum class OutputKind { kRegression, kProbability };

// Fully connected layer; weights are out x in, row-major.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> bias;
  Activation activation = Activation::kIdentity;
};

struct MlpModel {
  std::vector<DenseLayer> layers;
  FinalTransform final_transform = FinalTransform::kNone;
  // Softplus is log(1 + exp(k z)) / k; larger k approaches ReLU.
  double softplus_sharpness = 1.0;
};

struct Monomial {
  double coef = 0.0;
  // feature index -> positive exponent
  std::map<int, int> exponents;
};

struct PolynomialModel {
  std::vector<Monomial> monomials;
};

class ExternalProcess;

struct ExternalModel {
  std::string command;
  int protocol_version = 1;
  std::chrono::milliseconds timeout{30000};
  std::size_t max_batch_rows = 4096;
};

// A black-box predictor f: R^d -> R.
//
// Mlp and Polynomial models are immutable and safe to evaluate from any
// number of threads. External models share one child process among copies;
// requests to it are serialized.
class ModelSpec {
 public:
  using Variant = std::variant<MlpModel, PolynomialModel, ExternalModel>;

  ModelSpec(Variant model, std::size_t input_dim,
            OutputKind output_kind = OutputKind::kRegression);

  std::size_t input_dim() const { return input_dim_; }
  OutputKind output_kind() const { return output_kind_; }
  const Variant& variant() const { return model_; }

  const PolynomialModel* polynomial() const {
    return std::get_if<PolynomialModel>(&model_);
  }
  const MlpModel* mlp() const { return std::get_if<MlpModel>(&model_); }
  const ExternalModel* external() const {
    return std::get_if<ExternalModel>(&model_);
  }

  std::string kind_name() const;

 private:
  friend std::vector<double> evaluate_batch(const ModelSpec&, const RowMatrix&);

  Variant model_;
  std::size_t input_dim_;
  OutputKind output_kind_;
  std::shared_ptr<ExternalProcess> process_;
};

// Parses and validates the JSON model format. Throws ParseError,
// DimensionError or UnsupportedActivation.
ModelSpec parse_model(const nlohmann::json& doc);
ModelSpec load_model(const std::filesystem::path& path);
nlohmann::json model_to_json(const ModelSpec& model);

// Throws DimensionError, NonFiniteInput, NonFiniteOutput or OracleError.
double evaluate(const ModelSpec& model, std::span<const double> x);

// Row r of the result equals evaluate(model, xs.row(r)). Every row is
// validated before anything is evaluated; external models are queried in
// chunks of at most max_batch_rows.
std::vector<double> evaluate_batch(const ModelSpec& model, const RowMatrix& xs);
std::vector<double> evaluate_batch(const ModelSpec& model,
                                   const std::vector<FeatureVector>& xs);

double apply_activation(Activation activation, double z, double sharpness = 1.0);
Activation parse_activation(const std::string& name);
std::string activation_name(Activation activation);

}  // namespace poda

#endif  // PODA_ORACLE_HPP_
