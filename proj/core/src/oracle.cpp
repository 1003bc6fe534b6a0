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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "external_process.hpp"
#include "poda/error.hpp"

namespace poda {

RowMatrix RowMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  RowMatrix out;
  for (const auto& r : rows) out.append_row(r);
  return out;
}

void RowMatrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) {
    cols_ = values.size();
  } else if (values.size() != cols_) {
    throw DimensionError("row has " + std::to_string(values.size()) +
                         " values, expected " + std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

double apply_activation(Activation activation, double z, double sharpness) {
  switch (activation) {
    case Activation::kTanh:
      return std::tanh(z);
    case Activation::kLogistic:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::kRelu:
      return z > 0.0 ? z : 0.0;
    case Activation::kSoftplus: {
      // Stable log1p(exp(kz)) / k.
      const double kz = sharpness * z;
      const double sp = kz > 0.0 ? kz + std::log1p(std::exp(-kz))
                                 : std::log1p(std::exp(kz));
      return sp / sharpness;
    }
    case Activation::kIdentity:
      return z;
  }
  return z;
}

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "logistic" || name == "sigmoid") return Activation::kLogistic;
  if (name == "relu") return Activation::kRelu;
  if (name == "softplus") return Activation::kSoftplus;
  if (name == "identity" || name == "linear") return Activation::kIdentity;
  throw UnsupportedActivation("unsupported activation '" + name + "'");
}

std::string activation_name(Activation activation) {
  switch (activation) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kLogistic:
      return "logistic";
    case Activation::kRelu:
      return "relu";
    case Activation::kSoftplus:
      return "softplus";
    case Activation::kIdentity:
      return "identity";
  }
  return "identity";
}

ModelSpec::ModelSpec(Variant model, std::size_t input_dim, OutputKind output_kind)
    : model_(std::move(model)), input_dim_(input_dim), output_kind_(output_kind) {
  if (input_dim_ == 0) throw DimensionError("input_dim must be positive");
  if (const auto* ext = std::get_if<ExternalModel>(&model_)) {
    process_ = std::make_shared<ExternalProcess>(ext->command, ext->timeout);
  }
}

std::string ModelSpec::kind_name() const {
  if (mlp()) return "mlp";
  if (polynomial()) return "polynomial";
  return "external";
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double finite_number(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + " must be finite");
  return x;
}

std::size_t positive_int(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(what + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

MlpModel parse_mlp(const nlohmann::json& doc, std::size_t input_dim,
                   OutputKind& kind) {
  MlpModel mlp;
  const auto& layers = require(doc, "layers");
  if (!layers.is_array() || layers.empty()) {
    throw ParseError("'layers' must be a non-empty array");
  }
  std::size_t expected_in = input_dim;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const std::string where = "layer " + std::to_string(l);
    const auto& w = require(layer, "weights");
    const auto& b = require(layer, "bias");
    if (!w.is_array() || w.empty()) throw ParseError(where + ": empty weights");
    if (!b.is_array()) throw ParseError(where + ": bias must be an array");
    DenseLayer dense;
    dense.outputs = w.size();
    dense.inputs = w[0].is_array() ? w[0].size() : 0;
    if (dense.inputs != expected_in) {
      throw DimensionError(where + " expects " + std::to_string(dense.inputs) +
                           " inputs but receives " + std::to_string(expected_in));
    }
    for (const auto& row : w) {
      if (!row.is_array() || row.size() != dense.inputs) {
        throw DimensionError(where + ": ragged weight matrix");
      }
      for (const auto& v : row) dense.weights.push_back(finite_number(v, where + " weight"));
    }
    if (b.size() != dense.outputs) {
      throw DimensionError(where + ": bias has " + std::to_string(b.size()) +
                           " entries for " + std::to_string(dense.outputs) +
                           " outputs");
    }
    for (const auto& v : b) dense.bias.push_back(finite_number(v, where + " bias"));
    dense.activation = layer.contains("activation")
                           ? parse_activation(layer["activation"].get<std::string>())
                           : Activation::kIdentity;
    expected_in = dense.outputs;
    mlp.layers.push_back(std::move(dense));
  }
  if (expected_in != 1) {
    throw DimensionError("final layer must produce a scalar, produces " +
                         std::to_string(expected_in));
  }
  std::string transform = doc.value("final_transform", std::string());
  if (transform.empty()) {
    transform = kind == OutputKind::kProbability ? "logistic" : "none";
  }
  if (transform == "logistic") {
    mlp.final_transform = FinalTransform::kLogistic;
    kind = OutputKind::kProbability;
  } else if (transform == "none") {
    mlp.final_transform = FinalTransform::kNone;
  } else {
    throw ParseError("unknown final_transform '" + transform + "'");
  }
  if (doc.contains("softplus_sharpness")) {
    mlp.softplus_sharpness = finite_number(doc["softplus_sharpness"], "softplus_sharpness");
    if (mlp.softplus_sharpness <= 0.0) {
      throw ParseError("softplus_sharpness must be positive");
    }
  }
  return mlp;
}

PolynomialModel parse_polynomial(const nlohmann::json& doc, std::size_t input_dim) {
  PolynomialModel poly;
  const auto& monomials = require(doc, "monomials");
  if (!monomials.is_array()) throw ParseError("'monomials' must be an array");
  for (const auto& m : monomials) {
    Monomial mono;
    mono.coef = finite_number(require(m, "coef"), "monomial coef");
    const auto& exps = m.contains("exps") ? m["exps"] : nlohmann::json::object();
    if (!exps.is_object()) throw ParseError("'exps' must be an object");
    for (const auto& [key, value] : exps.items()) {
      int index = 0;
      try {
        std::size_t consumed = 0;
        index = std::stoi(key, &consumed);
        if (consumed != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("exponent key '" + key + "' is not a feature index");
      }
      if (index < 0 || static_cast<std::size_t>(index) >= input_dim) {
        throw DimensionError("exponent key " + key + " out of range for input_dim " +
                             std::to_string(input_dim));
      }
      mono.exponents[index] = static_cast<int>(positive_int(value, "exponent"));
    }
    poly.monomials.push_back(std::move(mono));
  }
  return poly;
}

OutputKind parse_output_kind(const nlohmann::json& doc) {
  const std::string kind = doc.value("output_kind", std::string("regression"));
  if (kind == "regression") return OutputKind::kRegression;
  if (kind == "probability") return OutputKind::kProbability;
  throw ParseError("unknown output_kind '" + kind + "'");
}

}  // namespace

ModelSpec parse_model(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("model document must be an object");
  const auto& type_field = require(doc, "type");
  if (!type_field.is_string()) throw ParseError("'type' must be a string");
  const std::string type = type_field.get<std::string>();
  OutputKind kind = parse_output_kind(doc);

  if (type == "mlp") {
    const std::size_t d = positive_int(require(doc, "input_dim"), "input_dim");
    MlpModel mlp = parse_mlp(doc, d, kind);
    return ModelSpec(std::move(mlp), d, kind);
  }
  if (type == "polynomial") {
    const std::size_t d = positive_int(require(doc, "input_dim"), "input_dim");
    return ModelSpec(parse_polynomial(doc, d), d, kind);
  }
  if (type == "external") {
    ExternalModel ext;
    const auto& command = require(doc, "command");
    if (!command.is_string() || command.get<std::string>().empty()) {
      throw ParseError("'command' must be a non-empty string");
    }
    ext.command = command.get<std::string>();
    ext.protocol_version = static_cast<int>(
        positive_int(doc.value("protocol_version", nlohmann::json(1)), "protocol_version"));
    if (ext.protocol_version != 1) {
      throw ParseError("unsupported protocol_version " +
                       std::to_string(ext.protocol_version));
    }
    if (doc.contains("timeout_ms")) {
      ext.timeout = std::chrono::milliseconds(
          positive_int(doc["timeout_ms"], "timeout_ms"));
    }
    if (doc.contains("max_batch_rows")) {
      ext.max_batch_rows = positive_int(doc["max_batch_rows"], "max_batch_rows");
    }
    const std::size_t d = positive_int(require(doc, "input_dim"), "input_dim");
    return ModelSpec(std::move(ext), d, kind);
  }
  throw ParseError("unknown model type '" + type + "'");
}

ModelSpec load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed model file " + path.string() + ": " + e.what());
  }
  return parse_model(doc);
}

nlohmann::json model_to_json(const ModelSpec& model) {
  nlohmann::json doc;
  doc["type"] = model.kind_name();
  doc["input_dim"] = model.input_dim();
  doc["output_kind"] =
      model.output_kind() == OutputKind::kProbability ? "probability" : "regression";
  if (const auto* mlp = model.mlp()) {
    auto& layers = doc["layers"] = nlohmann::json::array();
    for (const auto& layer : mlp->layers) {
      nlohmann::json w = nlohmann::json::array();
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        w.push_back(std::vector<double>(
            layer.weights.begin() + static_cast<std::ptrdiff_t>(o * layer.inputs),
            layer.weights.begin() + static_cast<std::ptrdiff_t>((o + 1) * layer.inputs)));
      }
      layers.push_back({{"weights", w},
                        {"bias", layer.bias},
                        {"activation", activation_name(layer.activation)}});
    }
    doc["final_transform"] =
        mlp->final_transform == FinalTransform::kLogistic ? "logistic" : "none";
    doc["softplus_sharpness"] = mlp->softplus_sharpness;
  } else if (const auto* poly = model.polynomial()) {
    auto& monos = doc["monomials"] = nlohmann::json::array();
    for (const auto& m : poly->monomials) {
      nlohmann::json exps = nlohmann::json::object();
      for (const auto& [i, k] : m.exponents) exps[std::to_string(i)] = k;
      monos.push_back({{"coef", m.coef}, {"exps", exps}});
    }
  } else if (const auto* ext = model.external()) {
    doc["command"] = ext->command;
    doc["protocol_version"] = ext->protocol_version;
    doc["timeout_ms"] = ext->timeout.count();
  }
  return doc;
}

namespace {

double eval_mlp(const MlpModel& mlp, std::span<const double> x,
                std::vector<double>& a, std::vector<double>& b) {
  a.assign(x.begin(), x.end());
  for (const auto& layer : mlp.layers) {
    b.resize(layer.outputs);
    const double* w = layer.weights.data();
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double z = layer.bias[o];
      const double* row = w + o * layer.inputs;
      for (std::size_t i = 0; i < layer.inputs; ++i) z += row[i] * a[i];
      b[o] = apply_activation(layer.activation, z, mlp.softplus_sharpness);
    }
    a.swap(b);
  }
  const double out = a[0];
  return mlp.final_transform == FinalTransform::kLogistic
             ? apply_activation(Activation::kLogistic, out)
             : out;
}

double eval_polynomial(const PolynomialModel& poly, std::span<const double> x) {
  double total = 0.0;
  for (const auto& m : poly.monomials) {
    double term = m.coef;
    for (const auto& [i, k] : m.exponents) {
      const double xi = x[static_cast<std::size_t>(i)];
      double p = 1.0;
      for (int e = 0; e < k; ++e) p *= xi;
      term *= p;
    }
    total += term;
  }
  return total;
}

void validate_row(std::span<const double> row, std::size_t d, std::size_t index) {
  if (row.size() != d) {
    throw DimensionError("input row " + std::to_string(index) + " has " +
                         std::to_string(row.size()) + " features, model expects " +
                         std::to_string(d));
  }
  for (double v : row) {
    if (!std::isfinite(v)) {
      throw NonFiniteInput("input row " + std::to_string(index) +
                           " contains a non-finite value");
    }
  }
}

void check_output(double y, const ModelSpec& model, std::size_t index) {
  if (!std::isfinite(y)) {
    throw NonFiniteOutput("model produced a non-finite output for row " +
                          std::to_string(index));
  }
  if (model.output_kind() == OutputKind::kProbability && (y < 0.0 || y > 1.0)) {
    static thread_local bool warned = false;
    if (!warned) {
      std::cerr << "warning: probability model produced " << y
                << " outside [0, 1]\n";
      warned = true;
    }
  }
}

}  // namespace

std::vector<double> evaluate_batch(const ModelSpec& model, const RowMatrix& xs) {
  std::vector<double> out;
  if (xs.rows() == 0) return out;
  for (std::size_t r = 0; r < xs.rows(); ++r) validate_row(xs.row(r), model.input_dim(), r);
  out.resize(xs.rows());

  if (const auto* mlp = model.mlp()) {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t r = 0; r < xs.rows(); ++r) out[r] = eval_mlp(*mlp, xs.row(r), a, b);
  } else if (const auto* poly = model.polynomial()) {
    for (std::size_t r = 0; r < xs.rows(); ++r) out[r] = eval_polynomial(*poly, xs.row(r));
  } else {
    const auto& ext = *model.external();
    for (std::size_t begin = 0; begin < xs.rows(); begin += ext.max_batch_rows) {
      const std::size_t end = std::min(xs.rows(), begin + ext.max_batch_rows);
      const auto chunk = model.process_->query(xs, begin, end);
      std::copy(chunk.begin(), chunk.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
    }
  }
  for (std::size_t r = 0; r < out.size(); ++r) check_output(out[r], model, r);
  return out;
}

std::vector<double> evaluate_batch(const ModelSpec& model,
                                   const std::vector<FeatureVector>& xs) {
  RowMatrix rows;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    validate_row(xs[r].values, model.input_dim(), r);
    rows.append_row(xs[r].values);
  }
  return evaluate_batch(model, rows);
}

double evaluate(const ModelSpec& model, std::span<const double> x) {
  validate_row(x, model.input_dim(), 0);
  if (const auto* mlp = model.mlp()) {
    std::vector<double> a;
    std::vector<double> b;
    const double y = eval_mlp(*mlp, x, a, b);
    check_output(y, model, 0);
    return y;
  }
  if (const auto* poly = model.polynomial()) {
    const double y = eval_polynomial(*poly, x);
    check_output(y, model, 0);
    return y;
  }
  RowMatrix single;
  single.append_row(x);
  return evaluate_batch(model, single)[0];
}

}  // namespace poda
