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

#ifndef PODA_DIAGNOSTICS_HPP_
#define PODA_DIAGNOSTICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/allocation.hpp"
#include "poda/attribution.hpp"
#include "poda/oracle.hpp"
#include "poda/reference.hpp"

namespace poda {

// One polynomial model explained at x with the single background row beta.
struct DiagnoseCase {
  ModelSpec model;
  FeatureVector x;
  std::vector<double> beta;
};

// Random polynomials with d in [3, 5], a linear term per feature and a few
// interaction monomials, evaluated at random (x, beta).
std::vector<DiagnoseCase> polynomial_battery(std::size_t n, std::uint64_t seed);

// Cases for a user-supplied polynomial: one per instance row. Throws
// NotPolynomial, or BackgroundNotSingleRow unless bg has exactly one row.
std::vector<DiagnoseCase> model_cases(const ModelSpec& model, const RowMatrix& instances,
                                      const BackgroundSet& bg);

struct DiagnoseOptions {
  std::vector<Method> methods{Method::kOcc1, Method::kShap, Method::kWeightedShap,
                              Method::kTaylorPoda, Method::kLime};
  CandidateOptions candidates;
  // Cap used by taylorpoda-c rows.
  int sigma = 2;
};

// A postulate holds for a method when it holds on every case.
struct PostulateRow {
  Method method = Method::kShap;
  bool applicable = true;
  bool precision = true;
  bool federation = true;
  bool zero_discrepancy = true;
  bool adaptation = false;
  double max_precision_residual = 0.0;
  double max_federation_residual = 0.0;
  double max_abs_discrepancy = 0.0;
};

struct PostulateMatrix {
  std::vector<PostulateRow> rows;
  std::size_t cases = 0;
  // Every case was free of interaction terms.
  bool additive_only = false;

  const PostulateRow* find(Method method) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

PostulateMatrix diagnose(const std::vector<DiagnoseCase>& cases,
                         const DiagnoseOptions& options);

}  // namespace poda

#endif  // PODA_DIAGNOSTICS_HPP_
