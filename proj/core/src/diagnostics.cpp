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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "poda/dividends.hpp"
#include "poda/error.hpp"
#include "poda/masking.hpp"

namespace poda {

std::vector<DiagnoseCase> polynomial_battery(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  std::uniform_real_distribution<double> point(-1.5, 1.5);
  std::uniform_int_distribution<int> dim(3, 5);
  std::bernoulli_distribution negate(0.5);

  std::vector<DiagnoseCase> out;
  out.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    const int d = dim(rng);
    PolynomialModel poly;
    for (int i = 0; i < d; ++i) {
      poly.monomials.push_back({negate(rng) ? -coef(rng) : coef(rng), {{i, 1}}});
    }
    std::uniform_int_distribution<int> n_inter(2, 4);
    const int k = n_inter(rng);
    for (int t = 0; t < k; ++t) {
      std::uniform_int_distribution<int> size(2, d);
      const int s = size(rng);
      std::vector<int> features(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) features[static_cast<std::size_t>(i)] = i;
      std::shuffle(features.begin(), features.end(), rng);
      Monomial m{negate(rng) ? -coef(rng) : coef(rng), {}};
      std::uniform_int_distribution<int> power(1, 2);
      for (int j = 0; j < s; ++j) m.exponents[features[static_cast<std::size_t>(j)]] = power(rng);
      poly.monomials.push_back(std::move(m));
    }

    DiagnoseCase dc{ModelSpec(std::move(poly), static_cast<std::size_t>(d)), {}, {}};
    for (int i = 0; i < d; ++i) {
      dc.x.values.push_back(point(rng));
      dc.beta.push_back(point(rng) / 1.5);
    }
    out.push_back(std::move(dc));
  }
  return out;
}

std::vector<DiagnoseCase> model_cases(const ModelSpec& model, const RowMatrix& instances,
                                      const BackgroundSet& bg) {
  if (model.polynomial() == nullptr) {
    throw NotPolynomial("diagnose needs a polynomial model, got " + model.kind_name());
  }
  if (bg.size() != 1) {
    throw BackgroundNotSingleRow("diagnose needs a single-row background, got " +
                                 std::to_string(bg.size()) + " rows");
  }
  if (bg.dimension() != model.input_dim() || instances.cols() != model.input_dim()) {
    throw DimensionError("instances/background do not match input_dim " +
                         std::to_string(model.input_dim()));
  }
  const auto beta = bg.rows.row(0);
  std::vector<DiagnoseCase> out;
  for (std::size_t r = 0; r < instances.rows(); ++r) {
    const auto row = instances.row(r);
    out.push_back({model, FeatureVector{{row.begin(), row.end()}, {}},
                   {beta.begin(), beta.end()}});
  }
  return out;
}

const PostulateRow* PostulateMatrix::find(Method method) const {
  for (const auto& row : rows) {
    if (row.method == method) return &row;
  }
  return nullptr;
}

nlohmann::json PostulateMatrix::to_json() const {
  nlohmann::json out_rows = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r{{"method", method_name(row.method)},
                     {"adaptation", row.adaptation}};
    if (!row.applicable) {
      r["precision"] = "n/a";
      r["federation"] = "n/a";
      r["zero_discrepancy"] = "n/a";
    } else {
      r["precision"] = row.precision;
      r["federation"] = row.federation;
      r["zero_discrepancy"] = row.zero_discrepancy;
      r["max_precision_residual"] = row.max_precision_residual;
      r["max_federation_residual"] = row.max_federation_residual;
      r["max_abs_discrepancy"] = row.max_abs_discrepancy;
    }
    out_rows.push_back(std::move(r));
  }
  nlohmann::json out{{"cases", cases},
                     {"tolerance", kPostulateTolerance},
                     {"additive_only", additive_only},
                     {"rows", std::move(out_rows)}};
  if (additive_only) {
    out["note"] = "no interaction terms in any case; federation is trivially satisfied";
  }
  return out;
}

std::string PostulateMatrix::to_text() const {
  auto mark = [](bool ok) { return ok ? "✓" : "✗"; };
  std::ostringstream os;
  os << "method         precision  federation  zero-discrepancy  adaptation\n";
  for (const auto& row : rows) {
    std::string name = method_name(row.method);
    name.resize(15, ' ');
    os << name;
    if (!row.applicable) {
      os << "n/a        n/a         n/a               ";
    } else {
      os << mark(row.precision) << "          " << mark(row.federation) << "           "
         << mark(row.zero_discrepancy) << "                 ";
    }
    os << mark(row.adaptation) << "\n";
  }
  os << "cases: " << cases << "\n";
  if (additive_only) os << "note: additive model, no interaction terms\n";
  return os.str();
}

namespace {

void fold(PostulateRow& row, const PostulateReport& report) {
  row.precision = row.precision && report.precision;
  row.federation = row.federation && report.federation;
  row.zero_discrepancy = row.zero_discrepancy && report.zero_discrepancy;
  row.max_precision_residual = std::max(row.max_precision_residual, report.precision_residual);
  row.max_federation_residual =
      std::max(row.max_federation_residual, report.federation_residual);
  row.max_abs_discrepancy = std::max(row.max_abs_discrepancy, std::abs(report.discrepancy));
}

}  // namespace

PostulateMatrix diagnose(const std::vector<DiagnoseCase>& cases,
                         const DiagnoseOptions& options) {
  PostulateMatrix matrix;
  matrix.cases = cases.size();
  matrix.additive_only = true;
  for (Method m : options.methods) {
    PostulateRow row;
    row.method = m;
    row.adaptation = method_adapts(m);
    row.applicable = m != Method::kLime;
    matrix.rows.push_back(row);
  }

  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& dc = cases[c];
    const auto* poly = dc.model.polynomial();
    if (poly == nullptr) {
      throw NotPolynomial("diagnose needs a polynomial model, got " + dc.model.kind_name());
    }
    if (!is_additive(*poly)) matrix.additive_only = false;
    const int d = static_cast<int>(dc.model.input_dim());
    const BackgroundSet bg = make_background(RowMatrix::from_rows({dc.beta}), "beta");
    const auto expansion = taylor_terms(dc.model, dc.x.span(), dc.beta);
    const auto table = build_table(dc.model, dc.x, bg, Sigma::full());

    for (auto& row : matrix.rows) {
      if (!row.applicable) continue;
      switch (row.method) {
        case Method::kOcc1:
          fold(row, check_postulates(occ1(table).scores, occ1_allocation(d), expansion, bg));
          break;
        case Method::kShap:
          fold(row,
               check_postulates(shap_exact(table).scores, shap_allocation(d), expansion, bg));
          break;
        case Method::kWeightedShap: {
          const auto families = beta_families(d);
          const Attribution attr = weighted_shap(table, families);
          const auto& family =
              families[attr.metadata["weight_family_index"].get<std::size_t>()];
          fold(row, check_postulates(attr.scores, semivalue_allocation(d, family), expansion,
                                     bg));
          break;
        }
        case Method::kTaylorPoda:
        case Method::kTaylorPodaCapped: {
          const int cap = row.method == Method::kTaylorPoda ? d : std::min(options.sigma, d);
          CandidateOptions opts = options.candidates;
          opts.dirichlet.seed ^= c;
          const auto candidates = generate_candidates(
              d, row.method == Method::kTaylorPoda ? Sigma::full() : Sigma::capped(cap), opts);
          const auto selection =
              row.method == Method::kTaylorPoda
                  ? optimize_xi(table, candidates)
                  : optimize_xi(table, candidates, cap,
                                [&](CoalitionKey s) { return table.value(s); });
          fold(row, check_postulates(selection.attribution.scores,
                                     taylorpoda_allocation(d, selection.xi, cap), expansion,
                                     bg));
          break;
        }
        case Method::kLime:
          break;
      }
    }
  }
  return matrix;
}

}  // namespace poda
