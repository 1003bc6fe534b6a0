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

#include "poda/reference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "poda/error.hpp"

namespace poda {

CoalitionKey TaylorTerm::support() const {
  CoalitionKey key;
  for (const auto& [i, k] : exponents) key = key.with(i);
  return key;
}

double TaylorExpansion::total() const {
  double sum = base_value;
  for (const auto& t : terms) sum += t.value;
  return sum;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

double ipow(double base, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

TaylorExpansion taylor_terms(const PolynomialModel& poly, std::span<const double> x,
                             std::span<const double> beta) {
  if (x.size() != beta.size()) {
    throw DimensionError("x and beta differ in length");
  }
  const int d = static_cast<int>(x.size());
  // Shifted-basis multi-index -> coefficient.
  std::map<std::map<int, int>, double> shifted;
  for (const auto& mono : poly.monomials) {
    for (const auto& [i, k] : mono.exponents) {
      if (i >= d) throw DimensionError("monomial references feature " + std::to_string(i));
    }
    // Expand prod_i x_i^k_i with x_i = beta_i + (x_i - beta_i), one factor at
    // a time.
    std::map<std::map<int, int>, double> partial{{{}, mono.coef}};
    for (const auto& [i, k] : mono.exponents) {
      std::map<std::map<int, int>, double> next;
      const double b = beta[static_cast<std::size_t>(i)];
      for (const auto& [index, coef] : partial) {
        for (int j = 0; j <= k; ++j) {
          auto grown = index;
          if (j > 0) grown[i] = j;
          next[grown] += coef * binomial(k, j) * ipow(b, k - j);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [index, coef] : partial) shifted[index] += coef;
  }

  TaylorExpansion out;
  out.dimension = d;
  out.beta.assign(beta.begin(), beta.end());
  for (const auto& [index, coef] : shifted) {
    if (index.empty()) {
      out.base_value += coef;
      continue;
    }
    if (coef == 0.0) continue;
    TaylorTerm term;
    term.exponents = index;
    term.coefficient = coef;
    term.value = coef;
    for (const auto& [i, j] : index) {
      term.value *= ipow(x[static_cast<std::size_t>(i)] - beta[static_cast<std::size_t>(i)], j);
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

TaylorExpansion taylor_terms(const ModelSpec& model, std::span<const double> x,
                             std::span<const double> beta) {
  const auto* poly = model.polynomial();
  if (poly == nullptr) {
    throw NotPolynomial("analytic Taylor terms need a polynomial model, got " +
                        model.kind_name());
  }
  if (x.size() != model.input_dim() || beta.size() != model.input_dim()) {
    throw DimensionError("x/beta length must equal input_dim " +
                         std::to_string(model.input_dim()));
  }
  return taylor_terms(*poly, x, beta);
}

double independent_sum(std::span<const TaylorTerm> terms, int i) {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.exponents.size() == 1 && t.exponents.begin()->first == i) sum += t.value;
  }
  return sum;
}

double interaction_sum(std::span<const TaylorTerm> terms, CoalitionKey s) {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.support() == s) sum += t.value;
  }
  return sum;
}

bool is_additive(const PolynomialModel& poly) {
  return std::all_of(poly.monomials.begin(), poly.monomials.end(),
                     [](const Monomial& m) { return m.exponents.size() <= 1; });
}

GenericAllocation::GenericAllocation(int d)
    : d_(d), tau_(static_cast<std::size_t>(d * d), 0.0) {}

double GenericAllocation::zeta(int i, CoalitionKey s) const {
  const auto it = zeta_.find({i, s});
  return it == zeta_.end() ? 0.0 : it->second;
}

namespace {

GenericAllocation identity_tau(int d) {
  GenericAllocation out(d);
  for (int i = 0; i < d; ++i) out.set_tau(i, i, 1.0);
  return out;
}

template <typename Fn>
void for_each_interaction(int d, Fn&& fn) {
  for (CoalitionKey s : coalitions_up_to(d, d)) {
    if (s.size() < 2) continue;
    for (int i : s.members()) fn(i, s);
  }
}

}  // namespace

GenericAllocation occ1_allocation(int d) {
  GenericAllocation out = identity_tau(d);
  for_each_interaction(d, [&](int i, CoalitionKey s) { out.set_zeta(i, s, 1.0); });
  return out;
}

GenericAllocation shap_allocation(int d) {
  GenericAllocation out = identity_tau(d);
  for_each_interaction(d, [&](int i, CoalitionKey s) {
    out.set_zeta(i, s, 1.0 / s.size());
  });
  return out;
}

GenericAllocation semivalue_allocation(int d, const WeightFamily& family) {
  if (family.weights.size() != static_cast<std::size_t>(d)) {
    throw DimensionError("weight family '" + family.id + "' does not match d=" +
                         std::to_string(d));
  }
  GenericAllocation out(d);
  double tau = 0.0;
  for (int s = 0; s < d; ++s) tau += binomial(d - 1, s) * family.weights[static_cast<std::size_t>(s)];
  for (int i = 0; i < d; ++i) out.set_tau(i, i, tau);
  for_each_interaction(d, [&](int i, CoalitionKey t) {
    const int size = t.size();
    double z = 0.0;
    for (int s = size - 1; s < d; ++s) {
      z += binomial(d - size, s - size + 1) * family.weights[static_cast<std::size_t>(s)];
    }
    out.set_zeta(i, t, z);
  });
  return out;
}

GenericAllocation taylorpoda_allocation(int d, const XiAllocation& xi, int cap) {
  GenericAllocation out = identity_tau(d);
  for_each_interaction(d, [&](int i, CoalitionKey s) {
    out.set_zeta(i, s, s.size() <= cap ? xi.weight(i, s) : 1.0);
  });
  return out;
}

PostulateReport check_postulates(std::span<const double> scores,
                                 const GenericAllocation& allocation,
                                 const TaylorExpansion& expansion,
                                 const BackgroundSet& bg) {
  const int d = expansion.dimension;
  if (bg.size() != 1) {
    throw BackgroundNotSingleRow("postulate checks need a single-row background, got " +
                                 std::to_string(bg.size()) + " rows");
  }
  const auto row = bg.rows.row(0);
  if (!std::equal(row.begin(), row.end(), expansion.beta.begin(), expansion.beta.end())) {
    throw BackgroundNotSingleRow("background row differs from the expansion point");
  }
  if (scores.size() != static_cast<std::size_t>(d) || allocation.dimension() != d) {
    throw DimensionError("attribution, allocation and expansion dimensions differ");
  }

  std::vector<double> lambda(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) lambda[static_cast<std::size_t>(i)] = independent_sum(expansion.terms, i);
  std::set<CoalitionKey> supports;
  for (const auto& t : expansion.terms) {
    if (t.is_interaction()) supports.insert(t.support());
  }
  std::map<CoalitionKey, double> mu;
  for (CoalitionKey s : supports) mu[s] = interaction_sum(expansion.terms, s);

  PostulateReport report;
  double sum_a = 0.0;
  for (int i = 0; i < d; ++i) {
    const double a = scores[static_cast<std::size_t>(i)];
    sum_a += a;
    double shared = 0.0;
    double outside = 0.0;
    for (const auto& [s, value] : mu) {
      const double part = allocation.zeta(i, s) * value;
      shared += part;
      if (!s.contains(i)) outside = std::max(outside, std::abs(part));
    }
    double own = 0.0;
    for (int j = 0; j < d; ++j) own += allocation.tau(i, j) * lambda[static_cast<std::size_t>(j)];

    report.precision_residual = std::max(
        report.precision_residual, std::abs(a - shared - lambda[static_cast<std::size_t>(i)]));
    report.federation_residual =
        std::max({report.federation_residual, std::abs(own + shared - a), outside});
  }
  report.discrepancy = expansion.base_value + sum_a - expansion.total();
  report.precision = report.precision_residual <= kPostulateTolerance;
  report.federation = report.federation_residual <= kPostulateTolerance;
  report.zero_discrepancy = std::abs(report.discrepancy) <= kPostulateTolerance;
  return report;
}

}  // namespace poda
