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

#ifndef PODA_REFERENCE_HPP_
#define PODA_REFERENCE_HPP_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/attribution.hpp"
#include "poda/coalition.hpp"
#include "poda/masking.hpp"
#include "poda/oracle.hpp"
#include "poda/xi_allocation.hpp"

namespace poda {

// One term coef * prod_i (x_i - beta_i)^{k_i} of a polynomial rewritten
// around beta. A single-feature support is an independent effect; two or
// more features make it an interaction effect.
struct TaylorTerm {
  std::map<int, int> exponents;
  double coefficient = 0.0;
  double value = 0.0;

  CoalitionKey support() const;
  bool is_independent() const { return exponents.size() == 1; }
  bool is_interaction() const { return exponents.size() >= 2; }
};

// Exact finite expansion: f(x) = base_value + sum of term values.
struct TaylorExpansion {
  int dimension = 0;
  std::vector<double> beta;
  double base_value = 0.0;
  std::vector<TaylorTerm> terms;

  double total() const;
};

// Throws NotPolynomial for non-polynomial models, DimensionError on shape
// mismatch.
TaylorExpansion taylor_terms(const ModelSpec& model, std::span<const double> x,
                             std::span<const double> beta);
TaylorExpansion taylor_terms(const PolynomialModel& poly, std::span<const double> x,
                             std::span<const double> beta);

// Sum of term values whose support is exactly {i}.
double independent_sum(std::span<const TaylorTerm> terms, int i);
// Sum of term values whose support is exactly S.
double interaction_sum(std::span<const TaylorTerm> terms, CoalitionKey s);

// Every polynomial term has at most one feature.
bool is_additive(const PolynomialModel& poly);

// Linear form a method realizes over Taylor terms:
//   a_i = sum_j tau_{i,j} lambda_j + sum_S zeta_{i,S} mu_S
// with lambda_j the independent sum of feature j and mu_S the interaction
// sum of S. Unlisted zeta entries are zero.
class GenericAllocation {
 public:
  explicit GenericAllocation(int d);

  int dimension() const { return d_; }
  double tau(int i, int j) const { return tau_[static_cast<std::size_t>(i * d_ + j)]; }
  void set_tau(int i, int j, double v) { tau_[static_cast<std::size_t>(i * d_ + j)] = v; }
  double zeta(int i, CoalitionKey s) const;
  void set_zeta(int i, CoalitionKey s, double v) { zeta_[{i, s}] = v; }
  const std::map<std::pair<int, CoalitionKey>, double>& zeta_entries() const {
    return zeta_;
  }

 private:
  int d_;
  std::vector<double> tau_;
  std::map<std::pair<int, CoalitionKey>, double> zeta_;
};

GenericAllocation occ1_allocation(int d);
GenericAllocation shap_allocation(int d);
// tau_{i,i} = sum_s C(d-1,s) w_s; zeta_{i,T} = sum_s C(d-|T|, s-|T|+1) w_s.
GenericAllocation semivalue_allocation(int d, const WeightFamily& family);
// zeta_{i,S} = xi_{i,S} for |S| <= cap, 1 above it.
GenericAllocation taylorpoda_allocation(int d, const XiAllocation& xi, int cap);

inline constexpr double kPostulateTolerance = 1e-9;

struct PostulateReport {
  bool precision = false;
  bool federation = false;
  bool zero_discrepancy = false;
  double precision_residual = 0.0;
  double federation_residual = 0.0;
  double discrepancy = 0.0;
};

// Checks an attribution of a polynomial model against its analytic terms.
// The background must be the single expansion point beta, otherwise
// BackgroundNotSingleRow.
PostulateReport check_postulates(std::span<const double> scores,
                                 const GenericAllocation& allocation,
                                 const TaylorExpansion& expansion,
                                 const BackgroundSet& bg);

}  // namespace poda

#endif  // PODA_REFERENCE_HPP_
