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

#ifndef PODA_TESTS_TEST_SUPPORT_HPP_
#define PODA_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "poda/allocation.hpp"
#include "poda/masking.hpp"
#include "poda/oracle.hpp"
#include "poda/xi_allocation.hpp"

namespace poda::testing {

inline ModelSpec polynomial(int d, std::vector<Monomial> monomials) {
  return ModelSpec(PolynomialModel{std::move(monomials)}, static_cast<std::size_t>(d));
}

inline BackgroundSet background(const std::vector<std::vector<double>>& rows) {
  return make_background(RowMatrix::from_rows(rows), "test");
}

inline FeatureVector point(std::vector<double> values) { return {std::move(values), {}}; }

inline CoalitionValueTable table_for(const ModelSpec& model, std::vector<double> x,
                                     const std::vector<std::vector<double>>& bg,
                                     Sigma sigma = Sigma::full()) {
  return build_table(model, point(std::move(x)), background(bg), sigma);
}

inline ModelSpec random_mlp(int d, std::mt19937_64& rng,
                            Activation hidden = Activation::kTanh) {
  std::normal_distribution<double> w(0.0, 0.8);
  const std::size_t h = 6;
  DenseLayer first{static_cast<std::size_t>(d), h, {}, {}, hidden};
  for (std::size_t k = 0; k < h * static_cast<std::size_t>(d); ++k) first.weights.push_back(w(rng));
  for (std::size_t k = 0; k < h; ++k) first.bias.push_back(w(rng));
  DenseLayer second{h, 1, {}, {w(rng)}, Activation::kIdentity};
  for (std::size_t k = 0; k < h; ++k) second.weights.push_back(w(rng));
  MlpModel mlp;
  mlp.layers = {first, second};
  return ModelSpec(mlp, static_cast<std::size_t>(d));
}

// Linear terms plus a few products of random support.
inline ModelSpec random_polynomial(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::vector<Monomial> monos;
  for (int i = 0; i < d; ++i) monos.push_back({c(rng), {{i, 1}}});
  std::uniform_int_distribution<int> feature(0, d - 1);
  std::uniform_int_distribution<int> power(1, 2);
  for (int t = 0; t < d; ++t) {
    Monomial m{c(rng), {}};
    const int size = std::min(d, 2 + t % 3);
    while (static_cast<int>(m.exponents.size()) < size) m.exponents[feature(rng)] = power(rng);
    monos.push_back(std::move(m));
  }
  return polynomial(d, std::move(monos));
}

inline std::vector<double> random_point(int d, std::mt19937_64& rng, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> out(static_cast<std::size_t>(d));
  for (double& v : out) v = u(rng);
  return out;
}

inline std::vector<std::vector<double>> random_rows(int d, int n, std::mt19937_64& rng) {
  std::vector<std::vector<double>> out;
  for (int r = 0; r < n; ++r) out.push_back(random_point(d, rng, 1.0));
  return out;
}

// Mean marginal contribution over all d! orderings.
inline std::vector<double> permutation_shapley(const CoalitionValueTable& table) {
  const int d = table.dimension();
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  double count = 0.0;
  do {
    CoalitionKey s;
    for (int i : order) {
      const double before = table.value(s);
      s = s.with(i);
      out[static_cast<std::size_t>(i)] += table.value(s) - before;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : out) v /= count;
  return out;
}

inline XiAllocation random_xi(int d, int cap, std::uint64_t seed) {
  CandidateOptions opts;
  opts.n_candidates = 1;
  opts.include_uniform = false;
  opts.dirichlet.seed = seed;
  return generate_candidates(d, cap >= d ? Sigma::full() : Sigma::capped(cap), opts).front();
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace poda::testing

#endif  // PODA_TESTS_TEST_SUPPORT_HPP_
