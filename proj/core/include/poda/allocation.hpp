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

#ifndef PODA_ALLOCATION_HPP_
#define PODA_ALLOCATION_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "poda/attribution.hpp"
#include "poda/masking.hpp"
#include "poda/xi_allocation.hpp"

namespace poda {

struct DirichletParams {
  // One concentration per component, or a single value broadcast to all.
  std::vector<double> alpha{1.0};
  std::uint64_t seed = 0;
};

// Draws a point of the (k-1)-simplex by normalizing k independent
// Gamma(alpha_i, 1) variates. Throws InvalidAlpha for non-positive or
// non-finite alpha, or a length that is neither 1 nor k.
std::vector<double> sample_simplex(std::span<const double> alpha, std::size_t k,
                                   std::mt19937_64& rng);

struct CandidateOptions {
  std::size_t n_candidates = 16;
  // Candidate 0 becomes the uniform (Shapley) allocation.
  bool include_uniform = true;
  DirichletParams dirichlet;
};

// Random-search candidates: each assigns an independent Dirichlet draw to
// every coalition with 1 < |S| <= sigma's cap, visited in canonical order.
std::vector<XiAllocation> generate_candidates(int d, Sigma sigma,
                                              const CandidateOptions& options);

struct XiSelection {
  XiAllocation xi;
  Attribution attribution;
  std::vector<double> candidate_aups;
  std::size_t selected = 0;
};

// Scores every candidate with TaylorPODA and keeps the lowest AUP; ties go to
// the lowest index. Requires a FULL table.
XiSelection optimize_xi(const CoalitionValueTable& table,
                        const std::vector<XiAllocation>& candidates);

// Capped variant: candidates are scored with taylorpoda_capped at sigma and
// AUP reads top-m coalitions through lookup.
XiSelection optimize_xi(const CoalitionValueTable& table,
                        const std::vector<XiAllocation>& candidates, int sigma,
                        const CoalitionLookup& lookup);

}  // namespace poda

#endif  // PODA_ALLOCATION_HPP_
