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

#ifndef PODA_XI_ALLOCATION_HPP_
#define PODA_XI_ALLOCATION_HPP_

#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/coalition.hpp"

namespace poda {

// Tolerance on sum_{i in S} xi_{i,S} = 1.
inline constexpr double kSimplexTolerance = 1e-12;

// Per-coalition shares xi_{i,S} of the interaction dividend H(S) kept by each
// member i of S, for every |S| > 1 up to a cardinality cap. Entry vectors list
// the members of S in ascending feature order.
class XiAllocation {
 public:
  XiAllocation() = default;
  explicit XiAllocation(int d) : d_(d) {}

  // xi_{i,S} = 1/|S| for every 2 <= |S| <= max_size.
  static XiAllocation uniform(int d, int max_size);
  // xi_{i,S} = value everywhere. Not a simplex unless value == 1/|S|; only
  // useful for diagnostics such as the OCC-1 reduction (value = 1).
  static XiAllocation constant(int d, int max_size, double value);

  int dimension() const { return d_; }
  std::size_t size() const { return entries_.size(); }
  // Largest coalition size present.
  int max_size() const;

  // Throws InvalidAllocation if |S| < 2, the length differs from |S|, or a
  // weight is non-finite.
  void set(CoalitionKey s, std::vector<double> weights);

  const std::vector<double>* find(CoalitionKey s) const;
  // Throws InvalidAllocation when S has no entry.
  double weight(int feature, CoalitionKey s) const;

  // True iff every entry lies in [0,1] and sums to 1 within kSimplexTolerance.
  bool is_simplex() const;
  // Throws InvalidAllocation naming the first violating coalition.
  void require_simplex() const;
  // Throws InvalidAllocation unless every 2 <= |S| <= max_size has an entry.
  void require_coverage(int max_size) const;

  const std::map<CoalitionKey, std::vector<double>>& entries() const {
    return entries_;
  }

  // {"0b0011": [xi_0, xi_1], ...}
  nlohmann::json to_json() const;

  bool operator==(const XiAllocation&) const = default;

 private:
  int d_ = 0;
  std::map<CoalitionKey, std::vector<double>> entries_;
};

}  // namespace poda

#endif  // PODA_XI_ALLOCATION_HPP_
