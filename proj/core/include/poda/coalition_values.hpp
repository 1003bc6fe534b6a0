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

#ifndef PODA_COALITION_VALUES_HPP_
#define PODA_COALITION_VALUES_HPP_

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "poda/coalition.hpp"

namespace poda {

// Map from coalitions to reals over a fixed key set. Complete lattices are
// stored densely (indexed by bitmask); partial key sets use a hash index.
// Keys are always exposed in canonical order.
class CoalitionValues {
 public:
  CoalitionValues() = default;

  // All 2^d coalitions, zero-initialized.
  static CoalitionValues dense(int d);
  // Exactly the given keys, zero-initialized. Duplicates are dropped.
  static CoalitionValues sparse(int d, std::vector<CoalitionKey> keys);

  int dimension() const { return d_; }
  bool is_dense() const { return dense_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<CoalitionKey>& keys() const { return keys_; }

  bool contains(CoalitionKey key) const { return find(key) != nullptr; }
  const double* find(CoalitionKey key) const;
  double* find(CoalitionKey key);

  // Throws MissingCoalition when the key is not stored.
  double at(CoalitionKey key) const;
  double& at(CoalitionKey key);

  // Values indexed by bitmask; only meaningful when is_dense().
  std::span<const double> by_mask() const { return values_; }
  std::span<double> by_mask() { return values_; }

  bool operator==(const CoalitionValues& other) const;

 private:
  std::size_t slot(CoalitionKey key) const;

  int d_ = 0;
  bool dense_ = false;
  std::vector<CoalitionKey> keys_;
  // Dense: indexed by mask. Sparse: aligned with keys_.
  std::vector<double> values_;
  std::unordered_map<CoalitionKey, std::size_t> index_;
};

}  // namespace poda

#endif  // PODA_COALITION_VALUES_HPP_
