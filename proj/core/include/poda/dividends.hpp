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

#ifndef PODA_DIVIDENDS_HPP_
#define PODA_DIVIDENDS_HPP_

#include <nlohmann/json.hpp>

#include "poda/coalition.hpp"
#include "poda/coalition_values.hpp"
#include "poda/masking.hpp"

namespace poda {

// Harsanyi dividends of one instance over every coalition of cardinality <=
// the table's cap. H(empty) is stored as f_empty(x).
class DividendMap {
 public:
  DividendMap(Sigma sigma, CoalitionValues values)
      : sigma_(sigma), values_(std::move(values)) {}

  int dimension() const { return values_.dimension(); }
  Sigma sigma() const { return sigma_; }
  // Throws MissingCoalition outside the enumerable set.
  double value(CoalitionKey s) const { return values_.at(s); }
  const double* find(CoalitionKey s) const { return values_.find(s); }
  const std::vector<CoalitionKey>& keys() const { return values_.keys(); }
  const CoalitionValues& values() const { return values_; }

 private:
  Sigma sigma_;
  CoalitionValues values_;
};

// H(S) = sum over T subset of S of (-1)^(|S|-|T|) f_T(x), by direct
// inclusion-exclusion. Throws MissingCoalition if any subset is absent.
double harsanyi(const CoalitionValueTable& table, CoalitionKey s);

// Every dividend the table supports, by in-place Mobius inversion over the
// downward-closed part of the table (one pass per feature, O(d 2^d) when
// FULL).
DividendMap harsanyi_all(const CoalitionValueTable& table);

// |f(x) - (f_empty + sum over non-empty S of H(S))|. Requires FULL tables.
double mobius_identity_check(const CoalitionValueTable& table,
                             const DividendMap& dividends);

nlohmann::json dump_dividends(const DividendMap& dividends);

}  // namespace poda

#endif  // PODA_DIVIDENDS_HPP_
