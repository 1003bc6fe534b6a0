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

#include "poda/dividends.hpp"

#include <cmath>

#include "poda/error.hpp"

namespace poda {

double harsanyi(const CoalitionValueTable& table, CoalitionKey s) {
  const int size = s.size();
  double total = 0.0;
  for_each_subset(s, [&](CoalitionKey t) {
    const double* v = table.find(t);
    if (v == nullptr) {
      throw MissingCoalition("dividend of " + s.to_string(table.dimension()) +
                             " needs " + t.to_string(table.dimension()) +
                             ", absent from a sigma=" + table.sigma().to_string() +
                             " table");
    }
    total += ((size - t.size()) % 2 == 0) ? *v : -*v;
  });
  return total;
}

DividendMap harsanyi_all(const CoalitionValueTable& table) {
  const int d = table.dimension();
  if (table.is_full()) {
    CoalitionValues out = CoalitionValues::dense(d);
    auto h = out.by_mask();
    const auto f = table.values().by_mask();
    std::copy(f.begin(), f.end(), h.begin());
    for (int i = 0; i < d; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t m = 0; m < h.size(); ++m) {
        if (m & bit) h[m] -= h[m ^ bit];
      }
    }
    return DividendMap(table.sigma(), std::move(out));
  }

  const int cap = table.sigma().cap(d);
  std::vector<CoalitionKey> keys = coalitions_up_to(d, cap);
  CoalitionValues out = CoalitionValues::sparse(d, keys);
  for (CoalitionKey k : out.keys()) out.at(k) = table.value(k);
  // The key set is downward closed, so each pass only reads keys it holds.
  for (int i = 0; i < d; ++i) {
    for (CoalitionKey k : out.keys()) {
      if (k.contains(i)) out.at(k) -= out.at(k.without(i));
    }
  }
  return DividendMap(table.sigma(), std::move(out));
}

double mobius_identity_check(const CoalitionValueTable& table,
                             const DividendMap& dividends) {
  if (!table.is_full() || !dividends.sigma().is_full()) {
    throw MissingCoalition("Mobius reconstruction needs a FULL table");
  }
  double total = 0.0;
  for (CoalitionKey k : dividends.keys()) total += dividends.value(k);
  // total already includes H(empty) = f_empty(x).
  return std::abs(table.full_value() - total);
}

nlohmann::json dump_dividends(const DividendMap& dividends) {
  nlohmann::json entries = nlohmann::json::array();
  const int d = dividends.dimension();
  for (CoalitionKey k : dividends.keys()) {
    entries.push_back({{"coalition", k.to_string(d)}, {"value", dividends.value(k)}});
  }
  return entries;
}

}  // namespace poda
