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

#ifndef PODA_MASKING_HPP_
#define PODA_MASKING_HPP_

#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/coalition.hpp"
#include "poda/coalition_values.hpp"
#include "poda/oracle.hpp"

namespace poda {

// Label written into reports so readers know how absent features were
// marginalized.
inline constexpr const char* kMaskingEstimator =
    "marginal (interventional splice over background rows)";

// Reference rows used to integrate out absent features.
struct BackgroundSet {
  RowMatrix rows;
  std::string source;

  std::size_t size() const { return rows.rows(); }
  std::size_t dimension() const { return rows.cols(); }
};

// Validates B >= 1, consistent dimension and finite entries.
BackgroundSet make_background(RowMatrix rows, std::string source);

// Enumeration level of a coalition table: every coalition, or only those of
// cardinality <= sigma (plus G and every G \ {i}).
class Sigma {
 public:
  static constexpr Sigma full() { return Sigma(-1); }
  static constexpr Sigma capped(int sigma) { return Sigma(sigma); }

  constexpr bool is_full() const { return value_ < 0; }
  constexpr int value() const { return value_; }
  // Largest coalition size covered for a d-feature table.
  constexpr int cap(int d) const { return is_full() ? d : value_; }

  std::string to_string() const {
    return is_full() ? std::string("FULL") : std::to_string(value_);
  }

  constexpr bool operator==(const Sigma&) const = default;

 private:
  constexpr explicit Sigma(int v) : value_(v) {}
  int value_;
};

// Writes x on the members of S and background values elsewhere.
void splice(std::span<const double> x, std::span<const double> background,
            CoalitionKey s, std::span<double> out);

// f_S(x) = (1/B) sum_b f(splice(x, b, S)). The full coalition is evaluated
// once at x, so f_G(x) == f(x) exactly.
double masked_output(const ModelSpec& model, std::span<const double> x,
                     CoalitionKey s, const BackgroundSet& bg);

// Coalitions stored by build_table for the given level, canonical order.
std::vector<CoalitionKey> table_keys(int d, Sigma sigma);

// Masked outputs of one instance over a fixed coalition set. Immutable once
// built.
class CoalitionValueTable {
 public:
  CoalitionValueTable(FeatureVector instance, Sigma sigma, CoalitionValues values);

  const FeatureVector& instance() const { return instance_; }
  int dimension() const { return values_.dimension(); }
  Sigma sigma() const { return sigma_; }
  bool is_full() const { return sigma_.is_full(); }

  // Throws MissingCoalition for keys outside the table.
  double value(CoalitionKey s) const { return values_.at(s); }
  const double* find(CoalitionKey s) const { return values_.find(s); }
  bool contains(CoalitionKey s) const { return values_.contains(s); }
  const std::vector<CoalitionKey>& keys() const { return values_.keys(); }
  const CoalitionValues& values() const { return values_; }

  double full_value() const { return value(CoalitionKey::full(dimension())); }
  double empty_value() const { return value(CoalitionKey::empty()); }

  bool operator==(const CoalitionValueTable& other) const {
    return sigma_ == other.sigma_ && instance_.values == other.instance_.values &&
           values_ == other.values_;
  }

 private:
  FeatureVector instance_;
  Sigma sigma_;
  CoalitionValues values_;
};

// Throws EnumerationGuard when sigma is FULL and d > kMaxFullEnumeration, or
// when a capped key set would be unreasonably large; DimensionError on
// inconsistent shapes or an invalid cap.
CoalitionValueTable build_table(const ModelSpec& model, const FeatureVector& x,
                                const BackgroundSet& bg, Sigma sigma);

// {"coalition":"0b1010","value":v} per stored coalition, canonical order.
nlohmann::json dump_table(const CoalitionValueTable& table);

using CoalitionLookup = std::function<double(CoalitionKey)>;

// Table lookups that fall back to on-demand masked outputs for coalitions the
// table does not hold (e.g. top-m sets of a capped table). Computed values
// are memoized; safe for concurrent use.
class MaskedValueCache {
 public:
  MaskedValueCache(const CoalitionValueTable& table, const ModelSpec& model,
                   const BackgroundSet& bg)
      : table_(table), model_(model), bg_(bg) {}

  double value(CoalitionKey s) const;
  CoalitionLookup lookup() const {
    return [this](CoalitionKey s) { return value(s); };
  }
  std::size_t extra_evaluations() const;

 private:
  const CoalitionValueTable& table_;
  const ModelSpec& model_;
  const BackgroundSet& bg_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<CoalitionKey, double> extra_;
};

}  // namespace poda

#endif  // PODA_MASKING_HPP_
