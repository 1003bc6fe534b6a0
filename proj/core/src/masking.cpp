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

#include "poda/masking.hpp"

#include <algorithm>
#include <cmath>

#include "poda/error.hpp"

namespace poda {
namespace {

// Rows handed to evaluate_batch per call while building a table.
constexpr std::size_t kRowsPerChunk = 1 << 16;
// Ceiling on the number of stored coalitions for capped tables.
constexpr std::size_t kMaxCappedKeys = std::size_t{1} << kMaxFullEnumeration;

void check_instance(const ModelSpec& model, std::span<const double> x,
                    const BackgroundSet& bg) {
  if (x.size() != model.input_dim()) {
    throw DimensionError("instance has " + std::to_string(x.size()) +
                         " features, model expects " +
                         std::to_string(model.input_dim()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NonFiniteInput("instance contains a non-finite value");
  }
  if (bg.size() == 0) throw DimensionError("background set is empty");
  if (bg.dimension() != x.size()) {
    throw DimensionError("background rows have " + std::to_string(bg.dimension()) +
                         " features, instance has " + std::to_string(x.size()));
  }
}

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

BackgroundSet make_background(RowMatrix rows, std::string source) {
  if (rows.rows() == 0) throw DimensionError("background set needs at least one row");
  for (double v : rows.data()) {
    if (!std::isfinite(v)) throw NonFiniteInput("background contains a non-finite value");
  }
  return BackgroundSet{std::move(rows), std::move(source)};
}

void splice(std::span<const double> x, std::span<const double> background,
            CoalitionKey s, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = s.contains(static_cast<int>(i)) ? x[i] : background[i];
  }
}

double masked_output(const ModelSpec& model, std::span<const double> x,
                     CoalitionKey s, const BackgroundSet& bg) {
  check_instance(model, x, bg);
  const int d = static_cast<int>(x.size());
  if (!s.is_subset_of(CoalitionKey::full(d))) {
    throw DimensionError("coalition " + s.to_string(64) + " exceeds " +
                         std::to_string(d) + " features");
  }
  if (s == CoalitionKey::full(d)) return evaluate(model, x);
  RowMatrix rows(bg.size(), x.size());
  for (std::size_t b = 0; b < bg.size(); ++b) splice(x, bg.rows.row(b), s, rows.row(b));
  const auto outputs = evaluate_batch(model, rows);
  return mean_of(outputs);
}

std::vector<CoalitionKey> table_keys(int d, Sigma sigma) {
  if (d < 1 || d > kMaxFeatures) {
    throw DimensionError("feature count " + std::to_string(d) + " outside [1, " +
                         std::to_string(kMaxFeatures) + "]");
  }
  if (sigma.is_full()) {
    if (d > kMaxFullEnumeration) {
      throw EnumerationGuard("FULL enumeration needs d <= " +
                             std::to_string(kMaxFullEnumeration) + ", got d=" +
                             std::to_string(d));
    }
    return coalitions_up_to(d, d);
  }
  const int cap = sigma.value();
  if (cap < 1 || cap > d) {
    throw DimensionError("sigma must lie in [1, d]; got " + std::to_string(cap) +
                         " for d=" + std::to_string(d));
  }
  // Count before materializing.
  double count = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= cap; ++k) {
    count += binom;
    binom = binom * (d - k) / (k + 1);
  }
  if (count + d + 1 > static_cast<double>(kMaxCappedKeys)) {
    throw EnumerationGuard("sigma=" + std::to_string(cap) + " at d=" +
                           std::to_string(d) + " needs too many coalitions");
  }
  std::vector<CoalitionKey> keys = coalitions_up_to(d, cap);
  const CoalitionKey all = CoalitionKey::full(d);
  for (int i = 0; i < d; ++i) keys.push_back(all.without(i));
  keys.push_back(all);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

CoalitionValueTable::CoalitionValueTable(FeatureVector instance, Sigma sigma,
                                         CoalitionValues values)
    : instance_(std::move(instance)), sigma_(sigma), values_(std::move(values)) {}

CoalitionValueTable build_table(const ModelSpec& model, const FeatureVector& x,
                                const BackgroundSet& bg, Sigma sigma) {
  check_instance(model, x.values, bg);
  const int d = static_cast<int>(x.size());
  std::vector<CoalitionKey> keys = table_keys(d, sigma);
  CoalitionValues values = sigma.is_full() ? CoalitionValues::dense(d)
                                           : CoalitionValues::sparse(d, keys);

  const CoalitionKey all = CoalitionKey::full(d);
  const std::size_t B = bg.size();
  const std::size_t keys_per_chunk = std::max<std::size_t>(1, kRowsPerChunk / B);

  std::vector<CoalitionKey> pending;
  pending.reserve(keys.size());
  for (CoalitionKey k : keys) {
    if (k != all) pending.push_back(k);
  }

  RowMatrix rows;
  for (std::size_t begin = 0; begin < pending.size(); begin += keys_per_chunk) {
    const std::size_t end = std::min(pending.size(), begin + keys_per_chunk);
    rows = RowMatrix((end - begin) * B, x.size());
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t b = 0; b < B; ++b) {
        splice(x.values, bg.rows.row(b), pending[k], rows.row((k - begin) * B + b));
      }
    }
    const auto outputs = evaluate_batch(model, rows);
    for (std::size_t k = begin; k < end; ++k) {
      const std::span<const double> block(outputs.data() + (k - begin) * B, B);
      values.at(pending[k]) = mean_of(block);
    }
  }
  values.at(all) = evaluate(model, x.values);
  return CoalitionValueTable(x, sigma, std::move(values));
}

nlohmann::json dump_table(const CoalitionValueTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  const int d = table.dimension();
  for (CoalitionKey k : table.keys()) {
    entries.push_back({{"coalition", k.to_string(d)}, {"value", table.value(k)}});
  }
  return entries;
}

double MaskedValueCache::value(CoalitionKey s) const {
  if (const double* v = table_.find(s)) return *v;
  {
    std::lock_guard lock(mutex_);
    if (auto it = extra_.find(s); it != extra_.end()) return it->second;
  }
  const double v = masked_output(model_, table_.instance().values, s, bg_);
  std::lock_guard lock(mutex_);
  extra_.emplace(s, v);
  return v;
}

std::size_t MaskedValueCache::extra_evaluations() const {
  std::lock_guard lock(mutex_);
  return extra_.size();
}

}  // namespace poda
