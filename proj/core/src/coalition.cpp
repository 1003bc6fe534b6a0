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

#include "poda/coalition.hpp"

#include <algorithm>
#include <limits>

#include "poda/coalition_values.hpp"
#include "poda/error.hpp"

namespace poda {

std::vector<int> CoalitionKey::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string CoalitionKey::to_string(int d) const {
  std::string out = "0b";
  out.reserve(static_cast<std::size_t>(d) + 2);
  for (int i = d - 1; i >= 0; --i) out.push_back(contains(i) ? '1' : '0');
  if (d == 0) out.push_back('0');
  return out;
}

std::optional<CoalitionKey> CoalitionKey::parse(const std::string& text) {
  if (text.size() < 3 || text[0] != '0' || text[1] != 'b') return std::nullopt;
  if (text.size() - 2 > 64) return std::nullopt;
  std::uint64_t bits = 0;
  for (std::size_t k = 2; k < text.size(); ++k) {
    const char c = text[k];
    if (c != '0' && c != '1') return std::nullopt;
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return CoalitionKey(bits);
}

namespace {

// Calls fn for every k-subset of {0..d-1} in increasing numeric order
// (Gosper's hack).
template <typename Fn>
void for_each_of_size(int d, int k, Fn&& fn) {
  if (k == 0) {
    fn(CoalitionKey());
    return;
  }
  if (k > d) return;
  const std::uint64_t limit_bit = d >= 64 ? 0 : (std::uint64_t{1} << d);
  std::uint64_t v = (k >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  while (true) {
    fn(CoalitionKey(v));
    const std::uint64_t t = v | (v - 1);
    if (t == std::numeric_limits<std::uint64_t>::max()) break;
    const std::uint64_t next =
        (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    if (limit_bit != 0 && next >= limit_bit) break;
    if (next <= v) break;
    v = next;
  }
}

}  // namespace

std::vector<CoalitionKey> coalitions_up_to(int d, int max_size) {
  std::vector<CoalitionKey> out;
  max_size = std::min(max_size, d);
  for (int k = 0; k <= max_size; ++k) {
    for_each_of_size(d, k, [&](CoalitionKey key) { out.push_back(key); });
  }
  return out;
}

CoalitionValues CoalitionValues::dense(int d) {
  if (d < 0 || d > kMaxFullEnumeration) {
    throw EnumerationGuard("dense coalition storage needs d <= " +
                           std::to_string(kMaxFullEnumeration) + ", got " +
                           std::to_string(d));
  }
  CoalitionValues out;
  out.d_ = d;
  out.dense_ = true;
  out.keys_ = coalitions_up_to(d, d);
  out.values_.assign(std::size_t{1} << d, 0.0);
  return out;
}

CoalitionValues CoalitionValues::sparse(int d, std::vector<CoalitionKey> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  CoalitionValues out;
  out.d_ = d;
  out.dense_ = false;
  out.values_.assign(keys.size(), 0.0);
  out.index_.reserve(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) out.index_.emplace(keys[k], k);
  out.keys_ = std::move(keys);
  return out;
}

std::size_t CoalitionValues::slot(CoalitionKey key) const {
  if (dense_) {
    if (!key.is_subset_of(CoalitionKey::full(d_))) return values_.size();
    return static_cast<std::size_t>(key.bits());
  }
  const auto it = index_.find(key);
  return it == index_.end() ? values_.size() : it->second;
}

const double* CoalitionValues::find(CoalitionKey key) const {
  const std::size_t s = slot(key);
  return s < values_.size() ? &values_[s] : nullptr;
}

double* CoalitionValues::find(CoalitionKey key) {
  const std::size_t s = slot(key);
  return s < values_.size() ? &values_[s] : nullptr;
}

double CoalitionValues::at(CoalitionKey key) const {
  if (const double* v = find(key)) return *v;
  throw MissingCoalition("coalition " + key.to_string(d_) +
                         " is not in the table");
}

double& CoalitionValues::at(CoalitionKey key) {
  if (double* v = find(key)) return *v;
  throw MissingCoalition("coalition " + key.to_string(d_) +
                         " is not in the table");
}

bool CoalitionValues::operator==(const CoalitionValues& other) const {
  return d_ == other.d_ && dense_ == other.dense_ && keys_ == other.keys_ &&
         values_ == other.values_;
}

}  // namespace poda
