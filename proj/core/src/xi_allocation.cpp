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

#include "poda/xi_allocation.hpp"

#include <cmath>

#include "poda/error.hpp"

namespace poda {

XiAllocation XiAllocation::uniform(int d, int max_size) {
  XiAllocation xi(d);
  for (CoalitionKey s : coalitions_up_to(d, max_size)) {
    if (s.size() < 2) continue;
    xi.entries_.emplace(s, std::vector<double>(static_cast<std::size_t>(s.size()),
                                               1.0 / s.size()));
  }
  return xi;
}

XiAllocation XiAllocation::constant(int d, int max_size, double value) {
  XiAllocation xi(d);
  for (CoalitionKey s : coalitions_up_to(d, max_size)) {
    if (s.size() < 2) continue;
    xi.entries_.emplace(s, std::vector<double>(static_cast<std::size_t>(s.size()), value));
  }
  return xi;
}

int XiAllocation::max_size() const {
  int out = 0;
  for (const auto& [s, w] : entries_) out = std::max(out, s.size());
  return out;
}

void XiAllocation::set(CoalitionKey s, std::vector<double> weights) {
  if (s.size() < 2) {
    throw InvalidAllocation("xi is only defined for coalitions with |S| > 1, got " +
                            s.to_string(d_));
  }
  if (weights.size() != static_cast<std::size_t>(s.size())) {
    throw InvalidAllocation("xi for " + s.to_string(d_) + " needs " +
                            std::to_string(s.size()) + " weights, got " +
                            std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw InvalidAllocation("non-finite xi weight");
  }
  entries_[s] = std::move(weights);
}

const std::vector<double>* XiAllocation::find(CoalitionKey s) const {
  const auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

double XiAllocation::weight(int feature, CoalitionKey s) const {
  const auto* w = find(s);
  if (w == nullptr || !s.contains(feature)) {
    throw InvalidAllocation("no xi entry for feature " + std::to_string(feature) +
                            " in " + s.to_string(d_));
  }
  return (*w)[static_cast<std::size_t>(s.rank_of(feature))];
}

namespace {

bool entry_is_simplex(const std::vector<double>& w) {
  double sum = 0.0;
  for (double v : w) {
    if (v < 0.0 || v > 1.0) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= kSimplexTolerance;
}

}  // namespace

bool XiAllocation::is_simplex() const {
  for (const auto& [s, w] : entries_) {
    if (!entry_is_simplex(w)) return false;
  }
  return true;
}

void XiAllocation::require_simplex() const {
  for (const auto& [s, w] : entries_) {
    if (!entry_is_simplex(w)) {
      throw InvalidAllocation("xi for " + s.to_string(d_) +
                              " does not lie on the probability simplex");
    }
  }
}

void XiAllocation::require_coverage(int max_size) const {
  for (CoalitionKey s : coalitions_up_to(d_, max_size)) {
    if (s.size() >= 2 && !entries_.contains(s)) {
      throw InvalidAllocation("xi has no entry for " + s.to_string(d_));
    }
  }
}

nlohmann::json XiAllocation::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [s, w] : entries_) out[s.to_string(d_)] = w;
  return out;
}

}  // namespace poda
