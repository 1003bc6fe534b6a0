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

#include "poda/allocation.hpp"

#include <cmath>

#include "poda/dividends.hpp"
#include "poda/error.hpp"
#include "poda/metrics.hpp"

namespace poda {

std::vector<double> sample_simplex(std::span<const double> alpha, std::size_t k,
                                   std::mt19937_64& rng) {
  if (k < 2) throw InvalidAlpha("simplex sampling needs k >= 2");
  if (alpha.size() != 1 && alpha.size() != k) {
    throw InvalidAlpha("alpha has " + std::to_string(alpha.size()) +
                       " components for k=" + std::to_string(k));
  }
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidAlpha("Dirichlet concentrations must be finite and positive");
    }
  }
  std::vector<double> out(k);
  while (true) {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      std::gamma_distribution<double> gamma(alpha.size() == 1 ? alpha[0] : alpha[i], 1.0);
      out[i] = gamma(rng);
      total += out[i];
    }
    // All-zero draws only happen through underflow at tiny alpha.
    if (total > 0.0 && std::isfinite(total)) {
      for (double& v : out) v /= total;
      return out;
    }
  }
}

std::vector<XiAllocation> generate_candidates(int d, Sigma sigma,
                                              const CandidateOptions& options) {
  if (options.n_candidates < 1) throw InvalidAllocation("need at least one candidate");
  const int cap = sigma.cap(d);
  const auto keys = coalitions_up_to(d, cap);
  std::mt19937_64 rng(options.dirichlet.seed);

  std::vector<XiAllocation> out;
  out.reserve(options.n_candidates);
  if (options.include_uniform) out.push_back(XiAllocation::uniform(d, cap));
  while (out.size() < options.n_candidates) {
    XiAllocation xi(d);
    for (CoalitionKey s : keys) {
      if (s.size() < 2) continue;
      xi.set(s, sample_simplex(options.dirichlet.alpha,
                               static_cast<std::size_t>(s.size()), rng));
    }
    out.push_back(std::move(xi));
  }
  return out;
}

namespace {

template <typename Score>
XiSelection select_min(const std::vector<XiAllocation>& candidates, Score&& score) {
  if (candidates.empty()) throw InvalidAllocation("optimize_xi needs at least one candidate");
  XiSelection best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    Attribution attr = score(candidates[k]);
    best.candidate_aups.push_back(attr.aup);
    if (k == 0 || attr.aup < best.attribution.aup) {
      best.attribution = std::move(attr);
      best.selected = k;
    }
  }
  best.xi = candidates[best.selected];
  best.attribution.metadata["candidate_index"] = best.selected;
  best.attribution.metadata["candidate_aups"] = best.candidate_aups;
  return best;
}

}  // namespace

XiSelection optimize_xi(const CoalitionValueTable& table,
                        const std::vector<XiAllocation>& candidates) {
  if (!table.is_full()) {
    throw MissingCoalition("optimize_xi without a sigma needs a FULL table");
  }
  const auto dividends = harsanyi_all(table);
  return select_min(candidates, [&](const XiAllocation& xi) {
    return taylorpoda(table, dividends, xi);
  });
}

XiSelection optimize_xi(const CoalitionValueTable& table,
                        const std::vector<XiAllocation>& candidates, int sigma,
                        const CoalitionLookup& lookup) {
  const auto dividends = harsanyi_all(table);
  return select_min(candidates, [&](const XiAllocation& xi) {
    Attribution attr = taylorpoda_capped(table, dividends, xi, sigma);
    attr.aup = aup(attr.scores, table.full_value(), lookup);
    return attr;
  });
}

}  // namespace poda
