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

#ifndef PODA_TOOLS_CLI_HPP_
#define PODA_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poda/attribution.hpp"
#include "poda/error.hpp"
#include "poda/masking.hpp"

namespace poda::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitOracle = 3,
  kExitEnumeration = 4,
};

// Flags of every subcommand; each field maps to one option.
struct RunConfig {
  std::string command;
  std::string model_path;
  std::string data_path;
  std::string background_path;
  std::vector<std::string> methods;
  std::string sigma = "FULL";
  std::size_t n_candidates = 16;
  bool include_uniform = true;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  // Unset: min(32, background rows). 0 keeps every row.
  std::optional<std::size_t> background_size;
  std::string label_col;
  std::string metrics;
  std::string output;
  std::size_t workers = 0;

  std::vector<std::size_t> rows;
  std::size_t max_samples = 0;
  std::size_t lime_samples = 1000;
  bool report_gap = false;
  std::string svg;
  std::string per_sample_csv;
  std::size_t cases = 100;
  std::string format = "json";
  bool dividends = false;

  // Everything that affects the report. Worker count is left out: results
  // do not depend on it.
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kDefaultBackgroundSize = 32;

Sigma parse_sigma(const std::string& text);

// Methods to run for a given enumeration level. Empty selects the defaults;
// taylorpoda becomes taylorpoda-c under a cap. Throws ConfigError for
// methods that cannot run at that level.
std::vector<Method> resolve_methods(const std::vector<std::string>& names, Sigma sigma);

int exit_code_for(const Error& error);

// Builds the report of one subcommand. Throws poda::Error subclasses.
nlohmann::json run_command(const RunConfig& config);

// Parses argv, runs, writes the report, and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poda::cli

#endif  // PODA_TOOLS_CLI_HPP_
