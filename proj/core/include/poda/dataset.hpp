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

#ifndef PODA_DATASET_HPP_
#define PODA_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "poda/masking.hpp"
#include "poda/oracle.hpp"

namespace poda {

// Numeric table loaded from CSV: a header row of column names, one sample
// per line. An optional label column is split off from the features.
struct Dataset {
  std::vector<std::string> feature_names;
  RowMatrix features;
  std::optional<std::vector<double>> labels;
  std::string source;

  std::size_t size() const { return features.rows(); }
  std::size_t dimension() const { return features.cols(); }
  FeatureVector instance(std::size_t r) const;
};

// Throws ParseError on a missing header, ragged rows, or non-numeric cells.
// label_column, when non-empty, must name a header column.
Dataset read_csv(const std::filesystem::path& path,
                 const std::string& label_column = "");
Dataset parse_csv(const std::string& text, const std::string& source,
                  const std::string& label_column = "");

// Up to max_rows rows drawn without replacement with a seeded generator, kept
// in file order. max_rows == 0 keeps every row.
BackgroundSet sample_background(const Dataset& data, std::size_t max_rows,
                                std::uint64_t seed);

}  // namespace poda

#endif  // PODA_DATASET_HPP_
