// Copyright 2026 The lowrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowrand/core/scalar.hpp"

namespace lowrand {

// Rows of formatted cells. Floats use 12 significant digits, rationals p/q.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string to_csv() const;
  // One "column=value ..." line per row.
  std::string to_lines() const;
};

struct ExperimentSpec {
  std::string name;
  std::optional<std::string> game;      // registry name or game file
  std::vector<int> horizons;            // empty: experiment default
  std::vector<Rational> eps;            // empty: experiment default
  std::vector<std::uint64_t> seeds;     // empty: {1}
  std::optional<std::vector<Rational>> target;  // folk-entropy
  int grid = 64;                        // cavU
  int count = 100;                      // random opponents per seed
  int plays = 2000;                     // Monte Carlo playouts
};

struct ExperimentResult {
  std::string name;
  CsvTable table;
  int violations = 0;  // rows whose measured value breaks the stated bound
};

const std::vector<std::string>& experiment_names();
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Writes <dir>/<name>.csv (or .txt for the lines format) for each result
// and <dir>/summary.json; returns the written paths.
std::vector<std::filesystem::path> write_experiments(const std::vector<ExperimentResult>& results,
                                                     const std::filesystem::path& dir, bool lines_format);

nlohmann::json experiments_summary(const std::vector<ExperimentResult>& results, bool lines_format);

}  // namespace lowrand
