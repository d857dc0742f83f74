// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment grid: instance sources x valuations x algorithms x seeds, run
// on a worker pool with rows reported in grid order.

#ifndef QPRICE_GRID_H_
#define QPRICE_GRID_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprice/algorithms.h"
#include "qprice/generators.h"
#include "qprice/instance.h"
#include "qprice/json_io.h"

namespace qprice {

struct InstanceSource {
  enum class Kind { kWorkload, kHarmonic, kPartition, kLaminar, kFile };
  Kind kind = Kind::kHarmonic;
  WorkloadSpec workload;  // kWorkload; its seed is replaced per grid seed
  int size = 1;           // m (harmonic), n (partition) or t (laminar)
  std::string path;       // kFile
};

struct GridCell {
  InstanceSource source;
  std::optional<ValuationSpec> valuation;  // seed replaced per grid seed
  std::vector<std::string> algorithms;
  AlgorithmOptions options;
  bool sum_bound = true;
  bool subadditive_bound = false;
  int repetitions = 1;
  std::vector<std::uint64_t> seeds = {0};
};

struct GridConfig {
  std::vector<GridCell> cells;
};

// Grid file: {"cells": [{"instance": {...}, "valuation": {...},
// "algorithms": [...], "bounds": [...], "epsilon": E, "refine": bool,
// "repetitions": R, "seeds": [...]}, ...]}. An array-valued "m", "n" or "t"
// in "instance" expands into one cell per entry.
GridConfig GridFromJson(const Json& j);
InstanceSource SourceFromJson(const Json& j);
ValuationSpec ValuationFromJson(const Json& j);

// Workload seed = grid seed, valuation seed = grid seed + 1.
Instance BuildInstance(const InstanceSource& source,
                       const std::optional<ValuationSpec>& valuation,
                       std::uint64_t seed);
std::string InstanceId(const InstanceSource& source, std::uint64_t seed);
std::string ValuationLabel(const std::optional<ValuationSpec>& valuation);

struct ResultRow {
  std::string instance_id;
  int m = 0;
  int n = 0;
  int max_degree = 0;
  std::string valuation;
  std::string algorithm;
  std::uint64_t seed = 0;
  double revenue = 0.0;
  std::optional<double> ratio_sum;
  std::optional<double> ratio_subadditive;
  double elapsed_ms = 0.0;      // mean over repetitions
  double elapsed_ms_std = 0.0;  // sample std, 0 for one repetition
  int repetitions = 1;
  std::string status = "ok";
};

// Worker count from QPRICE_WORKERS, else the hardware concurrency.
int DefaultWorkers();

std::vector<ResultRow> RunGrid(const GridConfig& config, int workers);

const std::string& CsvHeader();
// Without timing the elapsed columns are left empty so output is
// byte-identical across runs.
std::string CsvLine(const ResultRow& row, bool timing);
Json RowToJson(const ResultRow& row, bool timing);

}  // namespace qprice

#endif  // QPRICE_GRID_H_
