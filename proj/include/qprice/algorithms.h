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

// Revenue-maximizing pricing algorithms for single-minded buyers with
// unlimited supply. Every algorithm returns the pricing it chose together
// with the outcome of posting it (always produced by Evaluate).

#ifndef QPRICE_ALGORITHMS_H_
#define QPRICE_ALGORITHMS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qprice/instance.h"
#include "qprice/pricing.h"

namespace qprice {

// One tried candidate of a sweep. `parameter` is the candidate price,
// weight, value threshold, capacity or layer index; `objective` is the
// quantity the algorithm optimized for it (ideal revenue, LP value, welfare,
// layer value). Failed LPs are recorded with failed = true.
struct CandidateDiagnostic {
  double parameter = 0.0;
  double objective = 0.0;
  double revenue = 0.0;
  int num_sold = 0;
  bool failed = false;
};

struct AlgoReport {
  std::string algorithm;
  PricingVector vector;
  PricingOutcome outcome;  // elapsed covers the whole algorithm
  std::vector<CandidateDiagnostic> diagnostics;
};

struct CipConfig {
  double epsilon = 1.0;                 // capacities 1, 1+eps, (1+eps)^2, ...
  std::optional<double> max_capacity;   // defaults to the max item degree
};

// Best single price for all bundles; candidates are the bundle values.
AlgoReport Ubp(const Instance& instance);

// Best equal weight on every item; candidates are v_e / |e|.
AlgoReport Uip(const Instance& instance);

// For each value threshold, item weights from the LP that sells every bundle
// valued at least the threshold; best realized revenue wins.
AlgoReport Lpip(const Instance& instance);

// Item prices from the duals of the capacitated welfare LP, swept over a
// geometric sequence of capacities.
AlgoReport Cip(const Instance& instance, const CipConfig& config = {});

// Peels off inclusion-minimal covers of the items and prices the most
// valuable one through a unique item per bundle.
AlgoReport Layering(const Instance& instance);

// Max over the item weight vectors of `reports` (at least two).
AlgoReport XosCombine(std::span<const AlgoReport> reports,
                      const Instance& instance);

// Best item weights that keep every bundle sold under `pricing` sold.
AlgoReport LpRefine(const PricingVector& pricing, const Instance& instance);

// Largest number of bundles the exhaustive oracle accepts.
inline constexpr int kOracleMaxBundles = 12;

struct OracleResult {
  double revenue = 0.0;
  std::vector<double> weights;
};

// Optimal item-pricing revenue by enumerating sold sets. Exponential; throws
// InvalidInputError above kOracleMaxBundles bundles.
OracleResult OptimalItemPricing(const Instance& instance);

struct AlgorithmOptions {
  CipConfig cip;
  bool refine = false;  // post-process with LpRefine
};

// Algorithm names accepted by RunAlgorithm.
std::span<const std::string_view> AlgorithmNames();

// Dispatch by name: ubp, uip, lpip, cip, layering, xos (lpip with cip).
AlgoReport RunAlgorithm(std::string_view name, const Instance& instance,
                        const AlgorithmOptions& options = {});

// Lowers item weights until every bundle in `keep_sold` is sold exactly
// (price <= value with no rounding slack). Never unsells a bundle.
void SnapToSales(std::vector<double>& weights, const Instance& instance,
                 const std::vector<bool>& keep_sold);

}  // namespace qprice

#endif  // QPRICE_ALGORITHMS_H_
