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

// Seeded synthetic workloads, valuation models and lower-bound families.

#ifndef QPRICE_GENERATORS_H_
#define QPRICE_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "qprice/instance.h"

namespace qprice {

enum class WorkloadFamily { kUniform, kSkewed };

struct WorkloadSpec {
  WorkloadFamily family = WorkloadFamily::kUniform;
  int n = 0;  // items
  int m = 0;  // bundles
  // Uniform: bundle sizes are round(Normal(mean, spread)) clamped to [1, n].
  // mean <= 0 selects 0.4 n; spread <= 0 selects mean / 6.
  double mean_size = 0.0;
  double size_spread = 0.0;
  // Skewed: P(size = s) proportional to s^-exponent on [1, n].
  double skew_exponent = 1.5;
  std::uint64_t seed = 0;
};

// Bundles with items drawn without replacement; all values 0.
Instance GenWorkload(const WorkloadSpec& spec);

enum class ValuationModel {
  kUniformValue,  // Uniform[1, k]
  kZipf,          // rank drawn with P(r) ~ r^-a, r in [1, zipf_support]
  kExpScaled,     // exponential with mean |e|^k
  kNormalScaled,  // Normal(|e|^k, sd sqrt(10)), negatives clamped to 0
  kAdditive,      // sum of per-item prices x_j ~ Uniform[l_j, l_j + 1]
};

enum class LevelAssigner {
  kUniform,   // l_j uniform on {1, ..., k}
  kBinomial,  // l_j ~ Binomial(k, 1/2)
};

inline constexpr int kDefaultZipfSupport = 1000000;

struct ValuationSpec {
  ValuationModel model = ValuationModel::kUniformValue;
  double k = 10.0;
  double a = 2.0;  // Zipf exponent, > 1
  LevelAssigner assigner = LevelAssigner::kUniform;
  int zipf_support = kDefaultZipfSupport;
  std::uint64_t seed = 0;
};

// Same hypergraph, values drawn from `spec`.
Instance AssignValues(const Instance& instance, const ValuationSpec& spec);

const char* ModelName(ValuationModel model);
ValuationModel ParseModel(std::string_view name);
const char* AssignerName(LevelAssigner assigner);
LevelAssigner ParseAssigner(std::string_view name);
WorkloadFamily ParseWorkloadFamily(std::string_view name);

// m singleton bundles, bundle i = {i} valued 1/(i+1).
Instance GenHarmonic(int m);

// n a power of two: for every size s in 1, 2, 4, ..., n, the n/s disjoint
// aligned blocks of size s, each a bundle of value 1.
Instance GenPartition(int n);

// Binary-tree laminar family over 2^t items. Each depth-l block appears as
// 2^l 3^(t-l) identical bundles of value (3/4)^l.
struct LaminarFamily {
  Instance instance;
  int t = 0;
  double opt = 0.0;            // (t+1) 3^t, also the sum of values
  double ubp_reference = 0.0;  // best uniform bundle revenue, closed form
};
LaminarFamily GenLaminar(int t);

inline constexpr int kLaminarMaxDepth = 7;

// Copies of each depth-l block: 2^l 3^(t-l).
std::int64_t LaminarCopies(int t, int level);

// max over k of (3/4)^k 3^t sum_{i<=k} (4/3)^i.
double LaminarUbpReference(int t);

// Cheapest cover of the item set `mask` by blocks of the depth-t laminar
// tree, block value (3/4)^depth. Needs 2^t <= 64.
double LaminarValueOracle(int t, std::uint64_t mask);

}  // namespace qprice

#endif  // QPRICE_GENERATORS_H_
