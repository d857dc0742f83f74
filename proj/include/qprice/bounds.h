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

// Upper bounds on achievable revenue, used to normalize algorithm results.

#ifndef QPRICE_BOUNDS_H_
#define QPRICE_BOUNDS_H_

#include <optional>
#include <string>
#include <vector>

#include "qprice/instance.h"

namespace qprice {

struct BoundReport {
  std::string kind;  // "sum" or "subadditive"
  double value = 0.0;
  int constraints_added = 0;  // cover rows, subadditive only
};

// Sum of all bundle values.
BoundReport SumBound(const Instance& instance);

struct SubadditiveConfig {
  enum class Mode {
    // max sum r_e, r_e <= p_e, r_e <= v_e, covers on p. Revenue of any
    // monotone subadditive pricing fits under it.
    kRelaxed,
    // max sum p_e with p_e <= v_e and covers on p: the best monotone
    // subadditive pricing that sells every bundle. Not an upper bound on
    // pricings that leave bundles unsold.
    kAllSold,
  };
  enum class Order { kDecreasingValue, kIncreasingValue };

  Mode mode = Mode::kRelaxed;
  Order order = Order::kDecreasingValue;
  std::optional<int> max_cover_rows;  // unlimited by default
};

// LP bound with one greedy cover row per coverable non-empty bundle:
// p_e <= sum of p over a cheap cover of e by other bundles.
BoundReport SubadditiveBound(const Instance& instance,
                             const SubadditiveConfig& config = {});

// Greedy weighted set cover of bundle e's items by other bundles, picking
// the lowest value per newly covered item. Empty when no full cover exists.
std::vector<int> GreedyCover(const Instance& instance, int e,
                             const std::vector<std::vector<int>>& incidence);

}  // namespace qprice

#endif  // QPRICE_BOUNDS_H_
