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

#include "qprice/bounds.h"

#include <algorithm>
#include <queue>
#include <tuple>

#include "qprice/lp.h"

namespace qprice {

BoundReport SumBound(const Instance& instance) {
  double total = 0.0;
  for (const Bundle& b : instance.bundles()) total += b.value;
  return {"sum", total, 0};
}

std::vector<int> GreedyCover(const Instance& instance, int e,
                             const std::vector<std::vector<int>>& incidence) {
  const std::vector<int>& target = instance.bundle(e).items;
  if (target.empty()) return {};
  // Overlap of every other bundle with the target, as target positions.
  std::vector<std::vector<int>> overlap(instance.num_bundles());
  for (size_t p = 0; p < target.size(); ++p) {
    bool reachable = false;
    for (int f : incidence[target[p]]) {
      if (f == e) continue;
      overlap[f].push_back(static_cast<int>(p));
      reachable = true;
    }
    if (!reachable) return {};
  }
  // Lazy greedy: a candidate's ratio only grows as its fresh count shrinks.
  using Entry = std::tuple<double, int, int>;  // ratio, bundle, fresh count
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int f = 0; f < instance.num_bundles(); ++f) {
    if (overlap[f].empty()) continue;
    const int fresh = static_cast<int>(overlap[f].size());
    heap.emplace(instance.value(f) / fresh, f, fresh);
  }
  std::vector<bool> covered(target.size(), false);
  size_t remaining = target.size();
  std::vector<int> cover;
  while (remaining > 0 && !heap.empty()) {
    const auto [ratio, f, stale] = heap.top();
    heap.pop();
    int fresh = 0;
    for (int p : overlap[f]) fresh += covered[p] ? 0 : 1;
    if (fresh == 0) continue;
    if (fresh != stale) {
      heap.emplace(instance.value(f) / fresh, f, fresh);
      continue;
    }
    cover.push_back(f);
    for (int p : overlap[f]) {
      if (!covered[p]) {
        covered[p] = true;
        --remaining;
      }
    }
  }
  return cover;
}

BoundReport SubadditiveBound(const Instance& instance,
                             const SubadditiveConfig& config) {
  const int m = instance.num_bundles();
  if (m == 0) throw InvalidInputError("subadditive bound needs a bundle");
  if (config.max_cover_rows && *config.max_cover_rows < 0) {
    throw InvalidInputError("max_cover_rows must be >= 0");
  }
  const bool relaxed = config.mode == SubadditiveConfig::Mode::kRelaxed;
  // Variables: p_e at e, and in relaxed mode r_e at m + e.
  LinearProgram lp(relaxed ? 2 * m : m);
  for (int e = 0; e < m; ++e) {
    if (relaxed) {
      lp.SetObjective(m + e, 1.0);
      lp.SetBounds(m + e, 0.0, instance.value(e));
      lp.AddSparseRow({{m + e, 1.0}, {e, -1.0}}, Relation::kLessEqual, 0.0);
    } else {
      lp.SetObjective(e, 1.0);
      lp.SetBounds(e, 0.0, instance.value(e));
    }
  }

  std::vector<int> order(m);
  for (int e = 0; e < m; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return config.order == SubadditiveConfig::Order::kDecreasingValue
               ? instance.value(a) > instance.value(b)
               : instance.value(a) < instance.value(b);
  });
  const std::vector<std::vector<int>> incidence = ItemIncidence(instance);
  int added = 0;
  for (int e : order) {
    if (config.max_cover_rows && added >= *config.max_cover_rows) break;
    const std::vector<int> cover = GreedyCover(instance, e, incidence);
    if (cover.empty()) continue;
    std::vector<LpTerm> terms = {{e, 1.0}};
    for (int f : cover) terms.push_back({f, -1.0});
    lp.AddSparseRow(std::move(terms), Relation::kLessEqual, 0.0);
    ++added;
  }

  const LpSolution sol = Solve(lp);
  if (!sol.optimal()) {
    throw SolverError(std::string("subadditive LP ended ") +
                      StatusName(sol.status));
  }
  return {"subadditive", sol.objective, added};
}

}  // namespace qprice
