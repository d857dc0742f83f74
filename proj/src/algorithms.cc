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

#include "qprice/algorithms.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "qprice/lp.h"

namespace qprice {
namespace {

using Clock = std::chrono::steady_clock;

// Revenues closer than this (relative) are treated as tied.
constexpr double kRevenueTieTolerance = 1e-12;
// LP weights may overshoot a bundle value by this much (relative) and the
// bundle still counts as meant to be sold.
constexpr double kIntendedSaleSlack = 1e-6;

// Is (revenue, sold) an improvement over the incumbent? On a full tie the
// answer is `take_on_tie`.
bool Improves(double revenue, int sold, double best_revenue, int best_sold,
              bool take_on_tie) {
  const double scale =
      std::max({std::abs(revenue), std::abs(best_revenue), 1e-300});
  const double diff = revenue - best_revenue;
  if (diff > kRevenueTieTolerance * scale) return true;
  if (diff < -kRevenueTieTolerance * scale) return false;
  if (sold != best_sold) return sold > best_sold;
  return take_on_tie;
}

void RequireBundles(const Instance& instance, const char* algo) {
  if (instance.empty()) {
    throw InvalidInputError(std::string(algo) + " needs at least one bundle");
  }
}

std::vector<bool> SoldWithinSlack(const std::vector<double>& weights,
                                  const Instance& instance) {
  std::vector<bool> sold(instance.num_bundles());
  for (int e = 0; e < instance.num_bundles(); ++e) {
    double price = 0.0;
    for (int j : instance.bundle(e).items) price += weights[j];
    const double v = instance.value(e);
    sold[e] = price <= v + kIntendedSaleSlack * std::max(1.0, v);
  }
  return sold;
}

std::vector<double> ClampedPrimal(const LpSolution& sol, int n) {
  std::vector<double> w(n, 0.0);
  for (int j = 0; j < n; ++j) w[j] = std::max(0.0, sol.primal[j]);
  return w;
}

AlgoReport MakeReport(std::string name, PricingVector vector,
                      const Instance& instance,
                      std::vector<CandidateDiagnostic> diagnostics,
                      Clock::time_point start) {
  PricingOutcome outcome = Evaluate(vector, instance);
  outcome.elapsed = Clock::now() - start;
  return AlgoReport{std::move(name), std::move(vector), std::move(outcome),
                    std::move(diagnostics)};
}

// LP over the sold set: max sum_{e in T} w(e) s.t. w(e) <= v_e for e in T.
// Bundles with the same item set share one row at the smallest value.
std::vector<double> RefineWeights(const Instance& instance,
                                  const std::vector<bool>& keep,
                                  double* objective) {
  const int n = instance.num_items();
  LinearProgram lp(n);
  std::vector<double> c(n, 0.0);
  std::map<std::vector<int>, int> row_of;
  for (int e = 0; e < instance.num_bundles(); ++e) {
    if (!keep[e]) continue;
    const Bundle& b = instance.bundle(e);
    for (int j : b.items) c[j] += 1.0;
    if (b.items.empty()) continue;
    auto [it, inserted] = row_of.try_emplace(b.items, lp.num_rows());
    if (inserted) {
      std::vector<LpTerm> terms;
      for (int j : b.items) terms.push_back({j, 1.0});
      lp.AddSparseRow(std::move(terms), Relation::kLessEqual, b.value);
    } else if (b.value < lp.row(it->second).rhs) {
      lp.SetRhs(it->second, b.value);
    }
  }
  if (lp.num_rows() == 0) {
    if (objective != nullptr) *objective = 0.0;
    return std::vector<double>(n, 0.0);
  }
  lp.SetObjective(c);
  const LpSolution sol = Solve(lp);
  if (!sol.optimal()) {
    throw SolverError(std::string("sold-set LP ended ") +
                      StatusName(sol.status));
  }
  if (objective != nullptr) *objective = sol.objective;
  std::vector<double> w = ClampedPrimal(sol, n);
  SnapToSales(w, instance, SoldWithinSlack(w, instance));
  return w;
}

}  // namespace

void SnapToSales(std::vector<double>& weights, const Instance& instance,
                 const std::vector<bool>& keep_sold) {
  constexpr int kRounds = 64;
  for (int round = 0; round <= kRounds; ++round) {
    bool violated = false;
    const double shave = std::ldexp(1.0, -52 + std::min(round, 40));
    for (int e = 0; e < instance.num_bundles(); ++e) {
      if (!keep_sold[e]) continue;
      const Bundle& b = instance.bundle(e);
      double price = 0.0;
      for (int j : b.items) price += weights[j];
      if (price <= b.value) continue;
      violated = true;
      if (b.value <= 0.0 || round == kRounds) {
        for (int j : b.items) weights[j] = 0.0;
      } else {
        const double f = b.value / price * (1.0 - shave);
        for (int j : b.items) weights[j] *= f;
      }
    }
    if (!violated) return;
  }
}

AlgoReport Ubp(const Instance& instance) {
  const auto start = Clock::now();
  RequireBundles(instance, "ubp");
  std::vector<double> values = instance.values();
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<CandidateDiagnostic> diags;
  double best_price = values.front();
  double best_revenue = -1.0;
  int best_sold = -1;
  const int m = static_cast<int>(values.size());
  for (int i = 0; i < m;) {
    int k = i;
    while (k < m && values[k] == values[i]) ++k;
    const double price = values[i];
    const double revenue = price * k;
    diags.push_back({price, revenue, revenue, k, false});
    if (Improves(revenue, k, best_revenue, best_sold, true)) {
      best_revenue = revenue;
      best_sold = k;
      best_price = price;
    }
    i = k;
  }
  return MakeReport("ubp", PricingVector::UniformBundle(best_price), instance,
                    std::move(diags), start);
}

AlgoReport Uip(const Instance& instance) {
  const auto start = Clock::now();
  RequireBundles(instance, "uip");
  struct Dense {
    double q;
    int size;
  };
  std::vector<Dense> dense;
  int empty_count = 0;
  for (const Bundle& b : instance.bundles()) {
    if (b.items.empty()) {
      ++empty_count;
    } else {
      const int s = static_cast<int>(b.items.size());
      dense.push_back({b.value / s, s});
    }
  }
  if (dense.empty()) throw InvalidInputError("uip needs a non-empty bundle");
  std::sort(dense.begin(), dense.end(),
            [](const Dense& a, const Dense& b) { return a.q > b.q; });

  std::vector<CandidateDiagnostic> diags;
  double best_w = dense.front().q;
  double best_revenue = -1.0;
  int best_sold = -1;
  double size_sum = 0.0;
  const int d = static_cast<int>(dense.size());
  for (int i = 0; i < d;) {
    int k = i;
    while (k < d && dense[k].q == dense[i].q) size_sum += dense[k++].size;
    const double w = dense[i].q;
    const double revenue = w * size_sum;
    const int sold = k + empty_count;
    diags.push_back({w, revenue, revenue, sold, false});
    if (Improves(revenue, sold, best_revenue, best_sold, true)) {
      best_revenue = revenue;
      best_sold = sold;
      best_w = w;
    }
    i = k;
  }

  const std::vector<int> degree = ItemDegrees(instance);
  std::vector<bool> keep(instance.num_bundles());
  for (int e = 0; e < instance.num_bundles(); ++e) {
    const Bundle& b = instance.bundle(e);
    keep[e] = b.items.empty() ||
              b.value / static_cast<double>(b.items.size()) >= best_w;
  }
  // Shave the common weight by a few ulps until the rounded sums fit.
  double w = best_w;
  std::vector<double> weights(instance.num_items());
  for (int round = 0;; ++round) {
    for (int j = 0; j < instance.num_items(); ++j) {
      weights[j] = degree[j] > 0 ? w : 0.0;
    }
    bool ok = true;
    for (int e = 0; e < instance.num_bundles() && ok; ++e) {
      if (!keep[e]) continue;
      double price = 0.0;
      for (int j : instance.bundle(e).items) price += weights[j];
      ok = price <= instance.value(e);
    }
    if (ok || round > 60) break;
    w *= 1.0 - std::ldexp(1.0, -52 + round);
  }
  return MakeReport("uip", PricingVector::Items(std::move(weights)), instance,
                    std::move(diags), start);
}

AlgoReport Lpip(const Instance& instance) {
  const auto start = Clock::now();
  RequireBundles(instance, "lpip");
  const int n = instance.num_items();
  const int m = instance.num_bundles();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.value(a) > instance.value(b);
  });

  SimplexSolver solver{LinearProgram(n)};
  std::map<std::vector<int>, int> row_of;
  std::vector<double> c(n, 0.0);
  std::vector<CandidateDiagnostic> diags;
  std::optional<PricingVector> best;
  double best_revenue = -1.0;
  int best_sold = -1;

  auto consider = [&](std::vector<double> weights, CandidateDiagnostic diag) {
    PricingVector vec = PricingVector::Items(std::move(weights));
    const PricingOutcome out = Evaluate(vec, instance);
    diag.revenue = out.revenue;
    diag.num_sold = out.num_sold();
    diags.push_back(diag);
    if (Improves(out.revenue, out.num_sold(), best_revenue, best_sold,
                 false)) {
      best_revenue = out.revenue;
      best_sold = out.num_sold();
      best = std::move(vec);
    }
  };

  for (int i = 0; i < m;) {
    const double threshold = instance.value(order[i]);
    int k = i;
    for (; k < m && instance.value(order[k]) == threshold; ++k) {
      const Bundle& b = instance.bundle(order[k]);
      for (int j : b.items) c[j] += 1.0;
      if (b.items.empty()) continue;
      auto [it, inserted] = row_of.try_emplace(b.items, 0);
      if (inserted) {
        std::vector<LpTerm> terms;
        for (int j : b.items) terms.push_back({j, 1.0});
        it->second = solver.AddRow(std::move(terms), Relation::kLessEqual,
                                   b.value);
      } else {
        solver.SetRhs(it->second, b.value);
      }
    }
    i = k;
    solver.SetObjective(c);
    LpSolution sol;
    try {
      sol = solver.Solve();
    } catch (const SolverError&) {
      diags.push_back({threshold, 0.0, 0.0, 0, true});
      continue;
    }
    if (!sol.optimal()) {
      solver.ResetBasis();
      diags.push_back({threshold, 0.0, 0.0, 0, true});
      continue;
    }
    std::vector<double> w = ClampedPrimal(sol, n);
    SnapToSales(w, instance, SoldWithinSlack(w, instance));
    consider(std::move(w), {threshold, sol.objective, 0.0, 0, false});
  }

  // One more LP: the sold set of the best uniform item weight. Its optimum
  // is at least that pricing's revenue.
  const AlgoReport uniform = Uip(instance);
  try {
    double objective = 0.0;
    std::vector<double> w = RefineWeights(instance, uniform.outcome.sold,
                                          &objective);
    const std::vector<double>& uw = uniform.vector.items().weights;
    const double weight =
        uw.empty() ? 0.0 : *std::max_element(uw.begin(), uw.end());
    consider(std::move(w), {weight, objective, 0.0, 0, false});
  } catch (const SolverError&) {
    diags.push_back({0.0, 0.0, 0.0, 0, true});
  }

  if (!best) throw SolverError("every lpip LP failed");
  return MakeReport("lpip", std::move(*best), instance, std::move(diags),
                    start);
}

AlgoReport Cip(const Instance& instance, const CipConfig& config) {
  const auto start = Clock::now();
  RequireBundles(instance, "cip");
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw InvalidInputError("cip epsilon must be a finite positive number");
  }
  const int n = instance.num_items();
  const int m = instance.num_bundles();
  const std::vector<std::vector<int>> incidence = ItemIncidence(instance);
  int max_degree = 0;
  for (const auto& inc : incidence) {
    max_degree = std::max(max_degree, static_cast<int>(inc.size()));
  }
  const double cap = config.max_capacity.value_or(std::max(max_degree, 1));
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw InvalidInputError("cip max capacity must be finite and positive");
  }
  constexpr int kMaxSweep = 10000;
  std::vector<double> capacities;
  for (double k = 1.0; k < cap; k *= 1.0 + config.epsilon) {
    capacities.push_back(k);
    if (static_cast<int>(capacities.size()) > kMaxSweep) {
      throw InvalidInputError("cip capacity sweep too long; raise epsilon");
    }
  }
  capacities.push_back(cap);

  // Items with the same bundle pattern give identical capacity rows.
  std::map<std::vector<int>, int> class_of;
  std::vector<std::vector<int>> class_items;
  LinearProgram lp(m);
  for (int e = 0; e < m; ++e) {
    lp.SetObjective(e, instance.value(e));
    lp.SetBounds(e, 0.0, 1.0);
  }
  for (int j = 0; j < n; ++j) {
    if (incidence[j].empty()) continue;
    auto [it, inserted] =
        class_of.try_emplace(incidence[j], static_cast<int>(class_items.size()));
    if (inserted) {
      class_items.emplace_back();
      std::vector<LpTerm> terms;
      for (int e : incidence[j]) terms.push_back({e, 1.0});
      lp.AddSparseRow(std::move(terms), Relation::kLessEqual, 1.0);
    }
    class_items[it->second].push_back(j);
  }
  const std::vector<double> tiebreak(lp.num_rows(), 1.0);

  std::vector<CandidateDiagnostic> diags;
  std::optional<PricingVector> best;
  double best_revenue = -1.0;
  int best_sold = -1;
  for (double k : capacities) {
    for (int r = 0; r < lp.num_rows(); ++r) lp.SetRhs(r, k);
    LpSolution sol;
    try {
      sol = SolveWithDualTiebreak(lp, tiebreak);
    } catch (const SolverError&) {
      diags.push_back({k, 0.0, 0.0, 0, true});
      continue;
    }
    if (!sol.optimal()) {
      diags.push_back({k, 0.0, 0.0, 0, true});
      continue;
    }
    std::vector<double> w(n, 0.0);
    for (size_t r = 0; r < class_items.size(); ++r) {
      const double share =
          std::max(0.0, sol.duals[r]) / static_cast<double>(class_items[r].size());
      for (int j : class_items[r]) w[j] = share;
    }
    SnapToSales(w, instance, SoldWithinSlack(w, instance));
    PricingVector vec = PricingVector::Items(std::move(w));
    const PricingOutcome out = Evaluate(vec, instance);
    diags.push_back({k, sol.objective, out.revenue, out.num_sold(), false});
    if (Improves(out.revenue, out.num_sold(), best_revenue, best_sold,
                 false)) {
      best_revenue = out.revenue;
      best_sold = out.num_sold();
      best = std::move(vec);
    }
  }
  if (!best) throw SolverError("every cip capacity LP failed");
  return MakeReport("cip", std::move(*best), instance, std::move(diags),
                    start);
}

AlgoReport Layering(const Instance& instance) {
  const auto start = Clock::now();
  RequireBundles(instance, "layering");
  const int n = instance.num_items();
  const int m = instance.num_bundles();
  std::vector<int> remaining;
  for (int e = 0; e < m; ++e) {
    if (!instance.bundle(e).items.empty()) remaining.push_back(e);
  }
  std::stable_sort(remaining.begin(), remaining.end(), [&](int a, int b) {
    return instance.value(a) > instance.value(b);
  });

  std::vector<CandidateDiagnostic> diags;
  std::vector<int> best_layer;
  double best_value = -1.0;
  std::vector<int> cover_count(n, 0);
  int layer_index = 0;
  while (!remaining.empty()) {
    // Greedy cover in decreasing value order.
    std::vector<int> layer;
    for (int e : remaining) {
      bool fresh = false;
      for (int j : instance.bundle(e).items) fresh |= cover_count[j] == 0;
      if (!fresh) continue;
      layer.push_back(e);
      for (int j : instance.bundle(e).items) ++cover_count[j];
    }
    // Prune to an inclusion-minimal cover, cheapest edges first.
    std::vector<bool> dropped(layer.size(), false);
    for (int p = static_cast<int>(layer.size()) - 1; p >= 0; --p) {
      const auto& items = instance.bundle(layer[p]).items;
      const bool redundant = std::all_of(
          items.begin(), items.end(), [&](int j) { return cover_count[j] > 1; });
      if (!redundant) continue;
      dropped[p] = true;
      for (int j : items) --cover_count[j];
    }
    std::vector<int> kept;
    double value = 0.0;
    for (size_t p = 0; p < layer.size(); ++p) {
      if (dropped[p]) continue;
      kept.push_back(layer[p]);
      value += instance.value(layer[p]);
    }
    diags.push_back({static_cast<double>(layer_index), value, 0.0,
                     static_cast<int>(kept.size()), false});
    if (value > best_value) {
      best_value = value;
      best_layer = kept;
    }
    for (int e : kept) {
      for (int j : instance.bundle(e).items) cover_count[j] = 0;
    }
    std::vector<bool> in_layer(m, false);
    for (int e : kept) in_layer[e] = true;
    std::erase_if(remaining, [&](int e) { return in_layer[e]; });
    ++layer_index;
  }

  std::vector<double> w(n, 0.0);
  for (int e : best_layer) {
    for (int j : instance.bundle(e).items) ++cover_count[j];
  }
  for (int e : best_layer) {
    for (int j : instance.bundle(e).items) {
      if (cover_count[j] == 1) {
        w[j] = instance.value(e);
        break;
      }
    }
  }
  return MakeReport("layering", PricingVector::Items(std::move(w)), instance,
                    std::move(diags), start);
}

AlgoReport XosCombine(std::span<const AlgoReport> reports,
                      const Instance& instance) {
  const auto start = Clock::now();
  if (reports.size() < 2) {
    throw InvalidInputError("xos needs at least two item pricings");
  }
  std::vector<std::vector<double>> rows;
  std::vector<CandidateDiagnostic> diags;
  for (const AlgoReport& r : reports) {
    if (r.vector.kind() != PricingVector::Kind::kItem) {
      throw InvalidInputError("xos rows must come from item pricings");
    }
    r.vector.CheckCompatible(instance);
    rows.push_back(r.vector.items().weights);
    diags.push_back({static_cast<double>(diags.size()), r.outcome.revenue,
                     r.outcome.revenue, r.outcome.num_sold(), false});
  }
  return MakeReport("xos", PricingVector::Xos(std::move(rows)), instance,
                    std::move(diags), start);
}

AlgoReport LpRefine(const PricingVector& pricing, const Instance& instance) {
  const auto start = Clock::now();
  const PricingOutcome input = Evaluate(pricing, instance);
  double objective = 0.0;
  std::vector<double> w = RefineWeights(instance, input.sold, &objective);
  std::vector<CandidateDiagnostic> diags = {
      {0.0, objective, 0.0, input.num_sold(), false}};
  AlgoReport report = MakeReport("lp_refine", PricingVector::Items(std::move(w)),
                                 instance, std::move(diags), start);
  report.diagnostics.front().revenue = report.outcome.revenue;
  return report;
}

OracleResult OptimalItemPricing(const Instance& instance) {
  const int m = instance.num_bundles();
  if (m > kOracleMaxBundles) {
    throw InvalidInputError("oracle refuses instances with more than " +
                            std::to_string(kOracleMaxBundles) + " bundles");
  }
  OracleResult best{0.0, std::vector<double>(instance.num_items(), 0.0)};
  std::vector<bool> keep(m);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    for (int e = 0; e < m; ++e) keep[e] = (mask >> e) & 1u;
    std::vector<double> w = RefineWeights(instance, keep, nullptr);
    const double revenue =
        Evaluate(PricingVector::Items(w), instance).revenue;
    if (revenue > best.revenue) best = {revenue, std::move(w)};
  }
  return best;
}

std::span<const std::string_view> AlgorithmNames() {
  static constexpr std::array<std::string_view, 6> kNames = {
      "ubp", "uip", "lpip", "cip", "layering", "xos"};
  return kNames;
}

AlgoReport RunAlgorithm(std::string_view name, const Instance& instance,
                        const AlgorithmOptions& options) {
  const auto start = Clock::now();
  std::optional<AlgoReport> report;
  if (name == "ubp") {
    report = Ubp(instance);
  } else if (name == "uip") {
    report = Uip(instance);
  } else if (name == "lpip") {
    report = Lpip(instance);
  } else if (name == "cip") {
    report = Cip(instance, options.cip);
  } else if (name == "layering") {
    report = Layering(instance);
  } else if (name == "xos") {
    const std::array<AlgoReport, 2> parts = {Lpip(instance),
                                             Cip(instance, options.cip)};
    report = XosCombine(parts, instance);
  } else {
    throw InvalidInputError("unknown algorithm '" + std::string(name) + "'");
  }
  if (options.refine) {
    AlgoReport refined = LpRefine(report->vector, instance);
    refined.algorithm = report->algorithm + "+refine";
    report = std::move(refined);
  }
  report->outcome.elapsed = Clock::now() - start;
  return std::move(*report);
}

}  // namespace qprice
