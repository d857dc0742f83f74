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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "qprice/algorithms.h"
#include "qprice/bounds.h"
#include "qprice/generators.h"
#include "qprice/instance.h"
#include "qprice/pricing.h"
#include "test_util.h"

namespace qprice {
namespace {

using testing::Harmonic;
using testing::RandomInstance;

Instance Make(int n, std::vector<std::pair<std::vector<int>, double>> edges) {
  std::vector<Bundle> bundles;
  for (auto& [items, v] : edges) bundles.push_back({items, v});
  return Instance(n, std::move(bundles));
}

Instance Singletons(std::vector<double> values) {
  std::vector<Bundle> bundles;
  for (size_t i = 0; i < values.size(); ++i) {
    bundles.push_back({{static_cast<int>(i)}, values[i]});
  }
  return Instance(static_cast<int>(values.size()), std::move(bundles));
}

// The two-bundle instance ({0}, 1), ({0,1}, 3).
Instance Nested() { return Make(2, {{{0}, 1.0}, {{0, 1}, 3.0}}); }

void ExpectConsistent(const AlgoReport& r, const Instance& inst) {
  const PricingOutcome again = Evaluate(r.vector, inst);
  EXPECT_EQ(again.revenue, r.outcome.revenue) << r.algorithm;
  EXPECT_EQ(again.sold, r.outcome.sold) << r.algorithm;
  EXPECT_EQ(again.prices, r.outcome.prices) << r.algorithm;
}

TEST(UbpTest, HarmonicValuesTieToSmallestPrice) {
  const AlgoReport r = Ubp(Singletons({1.0, 0.5, 1.0 / 3.0}));
  EXPECT_DOUBLE_EQ(r.vector.uniform().price, 1.0 / 3.0);
  EXPECT_NEAR(r.outcome.revenue, 1.0, 1e-12);
  EXPECT_EQ(r.diagnostics.size(), 3u);
}

TEST(UbpTest, Examples) {
  const AlgoReport a = Ubp(Singletons({3, 2, 2}));
  EXPECT_EQ(a.vector.uniform().price, 2.0);
  EXPECT_EQ(a.outcome.revenue, 6.0);
  const AlgoReport b = Ubp(Singletons({5}));
  EXPECT_EQ(b.vector.uniform().price, 5.0);
  EXPECT_EQ(b.outcome.revenue, 5.0);
  EXPECT_THROW(Ubp(Instance()), InvalidInputError);
}

TEST(UipTest, Examples) {
  const AlgoReport a = Uip(Make(2, {{{0}, 2.0}, {{0, 1}, 2.0}}));
  EXPECT_EQ(a.vector.items().weights, (std::vector<double>{1, 1}));
  EXPECT_EQ(a.outcome.revenue, 3.0);

  const AlgoReport b = Uip(Make(2, {{{0, 1}, 4.0}}));
  EXPECT_EQ(b.vector.items().weights, (std::vector<double>{2, 2}));
  EXPECT_EQ(b.outcome.revenue, 4.0);

  const AlgoReport c = Uip(Nested());
  EXPECT_EQ(c.vector.items().weights, (std::vector<double>{1, 1}));
  EXPECT_EQ(c.outcome.revenue, 3.0);
}

TEST(UipTest, EmptyBundlesAreNotCandidates) {
  EXPECT_THROW(Uip(Make(2, {{{}, 3.0}})), InvalidInputError);
  const AlgoReport r = Uip(Make(3, {{{}, 3.0}, {{0}, 2.0}}));
  EXPECT_EQ(r.vector.items().weights, (std::vector<double>{2, 0, 0}));
  EXPECT_EQ(r.outcome.revenue, 2.0);
  EXPECT_EQ(r.outcome.num_sold(), 2);
}

TEST(UipTest, SellsEveryIntendedBundleDespiteRounding) {
  // 0.3 / 3 summed three times overshoots 0.3 in floating point.
  const Instance inst = Make(3, {{{0, 1, 2}, 0.3}});
  const AlgoReport r = Uip(inst);
  EXPECT_TRUE(r.outcome.sold[0]);
  EXPECT_NEAR(r.outcome.revenue, 0.3, 1e-15);
}

TEST(LpipTest, Examples) {
  const AlgoReport a = Lpip(Nested());
  EXPECT_NEAR(a.vector.items().weights[0], 1.0, 1e-9);
  EXPECT_NEAR(a.vector.items().weights[1], 2.0, 1e-9);
  EXPECT_NEAR(a.outcome.revenue, 4.0, 1e-9);

  const AlgoReport b = Lpip(Singletons({7}));
  EXPECT_NEAR(b.vector.items().weights[0], 7.0, 1e-12);
  EXPECT_NEAR(b.outcome.revenue, 7.0, 1e-12);

  const AlgoReport c = Lpip(GenHarmonic(3));
  EXPECT_NEAR(c.outcome.revenue, 11.0 / 6.0, 1e-9);
  EXPECT_EQ(c.outcome.num_sold(), 3);
}

TEST(LpipTest, DuplicateItemSetsUseSmallestValue) {
  const Instance inst = Make(1, {{{0}, 5.0}, {{0}, 5.0}, {{0}, 2.0}});
  const AlgoReport r = Lpip(inst);
  EXPECT_NEAR(r.outcome.revenue, 10.0, 1e-9);
  ExpectConsistent(r, inst);
}

TEST(CipTest, CapacitySweep) {
  const Instance inst = Make(1, {{{0}, 5.0}, {{0}, 3.0}});
  const AlgoReport r = Cip(inst, CipConfig{1.0, std::nullopt});
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].parameter, 1.0);
  EXPECT_NEAR(r.diagnostics[0].objective, 5.0, 1e-9);
  EXPECT_NEAR(r.diagnostics[0].revenue, 5.0, 1e-9);
  EXPECT_EQ(r.diagnostics[1].parameter, 2.0);
  EXPECT_NEAR(r.diagnostics[1].objective, 8.0, 1e-9);
  EXPECT_NEAR(r.diagnostics[1].revenue, 6.0, 1e-9);
  EXPECT_NEAR(r.vector.items().weights[0], 3.0, 1e-9);
  EXPECT_NEAR(r.outcome.revenue, 6.0, 1e-9);
}

TEST(CipTest, SingleBundle) {
  for (double k : {1.0, 2.0, 5.0}) {
    const AlgoReport r = Cip(Singletons({4}), CipConfig{1.0, k});
    EXPECT_NEAR(r.vector.items().weights[0], 4.0, 1e-9);
    EXPECT_NEAR(r.outcome.revenue, 4.0, 1e-9);
  }
}

TEST(CipTest, DisjointSingletons) {
  const AlgoReport r = Cip(Singletons({1, 2, 3}), CipConfig{1.0, 1.0});
  ASSERT_EQ(r.diagnostics.size(), 1u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(r.vector.items().weights[j], j + 1.0, 1e-9);
  }
  EXPECT_NEAR(r.outcome.revenue, 6.0, 1e-9);
}

TEST(CipTest, SweepShapeAndErrors) {
  const Instance inst = Make(1, {{{0}, 1}, {{0}, 1}, {{0}, 1}, {{0}, 1},
                                 {{0}, 1}, {{0}, 1}, {{0}, 1}, {{0}, 1},
                                 {{0}, 1}, {{0}, 1}});
  const AlgoReport r = Cip(inst, CipConfig{1.0, std::nullopt});
  std::vector<double> ks;
  for (const auto& d : r.diagnostics) ks.push_back(d.parameter);
  EXPECT_EQ(ks, (std::vector<double>{1, 2, 4, 8, 10}));
  EXPECT_THROW(Cip(inst, CipConfig{0.0, std::nullopt}), InvalidInputError);
  EXPECT_THROW(Cip(inst, CipConfig{1.0, -1.0}), InvalidInputError);
}

TEST(CipTest, SharedItemsSplitEvenly) {
  // Items 0 and 1 always appear together, so their capacity rows coincide.
  const Instance inst = Make(3, {{{0, 1}, 4.0}, {{0, 1, 2}, 6.0}});
  const AlgoReport r = Cip(inst);
  ExpectConsistent(r, inst);
  EXPECT_EQ(r.vector.items().weights[0], r.vector.items().weights[1]);
  EXPECT_LE(r.outcome.revenue, OptimalItemPricing(inst).revenue + 1e-9);
}

TEST(LayeringTest, TriangleUsesFirstLayer) {
  // a=0, b=1, c=2. The greedy first layer is {e3, e2} worth 7.
  const Instance inst = Make(3, {{{0, 1}, 2.0}, {{1, 2}, 3.0}, {{0, 2}, 4.0}});
  const AlgoReport r = Layering(inst);
  EXPECT_EQ(r.vector.items().weights, (std::vector<double>{4, 3, 0}));
  EXPECT_EQ(r.outcome.revenue, 7.0);
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].objective, 7.0);
  EXPECT_EQ(r.diagnostics[1].objective, 2.0);
  EXPECT_GE(r.outcome.revenue, SumBound(inst).value / 2.0);
}

TEST(LayeringTest, SimpleCases) {
  const AlgoReport a = Layering(Singletons({9}));
  EXPECT_EQ(a.vector.items().weights, (std::vector<double>{9}));
  EXPECT_EQ(a.outcome.revenue, 9.0);
  const AlgoReport b = Layering(Singletons({1, 2, 3, 4}));
  EXPECT_EQ(b.outcome.revenue, 10.0);
  const AlgoReport c = Layering(Make(2, {{{}, 1.0}}));
  EXPECT_EQ(c.vector.items().weights, (std::vector<double>{0, 0}));
}

TEST(LayeringTest, LayersAreMinimalCovers) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = RandomInstance(rng, 30, 12, 5);
    const AlgoReport r = Layering(inst);
    const int b = ComputeStats(inst).max_degree;
    EXPECT_LE(static_cast<int>(r.diagnostics.size()), b);
    EXPECT_GE(r.outcome.revenue, SumBound(inst).value / b - 1e-12);
  }
}

TEST(XosTest, Examples) {
  const Instance one = Make(2, {{{0, 1}, 3.0}});
  AlgoReport a{"a", PricingVector::Items({1, 0}), {}, {}};
  AlgoReport b{"b", PricingVector::Items({0, 3}), {}, {}};
  std::vector<AlgoReport> parts = {a, b};
  const AlgoReport x = XosCombine(parts, one);
  EXPECT_EQ(x.outcome.prices[0], 3.0);
  EXPECT_TRUE(x.outcome.sold[0]);

  std::vector<AlgoReport> same = {a, a};
  EXPECT_EQ(XosCombine(same, one).outcome.revenue,
            Evaluate(a.vector, one).revenue);

  std::vector<AlgoReport> even = {
      {"a", PricingVector::Items({2, 0}), {}, {}},
      {"b", PricingVector::Items({0, 2}), {}, {}}};
  EXPECT_EQ(XosCombine(even, one).outcome.revenue, 2.0);

  const Instance single = Make(1, {{{0}, 1.0}});
  std::vector<AlgoReport> drop = {{"a", PricingVector::Items({2}), {}, {}},
                                  {"b", PricingVector::Items({0}), {}, {}}};
  const AlgoReport d = XosCombine(drop, single);
  EXPECT_FALSE(d.outcome.sold[0]);
  EXPECT_EQ(d.outcome.revenue, 0.0);
}

TEST(XosTest, Errors) {
  const Instance one = Make(2, {{{0, 1}, 3.0}});
  std::vector<AlgoReport> lone = {{"a", PricingVector::Items({1, 0}), {}, {}}};
  EXPECT_THROW(XosCombine(lone, one), InvalidInputError);
  std::vector<AlgoReport> bad = {{"a", PricingVector::Items({1, 0}), {}, {}},
                                 {"b", PricingVector::Items({1}), {}, {}}};
  EXPECT_THROW(XosCombine(bad, one), InvalidInputError);
  std::vector<AlgoReport> kind = {{"a", PricingVector::Items({1, 0}), {}, {}},
                                  {"b", PricingVector::UniformBundle(1), {}, {}}};
  EXPECT_THROW(XosCombine(kind, one), InvalidInputError);
}

TEST(LpRefineTest, Examples) {
  const Instance inst = Nested();
  const AlgoReport r = LpRefine(PricingVector::UniformBundle(1.0), inst);
  EXPECT_NEAR(r.vector.items().weights[0], 1.0, 1e-9);
  EXPECT_NEAR(r.vector.items().weights[1], 2.0, 1e-9);
  EXPECT_NEAR(r.outcome.revenue, 4.0, 1e-9);

  const AlgoReport again = LpRefine(r.vector, inst);
  EXPECT_NEAR(again.outcome.revenue, r.outcome.revenue, 1e-12);

  const AlgoReport none = LpRefine(PricingVector::UniformBundle(10.0), inst);
  EXPECT_EQ(none.vector.items().weights, (std::vector<double>{0, 0}));
  EXPECT_EQ(none.outcome.revenue, 0.0);
}

TEST(OracleTest, Examples) {
  EXPECT_NEAR(OptimalItemPricing(Nested()).revenue, 4.0, 1e-9);
  EXPECT_NEAR(OptimalItemPricing(Singletons({5})).revenue, 5.0, 1e-12);
  std::vector<double> many(kOracleMaxBundles + 1, 1.0);
  EXPECT_THROW(OptimalItemPricing(Singletons(many)), InvalidInputError);
}

TEST(OracleTest, PartitionFourBaseline) {
  // Frozen from the first run of the enumeration. By hand: selling the
  // 4-set caps total weight at 1 (revenue <= 3); otherwise each aligned pair
  // with its two singletons yields at most 2.
  const OracleResult r = OptimalItemPricing(GenPartition(4));
  EXPECT_NEAR(r.revenue, 4.0, 1e-9);
  EXPECT_NEAR(Evaluate(PricingVector::Items(r.weights), GenPartition(4)).revenue,
              r.revenue, 0.0);
}

// Independent lower bound: every weight vector on a coarse lattice.
double LatticeBest(const Instance& inst, double step, int levels) {
  const int n = inst.num_items();
  std::vector<int> idx(n, 0);
  double best = 0.0;
  while (true) {
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = idx[j] * step;
    best = std::max(best, Evaluate(PricingVector::Items(w), inst).revenue);
    int j = 0;
    while (j < n && ++idx[j] == levels) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

TEST(OracleTest, DominatesLatticeSearch) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = RandomInstance(rng, 6, 3, 3);
    const double oracle = OptimalItemPricing(inst).revenue;
    EXPECT_GE(oracle + 1e-9, LatticeBest(inst, 0.05, 21)) << trial;
  }
}

TEST(PropertyTest, UbpHarmonicBound) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> md(1, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = md(rng);
    const Instance inst = RandomInstance(rng, m, 10, 4);
    const double sum = SumBound(inst).value;
    const AlgoReport r = Ubp(inst);
    EXPECT_GE(r.outcome.revenue, sum / Harmonic(m) * (1 - 1e-12));
  }
}

TEST(PropertyTest, DominanceAndConsistency) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> md(1, 40), nd(1, 15);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst =
        testing::RandomModelInstance(rng, trial, md(rng), nd(rng), 6);
    double max_v = 0.0;
    for (const Bundle& b : inst.bundles()) max_v = std::max(max_v, b.value);
    const AlgoReport ubp = Ubp(inst);
    const AlgoReport uip = Uip(inst);
    const AlgoReport lpip = Lpip(inst);
    const AlgoReport cip = Cip(inst);
    const AlgoReport lay = Layering(inst);
    for (const AlgoReport* r : {&ubp, &uip, &lpip, &cip, &lay}) {
      ExpectConsistent(*r, inst);
      EXPECT_LE(r->outcome.revenue, SumBound(inst).value * (1 + 1e-12));
    }
    EXPECT_GE(ubp.outcome.revenue, max_v);
    EXPECT_GE(uip.outcome.revenue, max_v * (1 - 1e-12));
    EXPECT_GE(lpip.outcome.revenue, uip.outcome.revenue * (1 - 1e-9));
    const int b = std::max(1, ComputeStats(inst).max_degree);
    EXPECT_GE(lay.outcome.revenue, SumBound(inst).value / b * (1 - 1e-12));
    for (const AlgoReport* r : {&uip, &lpip, &cip, &lay}) {
      const AlgoReport refined = LpRefine(r->vector, inst);
      ExpectConsistent(refined, inst);
      EXPECT_GE(refined.outcome.revenue, r->outcome.revenue * (1 - 1e-9));
    }
  }
}

TEST(PropertyTest, BelowOracle) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> md(1, 10), nd(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = RandomInstance(rng, md(rng), nd(rng), 4);
    const double oracle = OptimalItemPricing(inst).revenue;
    for (const char* name : {"uip", "lpip", "cip", "layering"}) {
      const AlgoReport r = RunAlgorithm(name, inst);
      EXPECT_LE(r.outcome.revenue, oracle + 1e-6) << name << " " << trial;
    }
  }
}

TEST(DispatchTest, NamesAndRefine) {
  const Instance inst = Nested();
  for (std::string_view name : AlgorithmNames()) {
    const AlgoReport r = RunAlgorithm(name, inst);
    EXPECT_EQ(r.algorithm, name);
    ExpectConsistent(r, inst);
  }
  const AlgoReport x = RunAlgorithm("xos", inst);
  EXPECT_EQ(x.vector.kind(), PricingVector::Kind::kXos);
  EXPECT_EQ(x.vector.xos().rows.size(), 2u);
  AlgorithmOptions opts;
  opts.refine = true;
  const AlgoReport r = RunAlgorithm("ubp", inst, opts);
  EXPECT_EQ(r.algorithm, "ubp+refine");
  // ubp picks P = 3 here, so only the pair must stay sold.
  EXPECT_GE(r.outcome.revenue, 3.0 - 1e-9);
  EXPECT_THROW(RunAlgorithm("nope", inst), InvalidInputError);
}

TEST(SnapTest, KeepsIntendedSalesExact) {
  const Instance inst = Make(3, {{{0, 1, 2}, 0.3}, {{0}, 0.1}});
  std::vector<double> w = {0.1, 0.1, 0.1 + 1e-12};
  SnapToSales(w, inst, {true, true});
  double price = w[0] + w[1] + w[2];
  EXPECT_LE(price, 0.3);
  EXPECT_LE(w[0], 0.1);
  EXPECT_GT(price, 0.3 - 1e-9);
}

}  // namespace
}  // namespace qprice
