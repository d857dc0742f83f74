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
#include <cstdint>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "qprice/algorithms.h"
#include "qprice/bounds.h"
#include "qprice/generators.h"

namespace qprice {
namespace {

double MeanSize(const Instance& inst) {
  return ComputeStats(inst).avg_bundle_size;
}

TEST(WorkloadTest, Deterministic) {
  WorkloadSpec spec{WorkloadFamily::kUniform, 50, 20, 0, 0, 1.5, 7};
  EXPECT_EQ(GenWorkload(spec), GenWorkload(spec));
  spec.family = WorkloadFamily::kSkewed;
  EXPECT_EQ(GenWorkload(spec), GenWorkload(spec));
  WorkloadSpec other = spec;
  other.seed = 8;
  EXPECT_NE(GenWorkload(spec), GenWorkload(other));
}

TEST(WorkloadTest, UniformSizesCenterOnMean) {
  WorkloadSpec spec;
  spec.n = 1000;
  spec.m = 100;
  spec.mean_size = 400;
  spec.seed = 3;
  const Instance inst = GenWorkload(spec);
  EXPECT_EQ(inst.num_bundles(), 100);
  EXPECT_NEAR(MeanSize(inst), 400.0, 40.0);
  for (const Bundle& b : inst.bundles()) {
    EXPECT_TRUE(std::is_sorted(b.items.begin(), b.items.end()));
    EXPECT_EQ(std::adjacent_find(b.items.begin(), b.items.end()),
              b.items.end());
    EXPECT_GE(b.items.front(), 0);
    EXPECT_LT(b.items.back(), 1000);
  }
  // Default mean is 0.4 n.
  spec.mean_size = 0;
  spec.n = 500;
  EXPECT_NEAR(MeanSize(GenWorkload(spec)), 200.0, 20.0);
}

TEST(WorkloadTest, SkewedHasHeavyTail) {
  WorkloadSpec spec;
  spec.family = WorkloadFamily::kSkewed;
  spec.n = 2000;
  spec.m = 500;
  spec.seed = 4;
  const Instance inst = GenWorkload(spec);
  std::vector<int> sizes;
  for (const Bundle& b : inst.bundles()) sizes.push_back(b.items.size());
  std::sort(sizes.begin(), sizes.end());
  const double median = sizes[sizes.size() / 2];
  EXPECT_LT(median, MeanSize(inst));
  EXPECT_GE(sizes.front(), 1);
  EXPECT_LE(sizes.back(), 2000);
}

TEST(WorkloadTest, RejectsBadSpecs) {
  EXPECT_THROW(GenWorkload(WorkloadSpec{WorkloadFamily::kUniform, 0, 3}),
               InvalidInputError);
  EXPECT_THROW(GenWorkload(WorkloadSpec{WorkloadFamily::kUniform, 3, 0}),
               InvalidInputError);
  WorkloadSpec skew{WorkloadFamily::kSkewed, 5, 5};
  skew.skew_exponent = -1;
  EXPECT_THROW(GenWorkload(skew), InvalidInputError);
  EXPECT_THROW(ParseWorkloadFamily("zigzag"), InvalidInputError);
}

Instance Base(int m, int n, std::uint64_t seed) {
  WorkloadSpec spec;
  spec.n = n;
  spec.m = m;
  spec.mean_size = std::max(1, n / 4);
  spec.seed = seed;
  return GenWorkload(spec);
}

TEST(ValuationTest, UniformValueRange) {
  ValuationSpec spec;
  spec.k = 10;
  spec.seed = 1;
  const Instance inst = AssignValues(Base(300, 20, 1), spec);
  for (const Bundle& b : inst.bundles()) {
    EXPECT_GE(b.value, 1.0);
    EXPECT_LE(b.value, 10.0);
  }
  EXPECT_EQ(inst, AssignValues(Base(300, 20, 1), spec));
}

TEST(ValuationTest, AdditiveDegenerateAssigner) {
  ValuationSpec spec;
  spec.model = ValuationModel::kAdditive;
  spec.k = 1;
  spec.seed = 2;
  const Instance inst = AssignValues(Base(200, 30, 2), spec);
  for (const Bundle& b : inst.bundles()) {
    const double s = b.items.size();
    EXPECT_GE(b.value, s);
    EXPECT_LE(b.value, 2 * s);
  }
}

TEST(ValuationTest, AdditiveBinomialRange) {
  ValuationSpec spec;
  spec.model = ValuationModel::kAdditive;
  spec.k = 6;
  spec.assigner = LevelAssigner::kBinomial;
  spec.seed = 5;
  const Instance inst = AssignValues(Base(200, 30, 2), spec);
  for (const Bundle& b : inst.bundles()) {
    EXPECT_GE(b.value, 0.0);
    EXPECT_LE(b.value, 7.0 * b.items.size());
  }
  spec.k = 1.5;
  EXPECT_THROW(AssignValues(inst, spec), InvalidInputError);
}

TEST(ValuationTest, ExpScaledMean) {
  std::vector<Bundle> bundles(10000, Bundle{{0, 1}, 0.0});
  const Instance base(2, bundles);
  ValuationSpec spec;
  spec.model = ValuationModel::kExpScaled;
  spec.k = 0;
  spec.seed = 6;
  const Instance inst = AssignValues(base, spec);
  EXPECT_NEAR(SumBound(inst).value / 10000.0, 1.0, 0.05);
  // Mean |e|^k = 4 when k = 2 and |e| = 2.
  spec.k = 2;
  EXPECT_NEAR(SumBound(AssignValues(base, spec)).value / 10000.0, 4.0, 0.2);
}

TEST(ValuationTest, NormalScaledClampsAndCenters) {
  std::vector<Bundle> bundles(10000, Bundle{{0, 1, 2}, 0.0});
  const Instance base(3, bundles);
  ValuationSpec spec;
  spec.model = ValuationModel::kNormalScaled;
  spec.k = 2;
  spec.seed = 7;
  const Instance inst = AssignValues(base, spec);
  for (const Bundle& b : inst.bundles()) EXPECT_GE(b.value, 0.0);
  EXPECT_NEAR(SumBound(inst).value / 10000.0, 9.0, 0.15);
  spec.k = 0;  // mean 1 with sd sqrt(10): many clamped
  const Instance low = AssignValues(base, spec);
  int zeros = 0;
  for (const Bundle& b : low.bundles()) zeros += b.value == 0.0;
  EXPECT_GT(zeros, 3000);
}

TEST(ValuationTest, EmptyBundlesUnderScaledModels) {
  const Instance base(2, {Bundle{{}, 0.0}, Bundle{{0}, 0.0}});
  ValuationSpec spec;
  spec.seed = 9;
  for (ValuationModel model :
       {ValuationModel::kExpScaled, ValuationModel::kNormalScaled,
        ValuationModel::kAdditive}) {
    spec.model = model;
    spec.k = model == ValuationModel::kAdditive ? 3 : 1;
    EXPECT_EQ(AssignValues(base, spec).value(0), 0.0) << ModelName(model);
  }
  spec.model = ValuationModel::kUniformValue;
  spec.k = 5;
  EXPECT_GE(AssignValues(base, spec).value(0), 1.0);
}

TEST(ValuationTest, ZipfRanks) {
  std::vector<Bundle> bundles(5000, Bundle{{0}, 0.0});
  const Instance base(1, bundles);
  ValuationSpec spec;
  spec.model = ValuationModel::kZipf;
  spec.a = 2.0;
  spec.seed = 10;
  const Instance inst = AssignValues(base, spec);
  EXPECT_EQ(inst, AssignValues(base, spec));
  int ones = 0;
  for (const Bundle& b : inst.bundles()) {
    EXPECT_EQ(b.value, std::floor(b.value));
    EXPECT_GE(b.value, 1.0);
    EXPECT_LE(b.value, kDefaultZipfSupport);
    ones += b.value == 1.0;
  }
  // P(rank 1) = 6 / pi^2 for a = 2.
  EXPECT_NEAR(ones / 5000.0, 6.0 / (M_PI * M_PI), 0.03);
  spec.a = 1.0;
  EXPECT_THROW(AssignValues(base, spec), InvalidInputError);
}

TEST(ValuationTest, NamesRoundTrip) {
  for (ValuationModel m :
       {ValuationModel::kUniformValue, ValuationModel::kZipf,
        ValuationModel::kExpScaled, ValuationModel::kNormalScaled,
        ValuationModel::kAdditive}) {
    EXPECT_EQ(ParseModel(ModelName(m)), m);
  }
  EXPECT_EQ(ParseAssigner("binomial"), LevelAssigner::kBinomial);
  EXPECT_THROW(ParseModel("pareto"), InvalidInputError);
  EXPECT_THROW(ParseAssigner("poisson"), InvalidInputError);
}

TEST(HarmonicTest, Examples) {
  const Instance h3 = GenHarmonic(3);
  EXPECT_EQ(h3.values(), (std::vector<double>{1.0, 0.5, 1.0 / 3.0}));
  EXPECT_NEAR(Ubp(h3).outcome.revenue, 1.0, 1e-12);
  const Instance h1 = GenHarmonic(1);
  EXPECT_EQ(h1.num_bundles(), 1);
  EXPECT_EQ(h1.value(0), 1.0);
  EXPECT_NEAR(SumBound(GenHarmonic(100)).value, 5.187377517639621, 1e-12);
  EXPECT_THROW(GenHarmonic(0), InvalidInputError);
}

TEST(PartitionTest, Examples) {
  const Instance p4 = GenPartition(4);
  EXPECT_EQ(p4.num_bundles(), 7);
  EXPECT_EQ(SumBound(p4).value, 7.0);
  EXPECT_EQ(Ubp(p4).outcome.revenue, 7.0);
  EXPECT_EQ(GenPartition(1).num_bundles(), 1);
  EXPECT_EQ(GenPartition(16).num_bundles(), 31);
  EXPECT_THROW(GenPartition(6), InvalidInputError);
}

TEST(LaminarTest, Examples) {
  const LaminarFamily two = GenLaminar(2);
  EXPECT_EQ(two.instance.num_bundles(), 37);
  EXPECT_EQ(two.instance.num_items(), 4);
  EXPECT_EQ(SumBound(two.instance).value, 27.0);
  EXPECT_EQ(two.opt, 27.0);
  EXPECT_NEAR(two.ubp_reference, 20.8125, 1e-12);
  const AlgoReport ubp = Ubp(two.instance);
  EXPECT_NEAR(ubp.outcome.revenue, 20.8125, 1e-12);
  EXPECT_EQ(ubp.vector.uniform().price, 0.5625);

  const LaminarFamily zero = GenLaminar(0);
  EXPECT_EQ(zero.instance.num_bundles(), 1);
  EXPECT_EQ(zero.instance.value(0), 1.0);
  EXPECT_EQ(zero.opt, 1.0);
  EXPECT_THROW(GenLaminar(kLaminarMaxDepth + 1), InvalidInputError);
}

TEST(LaminarTest, ExactTotalsAndUbpReference) {
  for (int t = 0; t <= kLaminarMaxDepth; ++t) {
    const LaminarFamily f = GenLaminar(t);
    // Values times 4^t are integers.
    std::int64_t scaled = 0;
    const double four_t = std::ldexp(1.0, 2 * t);
    for (const Bundle& b : f.instance.bundles()) {
      const double s = b.value * four_t;
      ASSERT_EQ(s, std::round(s));
      scaled += static_cast<std::int64_t>(s);
    }
    std::int64_t pow3 = 1;
    for (int i = 0; i < t; ++i) pow3 *= 3;
    EXPECT_EQ(scaled, (t + 1) * pow3 * static_cast<std::int64_t>(four_t));
    std::int64_t m = 0;
    for (int l = 0; l <= t; ++l) m += (std::int64_t{1} << l) * LaminarCopies(t, l);
    EXPECT_EQ(f.instance.num_bundles(), m);
    if (t <= 5) {
      EXPECT_NEAR(Ubp(f.instance).outcome.revenue, f.ubp_reference,
                  1e-9 * f.ubp_reference);
    }
  }
}

// Independent oracle: cheapest subset of blocks covering the mask.
double BruteLaminar(int t, std::uint64_t mask) {
  struct Block {
    std::uint64_t bits;
    double value;
  };
  std::vector<Block> blocks;
  const int n = 1 << t;
  for (int l = 0; l <= t; ++l) {
    const int size = n >> l;
    for (int b = 0; b < (1 << l); ++b) {
      blocks.push_back({((std::uint64_t{1} << size) - 1) << (b * size),
                        std::pow(0.75, l)});
    }
  }
  double best = INFINITY;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks.size());
       ++pick) {
    std::uint64_t covered = 0;
    double cost = 0.0;
    for (size_t i = 0; i < blocks.size(); ++i) {
      if ((pick >> i) & 1) {
        covered |= blocks[i].bits;
        cost += blocks[i].value;
      }
    }
    if ((covered & mask) == mask) best = std::min(best, cost);
  }
  return best;
}

TEST(LaminarOracleTest, Examples) {
  EXPECT_EQ(LaminarValueOracle(2, 0b0011), 0.75);
  EXPECT_EQ(LaminarValueOracle(2, 0b0001), 0.5625);
  EXPECT_EQ(LaminarValueOracle(2, 0b1111), 1.0);
  EXPECT_EQ(LaminarValueOracle(2, 0), 0.0);
  EXPECT_THROW(LaminarValueOracle(2, 0b10000), InvalidInputError);
  EXPECT_THROW(LaminarValueOracle(7, 1), InvalidInputError);
}

TEST(LaminarOracleTest, MatchesBruteForce) {
  for (int t = 0; t <= 2; ++t) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1 << t));
         ++mask) {
      EXPECT_NEAR(LaminarValueOracle(t, mask), BruteLaminar(t, mask), 1e-12);
    }
  }
}

TEST(LaminarOracleTest, MonotoneAndSubmodular) {
  for (int t = 0; t <= 3; ++t) {
    const std::uint64_t full = (std::uint64_t{1} << (1 << t)) - 1;
    std::vector<double> v(full + 1);
    for (std::uint64_t a = 0; a <= full; ++a) v[a] = LaminarValueOracle(t, a);
    int violations = 0;
    for (std::uint64_t a = 0; a <= full; ++a) {
      for (std::uint64_t b = 0; b <= full; ++b) {
        if (v[a] + v[b] < v[a | b] + v[a & b] - 1e-12) ++violations;
        if ((a & b) == a && v[a] > v[b] + 1e-12) ++violations;
      }
    }
    EXPECT_EQ(violations, 0) << "t=" << t;
  }
}

}  // namespace
}  // namespace qprice
