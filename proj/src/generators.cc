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

#include "qprice/generators.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace qprice {
namespace {

// Inverse-CDF sampler over {1..size} with P(s) ~ s^-exponent.
class PowerLawSampler {
 public:
  PowerLawSampler(int size, double exponent) : cdf_(size) {
    double total = 0.0;
    for (int s = 1; s <= size; ++s) {
      total += std::pow(static_cast<double>(s), -exponent);
      cdf_[s - 1] = total;
    }
    for (double& c : cdf_) c /= total;
    cdf_.back() = 1.0;
  }

  int Draw(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(
               it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1)) +
           1;
  }

 private:
  std::vector<double> cdf_;
};

// Floyd's sampling of `size` distinct items from [0, n), sorted.
std::vector<int> SampleItems(int n, int size, std::mt19937_64& rng,
                             std::vector<char>& mark) {
  std::vector<int> chosen;
  chosen.reserve(size);
  for (int j = n - size; j < n; ++j) {
    const int t = std::uniform_int_distribution<int>(0, j)(rng);
    const int pick = mark[t] ? j : t;
    mark[pick] = 1;
    chosen.push_back(pick);
  }
  for (int j : chosen) mark[j] = 0;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Instance GenWorkload(const WorkloadSpec& spec) {
  if (spec.n < 1 || spec.m < 1) {
    throw InvalidInputError("workload needs n >= 1 and m >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<char> mark(spec.n, 0);
  std::vector<Bundle> bundles(spec.m);
  if (spec.family == WorkloadFamily::kUniform) {
    const double mean = spec.mean_size > 0.0 ? spec.mean_size : 0.4 * spec.n;
    const double spread = spec.size_spread > 0.0 ? spec.size_spread : mean / 6;
    if (!std::isfinite(mean) || !std::isfinite(spread)) {
      throw InvalidInputError("workload size parameters must be finite");
    }
    std::normal_distribution<double> size_dist(mean, spread);
    for (Bundle& b : bundles) {
      const double raw = std::round(size_dist(rng));
      const int size =
          static_cast<int>(std::clamp(raw, 1.0, static_cast<double>(spec.n)));
      b.items = SampleItems(spec.n, size, rng, mark);
    }
  } else {
    if (!(spec.skew_exponent > 0.0) || !std::isfinite(spec.skew_exponent)) {
      throw InvalidInputError("skew exponent must be finite and positive");
    }
    const PowerLawSampler sizes(spec.n, spec.skew_exponent);
    for (Bundle& b : bundles) {
      b.items = SampleItems(spec.n, sizes.Draw(rng), rng, mark);
    }
  }
  return Instance(spec.n, std::move(bundles));
}

Instance AssignValues(const Instance& instance, const ValuationSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const int m = instance.num_bundles();
  std::vector<double> values(m, 0.0);
  auto size_of = [&](int e) {
    return static_cast<double>(instance.bundle(e).items.size());
  };
  switch (spec.model) {
    case ValuationModel::kUniformValue: {
      if (!(spec.k >= 1.0) || !std::isfinite(spec.k)) {
        throw InvalidInputError("uniform valuation needs finite k >= 1");
      }
      std::uniform_real_distribution<double> dist(1.0, spec.k);
      for (double& v : values) v = spec.k == 1.0 ? 1.0 : dist(rng);
      break;
    }
    case ValuationModel::kZipf: {
      if (!(spec.a > 1.0) || !std::isfinite(spec.a)) {
        throw InvalidInputError("zipf exponent must be > 1");
      }
      if (spec.zipf_support < 1) {
        throw InvalidInputError("zipf support must be >= 1");
      }
      const PowerLawSampler ranks(spec.zipf_support, spec.a);
      for (double& v : values) v = ranks.Draw(rng);
      break;
    }
    case ValuationModel::kExpScaled:
    case ValuationModel::kNormalScaled: {
      if (!(spec.k >= 0.0) || !std::isfinite(spec.k)) {
        throw InvalidInputError("scaled valuation needs finite k >= 0");
      }
      const double sd = std::sqrt(10.0);
      for (int e = 0; e < m; ++e) {
        if (size_of(e) == 0.0) continue;
        const double center = std::pow(size_of(e), spec.k);
        if (spec.model == ValuationModel::kExpScaled) {
          values[e] = std::exponential_distribution<double>(1.0 / center)(rng);
        } else {
          values[e] =
              std::max(0.0, std::normal_distribution<double>(center, sd)(rng));
        }
      }
      break;
    }
    case ValuationModel::kAdditive: {
      if (!(spec.k >= 1.0) || spec.k != std::floor(spec.k) || spec.k > 1e6) {
        throw InvalidInputError("additive model needs an integer k >= 1");
      }
      const int k = static_cast<int>(spec.k);
      std::vector<double> price(instance.num_items());
      std::uniform_int_distribution<int> uniform_level(1, k);
      std::binomial_distribution<int> binomial_level(k, 0.5);
      for (double& x : price) {
        const int level = spec.assigner == LevelAssigner::kUniform
                              ? uniform_level(rng)
                              : binomial_level(rng);
        x = std::uniform_real_distribution<double>(level, level + 1.0)(rng);
      }
      for (int e = 0; e < m; ++e) {
        for (int j : instance.bundle(e).items) values[e] += price[j];
      }
      break;
    }
  }
  return instance.WithValues(values);
}

const char* ModelName(ValuationModel model) {
  switch (model) {
    case ValuationModel::kUniformValue:
      return "uniform";
    case ValuationModel::kZipf:
      return "zipf";
    case ValuationModel::kExpScaled:
      return "exp";
    case ValuationModel::kNormalScaled:
      return "normal";
    case ValuationModel::kAdditive:
      return "additive";
  }
  return "unknown";
}

ValuationModel ParseModel(std::string_view name) {
  if (name == "uniform") return ValuationModel::kUniformValue;
  if (name == "zipf") return ValuationModel::kZipf;
  if (name == "exp") return ValuationModel::kExpScaled;
  if (name == "normal") return ValuationModel::kNormalScaled;
  if (name == "additive") return ValuationModel::kAdditive;
  throw InvalidInputError("unknown valuation model '" + std::string(name) +
                          "'");
}

const char* AssignerName(LevelAssigner assigner) {
  return assigner == LevelAssigner::kUniform ? "uniform" : "binomial";
}

LevelAssigner ParseAssigner(std::string_view name) {
  if (name == "uniform") return LevelAssigner::kUniform;
  if (name == "binomial") return LevelAssigner::kBinomial;
  throw InvalidInputError("unknown level assigner '" + std::string(name) +
                          "'");
}

WorkloadFamily ParseWorkloadFamily(std::string_view name) {
  if (name == "uniform") return WorkloadFamily::kUniform;
  if (name == "skewed") return WorkloadFamily::kSkewed;
  throw InvalidInputError("unknown workload family '" + std::string(name) +
                          "'");
}

Instance GenHarmonic(int m) {
  if (m < 1) throw InvalidInputError("harmonic family needs m >= 1");
  std::vector<Bundle> bundles(m);
  for (int i = 0; i < m; ++i) bundles[i] = {{i}, 1.0 / (i + 1)};
  return Instance(m, std::move(bundles));
}

Instance GenPartition(int n) {
  if (n < 1 || (n & (n - 1)) != 0) {
    throw InvalidInputError("partition family needs n a power of two");
  }
  std::vector<Bundle> bundles;
  for (int size = 1; size <= n; size *= 2) {
    for (int start = 0; start < n; start += size) {
      Bundle b;
      b.value = 1.0;
      for (int j = start; j < start + size; ++j) b.items.push_back(j);
      bundles.push_back(std::move(b));
    }
  }
  return Instance(n, std::move(bundles));
}

std::int64_t LaminarCopies(int t, int level) {
  std::int64_t c = 1;
  for (int i = 0; i < level; ++i) c *= 2;
  for (int i = level; i < t; ++i) c *= 3;
  return c;
}

double LaminarUbpReference(int t) {
  const double base = std::pow(3.0, t);
  double best = 0.0;
  double partial = 0.0;
  for (int k = 0; k <= t; ++k) {
    partial += std::pow(4.0 / 3.0, k);
    best = std::max(best, std::pow(0.75, k) * base * partial);
  }
  return best;
}

LaminarFamily GenLaminar(int t) {
  if (t < 0 || t > kLaminarMaxDepth) {
    throw InvalidInputError("laminar depth must be in [0, " +
                            std::to_string(kLaminarMaxDepth) + "]");
  }
  const int n = 1 << t;
  std::vector<Bundle> bundles;
  for (int level = 0; level <= t; ++level) {
    const int blocks = 1 << level;
    const int size = n / blocks;
    const double value = std::pow(0.75, level);
    const std::int64_t copies = LaminarCopies(t, level);
    for (int b = 0; b < blocks; ++b) {
      Bundle bundle;
      bundle.value = value;
      for (int j = b * size; j < (b + 1) * size; ++j) bundle.items.push_back(j);
      for (std::int64_t c = 0; c < copies; ++c) bundles.push_back(bundle);
    }
  }
  LaminarFamily family;
  family.instance = Instance(n, std::move(bundles));
  family.t = t;
  family.opt = (t + 1) * std::pow(3.0, t);
  family.ubp_reference = LaminarUbpReference(t);
  return family;
}

namespace {

double CoverNode(int t, int depth, int block, std::uint64_t mask) {
  const int size = (1 << t) >> depth;
  const std::uint64_t node =
      (size == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1))
      << (block * size);
  if ((mask & node) == 0) return 0.0;
  const double own = std::pow(0.75, depth);
  if (depth == t) return own;
  return std::min(own, CoverNode(t, depth + 1, 2 * block, mask) +
                           CoverNode(t, depth + 1, 2 * block + 1, mask));
}

}  // namespace

double LaminarValueOracle(int t, std::uint64_t mask) {
  if (t < 0 || t > 6) throw InvalidInputError("oracle needs 0 <= t <= 6");
  const int n = 1 << t;
  if (n < 64 && (mask >> n) != 0) {
    throw InvalidInputError("item mask has bits beyond 2^t items");
  }
  return CoverNode(t, 0, 0, mask);
}

}  // namespace qprice
