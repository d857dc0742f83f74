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

// Small random instances shared by the test binaries.

#ifndef QPRICE_TESTS_TEST_UTIL_H_
#define QPRICE_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qprice/generators.h"
#include "qprice/instance.h"

namespace qprice::testing {

// Random hypergraph with m bundles over n items; bundle sizes in [0, max_size]
// and values Uniform[0, 1].
inline Instance RandomInstance(std::mt19937_64& rng, int m, int n,
                               int max_size, bool allow_empty = false) {
  std::uniform_int_distribution<int> size_d(allow_empty ? 0 : 1,
                                            std::max(1, std::min(n, max_size)));
  std::uniform_real_distribution<double> value_d(0.0, 1.0);
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  std::vector<Bundle> bundles;
  for (int e = 0; e < m; ++e) {
    const int s = size_d(rng);
    std::shuffle(all.begin(), all.end(), rng);
    Bundle b;
    b.items.assign(all.begin(), all.begin() + s);
    std::sort(b.items.begin(), b.items.end());
    b.value = value_d(rng);
    bundles.push_back(std::move(b));
  }
  return Instance(n, std::move(bundles));
}

// Random instance with values from one of the generator models, rotating
// through them by `which`.
inline Instance RandomModelInstance(std::mt19937_64& rng, int which, int m,
                                    int n, int max_size) {
  Instance base = RandomInstance(rng, m, n, max_size);
  ValuationSpec spec;
  spec.seed = rng();
  switch (which % 5) {
    case 0:
      return base;
    case 1:
      spec.model = ValuationModel::kZipf;
      spec.a = 2.0;
      break;
    case 2:
      spec.model = ValuationModel::kExpScaled;
      spec.k = 1.0;
      break;
    case 3:
      spec.model = ValuationModel::kNormalScaled;
      spec.k = 1.0;
      break;
    default:
      spec.model = ValuationModel::kAdditive;
      spec.k = 5.0;
      spec.assigner = which % 2 ? LevelAssigner::kUniform
                                : LevelAssigner::kBinomial;
      break;
  }
  return AssignValues(base, spec);
}

inline double Harmonic(int m) {
  double h = 0.0;
  for (int i = m; i >= 1; --i) h += 1.0 / i;
  return h;
}

}  // namespace qprice::testing

#endif  // QPRICE_TESTS_TEST_UTIL_H_
