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

#include "qprice/instance.h"

#include <algorithm>
#include <cmath>

namespace qprice {

Instance::Instance(int num_items, std::vector<Bundle> bundles)
    : num_items_(num_items), bundles_(std::move(bundles)) {
  if (num_items_ < 0) throw InvalidInputError("negative item count");
  for (size_t e = 0; e < bundles_.size(); ++e) {
    Bundle& b = bundles_[e];
    if (!std::isfinite(b.value) || b.value < 0.0) {
      throw InvalidInputError("bundle " + std::to_string(e) +
                              " has a negative or non-finite value");
    }
    std::sort(b.items.begin(), b.items.end());
    for (size_t i = 0; i < b.items.size(); ++i) {
      if (b.items[i] < 0 || b.items[i] >= num_items_) {
        throw InvalidInputError("bundle " + std::to_string(e) +
                                " references item " +
                                std::to_string(b.items[i]) + " outside [0, " +
                                std::to_string(num_items_) + ")");
      }
      if (i > 0 && b.items[i] == b.items[i - 1]) {
        throw InvalidInputError("bundle " + std::to_string(e) +
                                " repeats item " + std::to_string(b.items[i]));
      }
    }
  }
}

std::vector<double> Instance::values() const {
  std::vector<double> out;
  out.reserve(bundles_.size());
  for (const Bundle& b : bundles_) out.push_back(b.value);
  return out;
}

Instance Instance::WithValues(std::span<const double> values) const {
  if (values.size() != bundles_.size()) {
    throw InvalidInputError("expected " + std::to_string(bundles_.size()) +
                            " values, got " + std::to_string(values.size()));
  }
  std::vector<Bundle> bundles = bundles_;
  for (size_t e = 0; e < bundles.size(); ++e) bundles[e].value = values[e];
  return Instance(num_items_, std::move(bundles));
}

std::vector<int> ItemDegrees(const Instance& instance) {
  std::vector<int> degree(instance.num_items(), 0);
  for (const Bundle& b : instance.bundles()) {
    for (int j : b.items) ++degree[j];
  }
  return degree;
}

std::vector<std::vector<int>> ItemIncidence(const Instance& instance) {
  std::vector<std::vector<int>> incidence(instance.num_items());
  for (int e = 0; e < instance.num_bundles(); ++e) {
    for (int j : instance.bundle(e).items) incidence[j].push_back(e);
  }
  return incidence;
}

InstanceStats ComputeStats(const Instance& instance) {
  InstanceStats stats;
  stats.num_bundles = instance.num_bundles();
  stats.num_items = instance.num_items();
  size_t total_size = 0;
  for (const Bundle& b : instance.bundles()) {
    total_size += b.items.size();
    stats.max_bundle_size =
        std::max(stats.max_bundle_size, static_cast<int>(b.items.size()));
    stats.total_value += b.value;
  }
  for (int d : ItemDegrees(instance)) {
    stats.max_degree = std::max(stats.max_degree, d);
  }
  if (stats.num_bundles > 0) {
    stats.avg_bundle_size =
        static_cast<double>(total_size) / static_cast<double>(stats.num_bundles);
  }
  return stats;
}

}  // namespace qprice
