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

#ifndef QPRICE_INSTANCE_H_
#define QPRICE_INSTANCE_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qprice {

// Raised for malformed instances, pricings or parameters.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A single-minded buyer: wants exactly `items` and pays at most `value`.
struct Bundle {
  std::vector<int> items;
  double value = 0.0;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

// A market: `num_items` items (support databases) and an ordered list of
// valued bundles (hyperedges). Immutable once built; item lists are kept
// sorted ascending and duplicate-free.
class Instance {
 public:
  Instance() = default;

  // Throws InvalidInputError on out-of-range or duplicate items and on
  // negative or non-finite values. Items are sorted.
  Instance(int num_items, std::vector<Bundle> bundles);

  int num_items() const { return num_items_; }
  int num_bundles() const { return static_cast<int>(bundles_.size()); }
  bool empty() const { return bundles_.empty(); }

  const std::vector<Bundle>& bundles() const { return bundles_; }
  const Bundle& bundle(int e) const { return bundles_[e]; }
  double value(int e) const { return bundles_[e].value; }
  std::vector<double> values() const;

  // Same hypergraph with new valuations, one per bundle.
  Instance WithValues(std::span<const double> values) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_items_ = 0;
  std::vector<Bundle> bundles_;
};

struct InstanceStats {
  int num_bundles = 0;
  int num_items = 0;
  int max_degree = 0;  // max over items of the number of bundles holding it
  int max_bundle_size = 0;
  double avg_bundle_size = 0.0;  // averaged over all bundles, empty included
  double total_value = 0.0;
};

InstanceStats ComputeStats(const Instance& instance);

// Number of bundles containing each item.
std::vector<int> ItemDegrees(const Instance& instance);

// For each item, the indices of the bundles containing it (ascending).
std::vector<std::vector<int>> ItemIncidence(const Instance& instance);

}  // namespace qprice

#endif  // QPRICE_INSTANCE_H_
