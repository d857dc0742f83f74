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

// Succinct pricing functions over bundles and their realized revenue.

#ifndef QPRICE_PRICING_H_
#define QPRICE_PRICING_H_

#include <chrono>
#include <span>
#include <variant>
#include <vector>

#include "qprice/instance.h"

namespace qprice {

// Every bundle costs `price`, whatever it contains (empty bundles too).
struct UniformBundlePrice {
  double price = 0.0;
  friend bool operator==(const UniformBundlePrice&,
                         const UniformBundlePrice&) = default;
};

// Additive pricing: a bundle costs the sum of its item weights.
struct ItemPrices {
  std::vector<double> weights;
  friend bool operator==(const ItemPrices&, const ItemPrices&) = default;
};

// Max over several additive pricings.
struct XosPrices {
  std::vector<std::vector<double>> rows;
  friend bool operator==(const XosPrices&, const XosPrices&) = default;
};

class PricingVector {
 public:
  enum class Kind { kUniformBundle, kItem, kXos };

  static PricingVector UniformBundle(double price);
  static PricingVector Items(std::vector<double> weights);
  static PricingVector Xos(std::vector<std::vector<double>> rows);

  Kind kind() const { return static_cast<Kind>(repr_.index()); }
  const UniformBundlePrice& uniform() const {
    return std::get<UniformBundlePrice>(repr_);
  }
  const ItemPrices& items() const { return std::get<ItemPrices>(repr_); }
  const XosPrices& xos() const { return std::get<XosPrices>(repr_); }

  // Item dimension; 0 for a uniform bundle price (fits any instance).
  int dimension() const;

  // Throws InvalidInputError unless the vector can price `instance`.
  void CheckCompatible(const Instance& instance) const;

  friend bool operator==(const PricingVector&, const PricingVector&) = default;

 private:
  using Repr = std::variant<UniformBundlePrice, ItemPrices, XosPrices>;
  explicit PricingVector(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

const char* KindName(PricingVector::Kind kind);

// Price of a bundle. Item sums run in the bundle's item order, which is the
// order Evaluate uses, so the two always agree bit for bit.
double BundlePrice(const PricingVector& pricing, std::span<const int> items);

struct PricingOutcome {
  std::vector<double> prices;  // one per bundle, sold or not
  std::vector<bool> sold;      // sold[e] <=> prices[e] <= value(e)
  double revenue = 0.0;
  std::chrono::nanoseconds elapsed{0};

  int num_sold() const;
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(elapsed).count();
  }
};

// Posts `pricing` to every buyer. A buyer purchases iff price <= value.
PricingOutcome Evaluate(const PricingVector& pricing, const Instance& instance);

}  // namespace qprice

#endif  // QPRICE_PRICING_H_
