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

#include "qprice/pricing.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace qprice {
namespace {

void CheckWeights(std::span<const double> weights) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInputError("pricing weights must be finite and >= 0");
    }
  }
}

double AdditivePrice(std::span<const double> weights,
                     std::span<const int> items) {
  double sum = 0.0;
  for (int j : items) {
    if (j < 0 || j >= static_cast<int>(weights.size())) {
      throw InvalidInputError("item " + std::to_string(j) +
                              " outside pricing dimension " +
                              std::to_string(weights.size()));
    }
    sum += weights[j];
  }
  return sum;
}

}  // namespace

PricingVector PricingVector::UniformBundle(double price) {
  if (!std::isfinite(price) || price < 0.0) {
    throw InvalidInputError("uniform bundle price must be finite and >= 0");
  }
  return PricingVector(UniformBundlePrice{price});
}

PricingVector PricingVector::Items(std::vector<double> weights) {
  CheckWeights(weights);
  return PricingVector(ItemPrices{std::move(weights)});
}

PricingVector PricingVector::Xos(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw InvalidInputError("XOS pricing needs >= 1 row");
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) {
      throw InvalidInputError("XOS rows differ in length");
    }
    CheckWeights(row);
  }
  return PricingVector(XosPrices{std::move(rows)});
}

int PricingVector::dimension() const {
  switch (kind()) {
    case Kind::kUniformBundle:
      return 0;
    case Kind::kItem:
      return static_cast<int>(items().weights.size());
    case Kind::kXos:
      return static_cast<int>(xos().rows.front().size());
  }
  return 0;
}

void PricingVector::CheckCompatible(const Instance& instance) const {
  if (kind() == Kind::kUniformBundle) return;
  if (dimension() != instance.num_items()) {
    throw InvalidInputError("pricing has " + std::to_string(dimension()) +
                            " item weights but the instance has " +
                            std::to_string(instance.num_items()) + " items");
  }
}

const char* KindName(PricingVector::Kind kind) {
  switch (kind) {
    case PricingVector::Kind::kUniformBundle:
      return "uniform_bundle";
    case PricingVector::Kind::kItem:
      return "item";
    case PricingVector::Kind::kXos:
      return "xos";
  }
  return "unknown";
}

double BundlePrice(const PricingVector& pricing, std::span<const int> items) {
  switch (pricing.kind()) {
    case PricingVector::Kind::kUniformBundle:
      return pricing.uniform().price;
    case PricingVector::Kind::kItem:
      return AdditivePrice(pricing.items().weights, items);
    case PricingVector::Kind::kXos: {
      double best = 0.0;
      for (const auto& row : pricing.xos().rows) {
        best = std::max(best, AdditivePrice(row, items));
      }
      return best;
    }
  }
  return 0.0;
}

int PricingOutcome::num_sold() const {
  return static_cast<int>(std::count(sold.begin(), sold.end(), true));
}

PricingOutcome Evaluate(const PricingVector& pricing,
                        const Instance& instance) {
  const auto start = std::chrono::steady_clock::now();
  pricing.CheckCompatible(instance);
  PricingOutcome outcome;
  const int m = instance.num_bundles();
  outcome.prices.resize(m);
  outcome.sold.resize(m);
  for (int e = 0; e < m; ++e) {
    const Bundle& b = instance.bundle(e);
    const double price = BundlePrice(pricing, b.items);
    outcome.prices[e] = price;
    outcome.sold[e] = price <= b.value;
    if (outcome.sold[e]) outcome.revenue += price;
  }
  outcome.elapsed = std::chrono::steady_clock::now() - start;
  return outcome;
}

}  // namespace qprice
