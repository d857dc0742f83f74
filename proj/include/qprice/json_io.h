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

// JSON forms of instances, pricings, reports and marketplace inputs.

#ifndef QPRICE_JSON_IO_H_
#define QPRICE_JSON_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "qprice/algorithms.h"
#include "qprice/bounds.h"
#include "qprice/instance.h"
#include "qprice/marketplace.h"
#include "qprice/pricing.h"

namespace qprice {

using Json = nlohmann::ordered_json;

// {"n": int, "edges": [{"items": [...], "value": float}, ...]}
Json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const Json& j);

// Canonical text: compact, items sorted, shortest round-trip doubles.
std::string DumpInstance(const Instance& instance);
Instance ParseInstance(const std::string& text);

// {"type": "uniform_bundle", "price": P} | {"type": "item", "weights": [...]}
// | {"type": "xos", "rows": [[...], ...]}
Json PricingToJson(const PricingVector& pricing);
PricingVector PricingFromJson(const Json& j);

// {"algo", "revenue", "elapsed_ms", "num_sold", "vector", "diagnostics"}
Json ReportToJson(const AlgoReport& report, bool with_timing = true);

// {"kind", "value", "constraints_added"}
Json BoundToJson(const BoundReport& bound);

// {"form": "aggregate", "agg": "count", "column": "*",
//  "where": {"column": "gender", "op": "=", "value": "f"}}
// {"form": "project", "columns": ["name"], "where": {...}}
// {"form": "group_by", "group": "gender", "agg": "count", "column": "*"}
Json QueryToJson(const QueryDescriptor& query);
QueryDescriptor QueryFromJson(const Json& j);

// A query vector is a single query object or an array of them.
QueryVector QueryVectorFromJson(const Json& j);
// Array of query vectors.
std::vector<QueryVector> QueryVectorsFromJson(const Json& j);

// {"seed": int, "neighbors": [[{"row", "column", "value"}, ...], ...]}
Json SupportToJson(const SupportSet& support);
SupportSet SupportFromJson(const Json& j, const MicroTable& base);

Json CellToJson(const Cell& cell);
Cell CellFromJson(const Json& j);

// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

}  // namespace qprice

#endif  // QPRICE_JSON_IO_H_
