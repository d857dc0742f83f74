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

#include "qprice/json_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qprice {
namespace {

template <typename T>
T Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInputError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInputError(std::string("field '") + key +
                            "' has the wrong type");
  }
}

const char* AggName(Aggregate a) {
  switch (a) {
    case Aggregate::kCount:
      return "count";
    case Aggregate::kSum:
      return "sum";
    case Aggregate::kAvg:
      return "avg";
    case Aggregate::kMin:
      return "min";
    case Aggregate::kMax:
      return "max";
  }
  return "count";
}

Aggregate ParseAgg(const std::string& s) {
  if (s == "count") return Aggregate::kCount;
  if (s == "sum") return Aggregate::kSum;
  if (s == "avg") return Aggregate::kAvg;
  if (s == "min") return Aggregate::kMin;
  if (s == "max") return Aggregate::kMax;
  throw InvalidInputError("unknown aggregate '" + s + "'");
}

const char* OpName(Comparator c) {
  switch (c) {
    case Comparator::kEq:
      return "=";
    case Comparator::kNe:
      return "!=";
    case Comparator::kLt:
      return "<";
    case Comparator::kLe:
      return "<=";
    case Comparator::kGt:
      return ">";
    case Comparator::kGe:
      return ">=";
    case Comparator::kLikePrefix:
      return "like_prefix";
  }
  return "=";
}

Comparator ParseOp(const std::string& s) {
  if (s == "=") return Comparator::kEq;
  if (s == "!=" || s == "<>") return Comparator::kNe;
  if (s == "<") return Comparator::kLt;
  if (s == "<=") return Comparator::kLe;
  if (s == ">") return Comparator::kGt;
  if (s == ">=") return Comparator::kGe;
  if (s == "like_prefix") return Comparator::kLikePrefix;
  throw InvalidInputError("unknown comparator '" + s + "'");
}

}  // namespace

Json InstanceToJson(const Instance& instance) {
  Json edges = Json::array();
  for (const Bundle& b : instance.bundles()) {
    edges.push_back(Json{{"items", b.items}, {"value", b.value}});
  }
  return Json{{"n", instance.num_items()}, {"edges", std::move(edges)}};
}

Instance InstanceFromJson(const Json& j) {
  const int n = Field<int>(j, "n");
  const Json edges = Field<Json>(j, "edges");
  if (!edges.is_array()) throw InvalidInputError("'edges' must be an array");
  std::vector<Bundle> bundles;
  for (const Json& e : edges) {
    bundles.push_back(
        {Field<std::vector<int>>(e, "items"), Field<double>(e, "value")});
  }
  return Instance(n, std::move(bundles));
}

std::string DumpInstance(const Instance& instance) {
  return InstanceToJson(instance).dump();
}

Instance ParseInstance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInputError(std::string("malformed JSON: ") + e.what());
  }
  return InstanceFromJson(j);
}

Json PricingToJson(const PricingVector& pricing) {
  switch (pricing.kind()) {
    case PricingVector::Kind::kUniformBundle:
      return Json{{"type", "uniform_bundle"},
                  {"price", pricing.uniform().price}};
    case PricingVector::Kind::kItem:
      return Json{{"type", "item"}, {"weights", pricing.items().weights}};
    case PricingVector::Kind::kXos:
      return Json{{"type", "xos"}, {"rows", pricing.xos().rows}};
  }
  return Json();
}

PricingVector PricingFromJson(const Json& j) {
  const std::string type = Field<std::string>(j, "type");
  if (type == "uniform_bundle") {
    return PricingVector::UniformBundle(Field<double>(j, "price"));
  }
  if (type == "item") {
    return PricingVector::Items(Field<std::vector<double>>(j, "weights"));
  }
  if (type == "xos") {
    return PricingVector::Xos(
        Field<std::vector<std::vector<double>>>(j, "rows"));
  }
  throw InvalidInputError("unknown pricing type '" + type + "'");
}

Json ReportToJson(const AlgoReport& report, bool with_timing) {
  Json diags = Json::array();
  for (const CandidateDiagnostic& d : report.diagnostics) {
    diags.push_back(Json{{"parameter", d.parameter},
                         {"objective", d.objective},
                         {"revenue", d.revenue},
                         {"num_sold", d.num_sold},
                         {"failed", d.failed}});
  }
  Json j{{"algo", report.algorithm}, {"revenue", report.outcome.revenue}};
  if (with_timing) j["elapsed_ms"] = report.outcome.elapsed_ms();
  j["num_sold"] = report.outcome.num_sold();
  j["vector"] = PricingToJson(report.vector);
  j["diagnostics"] = std::move(diags);
  return j;
}

Json BoundToJson(const BoundReport& bound) {
  return Json{{"kind", bound.kind},
              {"value", bound.value},
              {"constraints_added", bound.constraints_added}};
}

Json CellToJson(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return std::get<std::string>(cell);
}

Cell CellFromJson(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  throw InvalidInputError("cell values must be integers or strings");
}

Json QueryToJson(const QueryDescriptor& q) {
  Json j;
  switch (q.form) {
    case QueryDescriptor::Form::kAggregate:
      j = Json{{"form", "aggregate"}, {"agg", AggName(q.agg)},
               {"column", q.column}};
      break;
    case QueryDescriptor::Form::kProject:
      j = Json{{"form", "project"}, {"columns", q.columns}};
      break;
    case QueryDescriptor::Form::kGroupBy:
      j = Json{{"form", "group_by"}, {"group", q.group_column},
               {"agg", AggName(q.agg)}, {"column", q.column}};
      break;
  }
  if (q.where) {
    j["where"] = Json{{"column", q.where->column},
                      {"op", OpName(q.where->op)},
                      {"value", CellToJson(q.where->constant)}};
  }
  return j;
}

QueryDescriptor QueryFromJson(const Json& j) {
  QueryDescriptor q;
  const std::string form = Field<std::string>(j, "form");
  if (form == "aggregate") {
    q.form = QueryDescriptor::Form::kAggregate;
    q.agg = ParseAgg(Field<std::string>(j, "agg"));
    q.column = j.contains("column") ? Field<std::string>(j, "column") : "*";
  } else if (form == "project") {
    q.form = QueryDescriptor::Form::kProject;
    q.columns = Field<std::vector<std::string>>(j, "columns");
  } else if (form == "group_by") {
    q.form = QueryDescriptor::Form::kGroupBy;
    q.group_column = Field<std::string>(j, "group");
    q.agg = ParseAgg(Field<std::string>(j, "agg"));
    q.column = j.contains("column") ? Field<std::string>(j, "column") : "*";
  } else {
    throw InvalidInputError("unknown query form '" + form + "'");
  }
  if (j.contains("where")) {
    const Json& w = j.at("where");
    q.where = Predicate{Field<std::string>(w, "column"),
                        ParseOp(Field<std::string>(w, "op")),
                        CellFromJson(Field<Json>(w, "value"))};
  }
  return q;
}

QueryVector QueryVectorFromJson(const Json& j) {
  if (j.is_object()) return {QueryFromJson(j)};
  if (!j.is_array() || j.empty()) {
    throw InvalidInputError("a query vector is an object or non-empty array");
  }
  QueryVector out;
  for (const Json& q : j) out.push_back(QueryFromJson(q));
  return out;
}

std::vector<QueryVector> QueryVectorsFromJson(const Json& j) {
  if (!j.is_array()) throw InvalidInputError("expected an array of queries");
  std::vector<QueryVector> out;
  for (const Json& v : j) out.push_back(QueryVectorFromJson(v));
  return out;
}

Json SupportToJson(const SupportSet& support) {
  Json neighbors = Json::array();
  for (const auto& diffs : support.neighbors) {
    Json list = Json::array();
    for (const CellDiff& d : diffs) {
      list.push_back(Json{{"row", d.row},
                          {"column", d.column},
                          {"value", CellToJson(d.value)}});
    }
    neighbors.push_back(std::move(list));
  }
  return Json{{"seed", support.seed}, {"neighbors", std::move(neighbors)}};
}

SupportSet SupportFromJson(const Json& j, const MicroTable& base) {
  base.Validate();
  SupportSet support{base, {}, j.contains("seed") ? Field<std::uint64_t>(j, "seed") : 0};
  for (const Json& list : Field<Json>(j, "neighbors")) {
    std::vector<CellDiff> diffs;
    for (const Json& d : list) {
      CellDiff diff{Field<int>(d, "row"), Field<int>(d, "column"),
                    CellFromJson(Field<Json>(d, "value"))};
      if (diff.row < 0 || diff.row >= static_cast<int>(base.rows.size()) ||
          diff.column < 0 ||
          diff.column >= static_cast<int>(base.columns.size())) {
        throw InvalidInputError("support diff outside the table");
      }
      diffs.push_back(std::move(diff));
    }
    support.neighbors.push_back(std::move(diffs));
  }
  return support;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qprice
