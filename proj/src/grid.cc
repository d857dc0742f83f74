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

#include "qprice/grid.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "qprice/bounds.h"

namespace qprice {
namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string Clean(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

template <typename T>
T Opt(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInputError(std::string("field '") + key +
                            "' has the wrong type");
  }
}

void ExpandCells(const Json& cell, std::vector<Json>& out) {
  const Json& inst = cell.at("instance");
  for (const char* key : {"m", "n", "t"}) {
    if (inst.contains(key) && inst.at(key).is_array()) {
      for (const Json& v : inst.at(key)) {
        Json copy = cell;
        copy["instance"][key] = v;
        ExpandCells(copy, out);
      }
      return;
    }
  }
  out.push_back(cell);
}

}  // namespace

InstanceSource SourceFromJson(const Json& j) {
  InstanceSource s;
  const std::string source = Opt<std::string>(j, "source", "");
  if (source == "uniform" || source == "skewed" || source == "workload") {
    s.kind = InstanceSource::Kind::kWorkload;
    s.workload.family = ParseWorkloadFamily(
        source == "workload" ? Opt<std::string>(j, "family", "uniform")
                             : source);
    s.workload.n = Opt<int>(j, "n", 0);
    s.workload.m = Opt<int>(j, "m", 0);
    s.workload.mean_size = Opt<double>(j, "mean_size", 0.0);
    s.workload.size_spread = Opt<double>(j, "size_spread", 0.0);
    s.workload.skew_exponent = Opt<double>(j, "skew_exponent", 1.5);
  } else if (source == "harmonic") {
    s.kind = InstanceSource::Kind::kHarmonic;
    s.size = Opt<int>(j, "m", 0);
  } else if (source == "partition") {
    s.kind = InstanceSource::Kind::kPartition;
    s.size = Opt<int>(j, "n", 0);
  } else if (source == "laminar") {
    s.kind = InstanceSource::Kind::kLaminar;
    s.size = Opt<int>(j, "t", -1);
  } else if (source == "file") {
    s.kind = InstanceSource::Kind::kFile;
    s.path = Opt<std::string>(j, "path", "");
  } else {
    throw InvalidInputError("unknown instance source '" + source + "'");
  }
  return s;
}

ValuationSpec ValuationFromJson(const Json& j) {
  ValuationSpec v;
  v.model = ParseModel(Opt<std::string>(j, "model", "uniform"));
  v.k = Opt<double>(j, "k", v.k);
  v.a = Opt<double>(j, "a", v.a);
  v.assigner = ParseAssigner(Opt<std::string>(j, "assigner", "uniform"));
  v.zipf_support = Opt<int>(j, "zipf_support", v.zipf_support);
  return v;
}

GridConfig GridFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("cells") || !j.at("cells").is_array()) {
    throw InvalidInputError("grid needs a \"cells\" array");
  }
  std::vector<Json> raw;
  for (const Json& c : j.at("cells")) {
    if (!c.is_object() || !c.contains("instance")) {
      throw InvalidInputError("every grid cell needs an \"instance\"");
    }
    ExpandCells(c, raw);
  }
  GridConfig config;
  for (const Json& c : raw) {
    GridCell cell;
    cell.source = SourceFromJson(c.at("instance"));
    if (c.contains("valuation") && !c.at("valuation").is_null()) {
      cell.valuation = ValuationFromJson(c.at("valuation"));
    }
    cell.algorithms = Opt<std::vector<std::string>>(c, "algorithms", {"ubp"});
    for (const std::string& a : cell.algorithms) {
      if (std::find(AlgorithmNames().begin(), AlgorithmNames().end(), a) ==
          AlgorithmNames().end()) {
        throw InvalidInputError("unknown algorithm '" + a + "'");
      }
    }
    cell.options.cip.epsilon = Opt<double>(c, "epsilon", 1.0);
    if (c.contains("max_capacity")) {
      cell.options.cip.max_capacity = Opt<double>(c, "max_capacity", 0.0);
    }
    cell.options.refine = Opt<bool>(c, "refine", false);
    const auto bounds = Opt<std::vector<std::string>>(c, "bounds", {"sum"});
    cell.sum_bound = false;
    for (const std::string& b : bounds) {
      if (b == "sum") {
        cell.sum_bound = true;
      } else if (b == "subadditive") {
        cell.subadditive_bound = true;
      } else {
        throw InvalidInputError("unknown bound '" + b + "'");
      }
    }
    cell.repetitions = Opt<int>(c, "repetitions", 1);
    if (cell.repetitions < 1) throw InvalidInputError("repetitions must be >= 1");
    cell.seeds = Opt<std::vector<std::uint64_t>>(c, "seeds", {0});
    if (cell.seeds.empty()) throw InvalidInputError("seeds must be non-empty");
    config.cells.push_back(std::move(cell));
  }
  return config;
}

Instance BuildInstance(const InstanceSource& source,
                       const std::optional<ValuationSpec>& valuation,
                       std::uint64_t seed) {
  Instance inst;
  switch (source.kind) {
    case InstanceSource::Kind::kWorkload: {
      WorkloadSpec spec = source.workload;
      spec.seed = seed;
      inst = GenWorkload(spec);
      break;
    }
    case InstanceSource::Kind::kHarmonic:
      inst = GenHarmonic(source.size);
      break;
    case InstanceSource::Kind::kPartition:
      inst = GenPartition(source.size);
      break;
    case InstanceSource::Kind::kLaminar:
      inst = GenLaminar(source.size).instance;
      break;
    case InstanceSource::Kind::kFile:
      inst = ParseInstance(ReadFile(source.path));
      break;
  }
  if (valuation) {
    ValuationSpec v = *valuation;
    v.seed = seed + 1;
    inst = AssignValues(inst, v);
  }
  return inst;
}

std::string InstanceId(const InstanceSource& source, std::uint64_t seed) {
  switch (source.kind) {
    case InstanceSource::Kind::kWorkload:
      return std::string(source.workload.family == WorkloadFamily::kUniform
                             ? "uniform"
                             : "skewed") +
             "-n" + std::to_string(source.workload.n) + "-m" +
             std::to_string(source.workload.m) + "-s" + std::to_string(seed);
    case InstanceSource::Kind::kHarmonic:
      return "harmonic-m" + std::to_string(source.size);
    case InstanceSource::Kind::kPartition:
      return "partition-n" + std::to_string(source.size);
    case InstanceSource::Kind::kLaminar:
      return "laminar-t" + std::to_string(source.size);
    case InstanceSource::Kind::kFile:
      return "file:" + Clean(source.path);
  }
  return "unknown";
}

std::string ValuationLabel(const std::optional<ValuationSpec>& v) {
  if (!v) return "given";
  std::string label = ModelName(v->model);
  if (v->model == ValuationModel::kZipf) return label + ":a=" + Short(v->a);
  label += ":k=" + Short(v->k);
  if (v->model == ValuationModel::kAdditive) {
    label += std::string(":") + AssignerName(v->assigner);
  }
  return label;
}

int DefaultWorkers() {
  if (const char* env = std::getenv("QPRICE_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::vector<ResultRow> RunTask(const GridCell& cell, std::uint64_t seed) {
  ResultRow base;
  base.instance_id = InstanceId(cell.source, seed);
  base.valuation = ValuationLabel(cell.valuation);
  base.seed = seed;
  base.repetitions = cell.repetitions;
  std::vector<ResultRow> rows;
  Instance inst;
  try {
    inst = BuildInstance(cell.source, cell.valuation, seed);
  } catch (const std::exception& e) {
    for (const std::string& a : cell.algorithms) {
      ResultRow r = base;
      r.algorithm = a;
      r.status = "error: " + Clean(e.what());
      rows.push_back(std::move(r));
    }
    return rows;
  }
  const InstanceStats stats = ComputeStats(inst);
  base.m = stats.num_bundles;
  base.n = stats.num_items;
  base.max_degree = stats.max_degree;

  std::optional<double> sum, subadditive;
  std::string bound_error;
  try {
    if (cell.sum_bound) sum = SumBound(inst).value;
    if (cell.subadditive_bound) subadditive = SubadditiveBound(inst).value;
  } catch (const std::exception& e) {
    bound_error = "bound error: " + Clean(e.what());
  }

  for (const std::string& a : cell.algorithms) {
    ResultRow r = base;
    r.algorithm = cell.options.refine ? a + "+refine" : a;
    try {
      std::vector<double> times;
      for (int rep = 0; rep < cell.repetitions; ++rep) {
        const AlgoReport report = RunAlgorithm(a, inst, cell.options);
        if (rep == 0) {
          r.revenue = report.outcome.revenue;
        } else if (report.outcome.revenue != r.revenue) {
          r.status = "nondeterministic";
        }
        times.push_back(report.outcome.elapsed_ms());
      }
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      r.elapsed_ms = mean;
      r.elapsed_ms_std =
          times.size() > 1 ? std::sqrt(var / (times.size() - 1.0)) : 0.0;
      if (sum) r.ratio_sum = *sum > 0.0 ? r.revenue / *sum : 0.0;
      if (subadditive) {
        r.ratio_subadditive =
            *subadditive > 0.0 ? r.revenue / *subadditive : 0.0;
      }
      if (!bound_error.empty() && r.status == "ok") r.status = bound_error;
    } catch (const std::exception& e) {
      r.status = "error: " + Clean(e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> RunGrid(const GridConfig& config, int workers) {
  std::vector<std::pair<const GridCell*, std::uint64_t>> tasks;
  for (const GridCell& cell : config.cells) {
    for (std::uint64_t seed : cell.seeds) tasks.emplace_back(&cell, seed);
  }
  std::vector<std::vector<ResultRow>> results(tasks.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t t = next++; t < tasks.size(); t = next++) {
      results[t] = RunTask(*tasks[t].first, tasks[t].second);
    }
  };
  const int count =
      std::clamp(workers, 1, std::max(1, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  std::vector<ResultRow> rows;
  for (auto& r : results) {
    for (ResultRow& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

const std::string& CsvHeader() {
  static const std::string kHeader =
      "instance_id,m,n,B,valuation,algorithm,seed,revenue,ratio_sum,"
      "ratio_subadditive,elapsed_ms,elapsed_ms_std,repetitions,status";
  return kHeader;
}

std::string CsvLine(const ResultRow& r, bool timing) {
  char ms[64] = "";
  char sd[64] = "";
  if (timing) {
    std::snprintf(ms, sizeof(ms), "%.3f", r.elapsed_ms);
    std::snprintf(sd, sizeof(sd), "%.3f", r.elapsed_ms_std);
  }
  return r.instance_id + "," + std::to_string(r.m) + "," +
         std::to_string(r.n) + "," + std::to_string(r.max_degree) + "," +
         r.valuation + "," + r.algorithm + "," + std::to_string(r.seed) + "," +
         Num(r.revenue) + "," + (r.ratio_sum ? Num(*r.ratio_sum) : "") + "," +
         (r.ratio_subadditive ? Num(*r.ratio_subadditive) : "") + "," + ms +
         "," + sd + "," + std::to_string(r.repetitions) + "," + r.status;
}

Json RowToJson(const ResultRow& r, bool timing) {
  Json j{{"instance_id", r.instance_id}, {"m", r.m},
         {"n", r.n},                     {"B", r.max_degree},
         {"valuation", r.valuation},     {"algorithm", r.algorithm},
         {"seed", r.seed},               {"revenue", r.revenue}};
  j["ratio_sum"] = r.ratio_sum ? Json(*r.ratio_sum) : Json(nullptr);
  j["ratio_subadditive"] =
      r.ratio_subadditive ? Json(*r.ratio_subadditive) : Json(nullptr);
  if (timing) {
    j["elapsed_ms"] = r.elapsed_ms;
    j["elapsed_ms_std"] = r.elapsed_ms_std;
  }
  j["repetitions"] = r.repetitions;
  j["status"] = r.status;
  return j;
}

}  // namespace qprice
