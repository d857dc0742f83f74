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

// qprice: command-line front end.
//
// Exit codes: 0 ok, 1 usage or invalid input, 2 runtime failure. Errors are
// one JSON line on stderr: {"error": "...", "kind": "usage" | "runtime"}.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qprice/algorithms.h"
#include "qprice/bounds.h"
#include "qprice/generators.h"
#include "qprice/grid.h"
#include "qprice/json_io.h"
#include "qprice/lp.h"
#include "qprice/marketplace.h"

namespace {

using qprice::Json;

void Emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
  } else {
    qprice::WriteFile(out, text + '\n');
  }
}

qprice::Instance LoadInstance(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return qprice::ParseInstance(ss.str());
  }
  return qprice::ParseInstance(qprice::ReadFile(path));
}

Json ParseJsonFile(const std::string& path) {
  try {
    return Json::parse(qprice::ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw qprice::InvalidInputError("malformed JSON in '" + path +
                                    "': " + e.what());
  }
}

int Fail(const std::string& message, bool usage) {
  std::cerr << Json{{"error", message}, {"kind", usage ? "usage" : "runtime"}}
                   .dump()
            << '\n';
  return usage ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bundle pricing for single-minded buyers"};
  app.require_subcommand(1);
  std::string out;

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family = "uniform";
  int n = 1000, m = 100, t = 2;
  double mean = 0.0, spread = 0.0, skew = 1.5;
  std::uint64_t seed = 0;
  gen->add_option("--family", family,
                  "uniform | skewed | harmonic | partition | laminar")
      ->capture_default_str();
  gen->add_option("--n", n, "items (workloads, partition)")
      ->capture_default_str();
  gen->add_option("--m", m, "bundles (workloads, harmonic)")
      ->capture_default_str();
  gen->add_option("--t", t, "laminar depth")->capture_default_str();
  gen->add_option("--mean", mean, "uniform workload mean size (0: 0.4 n)");
  gen->add_option("--spread", spread, "uniform workload size sd (0: mean/6)");
  gen->add_option("--skew", skew, "skewed workload size exponent")
      ->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("-o,--out", out, "output file (default stdout)");

  // val
  auto* val = app.add_subcommand("val", "assign valuations to an instance");
  std::string input;
  std::string model = "uniform", assigner = "uniform";
  double k = 10.0, a = 2.0;
  int zipf_support = qprice::kDefaultZipfSupport;
  val->add_option("-i,--in", input, "instance file (default stdin)");
  val->add_option("--model", model, "uniform | zipf | exp | normal | additive")
      ->capture_default_str();
  val->add_option("--k", k)->capture_default_str();
  val->add_option("--a", a, "zipf exponent")->capture_default_str();
  val->add_option("--assigner", assigner, "additive: uniform | binomial")
      ->capture_default_str();
  val->add_option("--zipf-support", zipf_support)->capture_default_str();
  val->add_option("--seed", seed)->capture_default_str();
  val->add_option("-o,--out", out);

  // price
  auto* price = app.add_subcommand("price", "run a pricing algorithm");
  std::string algo = "ubp";
  double epsilon = 1.0;
  std::optional<double> max_capacity;
  bool refine = false, no_timing = false;
  price->add_option("-i,--in", input, "instance file (default stdin)");
  price->add_option("--algo", algo, "ubp | uip | lpip | cip | layering | xos")
      ->capture_default_str();
  price->add_option("--epsilon", epsilon, "cip capacity step")
      ->capture_default_str();
  price->add_option("--max-capacity", max_capacity, "cip largest capacity");
  price->add_flag("--refine", refine, "post-process with the sold-set LP");
  price->add_flag("--no-timing", no_timing, "omit elapsed_ms");
  price->add_option("-o,--out", out);

  // bound
  auto* bound = app.add_subcommand("bound", "revenue upper bound");
  std::string kind = "sum", order = "decreasing", mode = "relaxed";
  std::optional<int> max_rows;
  bound->add_option("-i,--in", input, "instance file (default stdin)");
  bound->add_option("--kind", kind, "sum | subadditive")->capture_default_str();
  bound->add_option("--cover-order", order, "decreasing | increasing")
      ->capture_default_str();
  bound->add_option("--mode", mode, "relaxed | all-sold")
      ->capture_default_str();
  bound->add_option("--max-cover-rows", max_rows);
  bound->add_option("-o,--out", out);

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment grid");
  std::string grid_path;
  int workers = qprice::DefaultWorkers();
  bool jsonl = false;
  bench->add_option("--grid", grid_path, "grid JSON")->required();
  bench->add_option("--workers", workers, "parallel cells")
      ->capture_default_str();
  bench->add_flag("--jsonl", jsonl, "JSON lines instead of CSV");
  bench->add_flag("--no-timing", no_timing, "leave elapsed columns empty");
  bench->add_option("-o,--out", out);

  // lowerbound
  auto* lower = app.add_subcommand("lowerbound", "lower-bound families");
  bool verify = false;
  lower->add_option("--family", family, "laminar | harmonic | partition")
      ->capture_default_str();
  lower->add_option("--t", t, "laminar depth")->capture_default_str();
  lower->add_option("--m", m, "harmonic size")->capture_default_str();
  lower->add_option("--n", n, "partition size")->capture_default_str();
  lower->add_flag("--verify", verify, "check against closed forms");
  lower->add_option("-o,--out", out);

  // conflict
  auto* conflict = app.add_subcommand("conflict", "conflict-set instance");
  std::string table_path, queries_path, support_path, support_out, key;
  int count = 10, perturbations = 1;
  conflict->add_option("--table", table_path, "CSV table")->required();
  conflict->add_option("--key", key, "primary-key column (default first)");
  conflict->add_option("--queries", queries_path, "JSON array of queries")
      ->required();
  conflict->add_option("--support", support_path, "support JSON to reuse");
  conflict->add_option("--count", count, "neighbors to generate")
      ->capture_default_str();
  conflict->add_option("--perturbations", perturbations, "cells per neighbor")
      ->capture_default_str();
  conflict->add_option("--seed", seed)->capture_default_str();
  conflict->add_option("--support-out", support_out, "write the support");
  conflict->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail(e.what(), true);
  }

  try {
    if (*gen) {
      qprice::Instance inst;
      if (family == "uniform" || family == "skewed") {
        qprice::WorkloadSpec spec;
        spec.family = qprice::ParseWorkloadFamily(family);
        spec.n = n;
        spec.m = m;
        spec.mean_size = mean;
        spec.size_spread = spread;
        spec.skew_exponent = skew;
        spec.seed = seed;
        inst = qprice::GenWorkload(spec);
      } else if (family == "harmonic") {
        inst = qprice::GenHarmonic(m);
      } else if (family == "partition") {
        inst = qprice::GenPartition(n);
      } else if (family == "laminar") {
        inst = qprice::GenLaminar(t).instance;
      } else {
        throw qprice::InvalidInputError("unknown family '" + family + "'");
      }
      Emit(qprice::DumpInstance(inst), out);
    } else if (*val) {
      qprice::ValuationSpec spec;
      spec.model = qprice::ParseModel(model);
      spec.k = k;
      spec.a = a;
      spec.assigner = qprice::ParseAssigner(assigner);
      spec.zipf_support = zipf_support;
      spec.seed = seed;
      Emit(qprice::DumpInstance(qprice::AssignValues(LoadInstance(input), spec)),
           out);
    } else if (*price) {
      qprice::AlgorithmOptions options;
      options.cip.epsilon = epsilon;
      options.cip.max_capacity = max_capacity;
      options.refine = refine;
      const qprice::Instance inst = LoadInstance(input);
      const qprice::AlgoReport report =
          qprice::RunAlgorithm(algo, inst, options);
      Emit(qprice::ReportToJson(report, !no_timing).dump(), out);
    } else if (*bound) {
      const qprice::Instance inst = LoadInstance(input);
      qprice::BoundReport report;
      if (kind == "sum") {
        report = qprice::SumBound(inst);
      } else if (kind == "subadditive") {
        qprice::SubadditiveConfig config;
        if (order == "increasing") {
          config.order = qprice::SubadditiveConfig::Order::kIncreasingValue;
        } else if (order != "decreasing") {
          throw qprice::InvalidInputError("unknown cover order '" + order +
                                          "'");
        }
        if (mode == "all-sold") {
          config.mode = qprice::SubadditiveConfig::Mode::kAllSold;
        } else if (mode != "relaxed") {
          throw qprice::InvalidInputError("unknown mode '" + mode + "'");
        }
        config.max_cover_rows = max_rows;
        report = qprice::SubadditiveBound(inst, config);
      } else {
        throw qprice::InvalidInputError("unknown bound kind '" + kind + "'");
      }
      Emit(qprice::BoundToJson(report).dump(), out);
    } else if (*bench) {
      const qprice::GridConfig config =
          qprice::GridFromJson(ParseJsonFile(grid_path));
      const std::vector<qprice::ResultRow> rows =
          qprice::RunGrid(config, workers);
      std::string text;
      if (!jsonl) text = qprice::CsvHeader() + '\n';
      for (const qprice::ResultRow& r : rows) {
        text += jsonl ? qprice::RowToJson(r, !no_timing).dump()
                      : qprice::CsvLine(r, !no_timing);
        text += '\n';
      }
      if (!text.empty()) text.pop_back();
      Emit(text, out);
    } else if (*lower) {
      Json report;
      bool pass = true;
      if (family == "laminar") {
        const qprice::LaminarFamily fam = qprice::GenLaminar(t);
        const qprice::InstanceStats stats = qprice::ComputeStats(fam.instance);
        const double ubp = qprice::Ubp(fam.instance).outcome.revenue;
        report = Json{{"family", "laminar"},
                      {"t", t},
                      {"m", stats.num_bundles},
                      {"n", stats.num_items},
                      {"B", stats.max_degree},
                      {"sum_of_values", stats.total_value},
                      {"opt", fam.opt},
                      {"ubp", ubp},
                      {"ubp_reference", fam.ubp_reference}};
        pass = std::abs(stats.total_value - fam.opt) <= 1e-9 * fam.opt &&
               std::abs(ubp - fam.ubp_reference) <= 1e-9 * fam.ubp_reference;
      } else if (family == "harmonic") {
        const qprice::Instance inst = qprice::GenHarmonic(m);
        const double sum = qprice::SumBound(inst).value;
        const double ubp = qprice::Ubp(inst).outcome.revenue;
        double h = 0.0;
        for (int i = m; i >= 1; --i) h += 1.0 / i;
        report = Json{{"family", "harmonic"}, {"m", m},   {"sum_of_values", sum},
                      {"harmonic_number", h}, {"ubp", ubp}, {"ubp_reference", 1.0}};
        pass = std::abs(ubp - 1.0) <= 1e-9 && std::abs(sum - h) <= 1e-9 * h;
      } else if (family == "partition") {
        const qprice::Instance inst = qprice::GenPartition(n);
        const double sum = qprice::SumBound(inst).value;
        const double ubp = qprice::Ubp(inst).outcome.revenue;
        report = Json{{"family", "partition"}, {"n", n},
                      {"m", inst.num_bundles()}, {"sum_of_values", sum},
                      {"ubp", ubp}};
        pass = ubp == sum;
      } else {
        throw qprice::InvalidInputError("unknown family '" + family + "'");
      }
      if (verify) report["verify"] = pass ? "pass" : "fail";
      Emit(report.dump(), out);
      if (verify && !pass) return 2;
    } else if (*conflict) {
      std::ifstream table_in(table_path);
      if (!table_in) throw std::runtime_error("cannot open '" + table_path + "'");
      const qprice::MicroTable table = qprice::ReadCsv(table_in, key);
      const std::vector<qprice::QueryVector> vectors =
          qprice::QueryVectorsFromJson(ParseJsonFile(queries_path));
      for (const auto& v : vectors) {
        for (const auto& q : v) qprice::ValidateQuery(q, table);
      }
      const qprice::SupportSet support =
          support_path.empty()
              ? qprice::GenSupport(table, count, perturbations, seed)
              : qprice::SupportFromJson(ParseJsonFile(support_path), table);
      if (!support_out.empty()) {
        qprice::WriteFile(support_out,
                          qprice::SupportToJson(support).dump() + '\n');
      }
      Emit(qprice::DumpInstance(qprice::ConflictInstance(vectors, support)),
           out);
    }
  } catch (const qprice::InvalidInputError& e) {
    return Fail(e.what(), true);
  } catch (const std::exception& e) {
    return Fail(e.what(), false);
  }
  return 0;
}
