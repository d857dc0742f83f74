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

#include "qprice/marketplace.h"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace qprice {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Cell ParseCell(const std::string& text) {
  if (!text.empty()) {
    size_t pos = 0;
    try {
      const long long v = std::stoll(text, &pos);
      if (pos == text.size()) return static_cast<std::int64_t>(v);
    } catch (const std::exception&) {
    }
  }
  return text;
}

AnswerCell ToAnswer(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

bool Matches(const Cell& cell, const Predicate& p) {
  if (p.op == Comparator::kLikePrefix) {
    const std::string text = CellToString(cell);
    const std::string prefix = CellToString(p.constant);
    return text.compare(0, prefix.size(), prefix) == 0;
  }
  if (cell.index() != p.constant.index()) return p.op == Comparator::kNe;
  switch (p.op) {
    case Comparator::kEq:
      return cell == p.constant;
    case Comparator::kNe:
      return cell != p.constant;
    case Comparator::kLt:
      return cell < p.constant;
    case Comparator::kLe:
      return cell <= p.constant;
    case Comparator::kGt:
      return cell > p.constant;
    case Comparator::kGe:
      return cell >= p.constant;
    case Comparator::kLikePrefix:
      break;
  }
  return false;
}

AnswerCell Aggregated(Aggregate agg, const std::vector<const Cell*>& cells) {
  if (agg == Aggregate::kCount) {
    return static_cast<std::int64_t>(cells.size());
  }
  if (cells.empty()) return Null{};
  if (agg == Aggregate::kMin || agg == Aggregate::kMax) {
    const Cell* best = cells.front();
    for (const Cell* c : cells) {
      if (agg == Aggregate::kMin ? *c < *best : *c > *best) best = c;
    }
    return ToAnswer(*best);
  }
  std::int64_t sum = 0;
  for (const Cell* c : cells) {
    const auto* v = std::get_if<std::int64_t>(c);
    if (v == nullptr) {
      throw InvalidInputError("sum/avg over a non-integer cell");
    }
    sum += *v;
  }
  if (agg == Aggregate::kSum) return sum;
  return Rational::Of(sum, static_cast<std::int64_t>(cells.size()));
}

std::vector<int> FilteredRows(const QueryDescriptor& q, const MicroTable& db) {
  std::vector<int> rows;
  const int col = q.where ? db.ColumnIndex(q.where->column) : -1;
  for (int r = 0; r < static_cast<int>(db.rows.size()); ++r) {
    if (col < 0 || Matches(db.rows[r][col], *q.where)) rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::string CellToString(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

int MicroTable::ColumnIndex(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw InvalidInputError("unknown column '" + name + "'");
  }
  return static_cast<int>(it - columns.begin());
}

void MicroTable::Validate() const {
  if (columns.empty()) throw InvalidInputError("table has no columns");
  if (key_column < 0 || key_column >= static_cast<int>(columns.size())) {
    throw InvalidInputError("key column out of range");
  }
  std::set<Cell> keys;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw InvalidInputError("row " + std::to_string(r) + " has " +
                              std::to_string(rows[r].size()) +
                              " cells, expected " +
                              std::to_string(columns.size()));
    }
    if (!keys.insert(rows[r][key_column]).second) {
      throw InvalidInputError("duplicate key " +
                              CellToString(rows[r][key_column]));
    }
  }
}

MicroTable ReadCsv(std::istream& in, const std::string& key_column) {
  MicroTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("empty CSV");
  table.columns = SplitCsvLine(line);
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    std::vector<Cell> row;
    for (const std::string& f : SplitCsvLine(line)) row.push_back(ParseCell(f));
    table.rows.push_back(std::move(row));
  }
  table.key_column = key_column.empty() ? 0 : table.ColumnIndex(key_column);
  table.Validate();
  return table;
}

void WriteCsv(const MicroTable& table, std::ostream& out) {
  for (size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << CellToString(row[c]);
    }
    out << '\n';
  }
}

Rational Rational::Of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInputError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

void ValidateQuery(const QueryDescriptor& q, const MicroTable& table) {
  if (q.where) table.ColumnIndex(q.where->column);
  switch (q.form) {
    case QueryDescriptor::Form::kAggregate:
    case QueryDescriptor::Form::kGroupBy:
      if (q.column == "*") {
        if (q.agg != Aggregate::kCount) {
          throw InvalidInputError("only count accepts column '*'");
        }
      } else {
        table.ColumnIndex(q.column);
      }
      if (q.form == QueryDescriptor::Form::kGroupBy) {
        table.ColumnIndex(q.group_column);
      }
      break;
    case QueryDescriptor::Form::kProject:
      if (q.columns.empty()) {
        throw InvalidInputError("projection needs at least one column");
      }
      for (const std::string& c : q.columns) table.ColumnIndex(c);
      break;
  }
}

Answer EvaluateQuery(const QueryDescriptor& q, const MicroTable& db) {
  ValidateQuery(q, db);
  const std::vector<int> rows = FilteredRows(q, db);
  const int col = q.column == "*" ? db.key_column : db.ColumnIndex(q.column);
  Answer answer;
  switch (q.form) {
    case QueryDescriptor::Form::kAggregate: {
      std::vector<const Cell*> cells;
      for (int r : rows) cells.push_back(&db.rows[r][col]);
      answer.push_back({Aggregated(q.agg, cells)});
      break;
    }
    case QueryDescriptor::Form::kProject: {
      std::vector<int> cols;
      for (const std::string& c : q.columns) cols.push_back(db.ColumnIndex(c));
      for (int r : rows) {
        std::vector<AnswerCell> out;
        for (int c : cols) out.push_back(ToAnswer(db.rows[r][c]));
        answer.push_back(std::move(out));
      }
      std::sort(answer.begin(), answer.end());
      break;
    }
    case QueryDescriptor::Form::kGroupBy: {
      const int key = db.ColumnIndex(q.group_column);
      std::map<Cell, std::vector<const Cell*>> groups;
      for (int r : rows) groups[db.rows[r][key]].push_back(&db.rows[r][col]);
      for (const auto& [k, cells] : groups) {
        answer.push_back({ToAnswer(k), Aggregated(q.agg, cells)});
      }
      break;
    }
  }
  return answer;
}

std::vector<Answer> EvaluateVector(const QueryVector& queries,
                                   const MicroTable& db) {
  std::vector<Answer> out;
  out.reserve(queries.size());
  for (const QueryDescriptor& q : queries) out.push_back(EvaluateQuery(q, db));
  return out;
}

QueryVector Concat(const QueryVector& a, const QueryVector& b) {
  QueryVector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

MicroTable SupportSet::Materialize(int i) const {
  if (i < 0 || i >= size()) throw InvalidInputError("neighbor out of range");
  MicroTable t = base;
  for (const CellDiff& d : neighbors[i]) t.rows[d.row][d.column] = d.value;
  return t;
}

SupportSet GenSupport(const MicroTable& db, int count, int perturbations,
                      std::uint64_t seed) {
  db.Validate();
  if (count < 1) throw InvalidInputError("support needs count >= 1");
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < static_cast<int>(db.rows.size()); ++r) {
    for (int c = 0; c < static_cast<int>(db.columns.size()); ++c) {
      if (c != db.key_column) cells.emplace_back(r, c);
    }
  }
  if (perturbations < 1 || perturbations > static_cast<int>(cells.size())) {
    throw InvalidInputError("perturbations must be in [1, " +
                            std::to_string(cells.size()) + "]");
  }
  // Per-column integer range and distinct string values.
  const int nc = static_cast<int>(db.columns.size());
  std::vector<std::int64_t> lo(nc, 0), hi(nc, 0);
  std::vector<bool> seen(nc, false);
  std::vector<std::vector<std::string>> strings(nc);
  for (const auto& row : db.rows) {
    for (int c = 0; c < nc; ++c) {
      if (const auto* v = std::get_if<std::int64_t>(&row[c])) {
        lo[c] = seen[c] ? std::min(lo[c], *v) : *v;
        hi[c] = seen[c] ? std::max(hi[c], *v) : *v;
        seen[c] = true;
      } else {
        strings[c].push_back(std::get<std::string>(row[c]));
      }
    }
  }
  for (auto& s : strings) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  std::mt19937_64 rng(seed);
  SupportSet support{db, {}, seed};
  for (int i = 0; i < count; ++i) {
    // Partial Fisher-Yates picks distinct cells.
    std::vector<std::pair<int, int>> pool = cells;
    std::vector<CellDiff> diffs;
    for (int p = 0; p < perturbations; ++p) {
      const int pick = std::uniform_int_distribution<int>(
          p, static_cast<int>(pool.size()) - 1)(rng);
      std::swap(pool[p], pool[pick]);
      const auto [r, c] = pool[p];
      const Cell& original = db.rows[r][c];
      Cell changed;
      if (const auto* v = std::get_if<std::int64_t>(&original)) {
        const std::int64_t half = std::max<std::int64_t>(1, (hi[c] - lo[c]) / 2);
        std::uniform_int_distribution<std::int64_t> offset(-half, half);
        std::int64_t d = 0;
        while (d == 0) d = offset(rng);
        changed = *v + d;
      } else {
        const std::string& s = std::get<std::string>(original);
        std::vector<std::string> others;
        for (const std::string& o : strings[c]) {
          if (o != s) others.push_back(o);
        }
        if (others.empty()) {
          changed = s + "'";
        } else {
          changed = others[std::uniform_int_distribution<size_t>(
              0, others.size() - 1)(rng)];
        }
      }
      diffs.push_back({r, c, std::move(changed)});
    }
    std::sort(diffs.begin(), diffs.end(), [](const CellDiff& a, const CellDiff& b) {
      return std::tie(a.row, a.column) < std::tie(b.row, b.column);
    });
    support.neighbors.push_back(std::move(diffs));
  }
  return support;
}

std::vector<int> ConflictSet(const QueryVector& queries,
                             const SupportSet& support) {
  const std::vector<Answer> base = EvaluateVector(queries, support.base);
  std::vector<int> out;
  for (int i = 0; i < support.size(); ++i) {
    if (EvaluateVector(queries, support.Materialize(i)) != base) {
      out.push_back(i);
    }
  }
  return out;
}

Instance ConflictInstance(std::span<const QueryVector> vectors,
                          const SupportSet& support) {
  std::vector<std::vector<Answer>> base;
  for (const QueryVector& q : vectors) {
    base.push_back(EvaluateVector(q, support.base));
  }
  std::vector<Bundle> bundles(vectors.size());
  for (int i = 0; i < support.size(); ++i) {
    const MicroTable neighbor = support.Materialize(i);
    for (size_t v = 0; v < vectors.size(); ++v) {
      if (EvaluateVector(vectors[v], neighbor) != base[v]) {
        bundles[v].items.push_back(i);
      }
    }
  }
  return Instance(support.size(), std::move(bundles));
}

bool Determines(const QueryVector& q2, const QueryVector& q1,
                const SupportSet& support) {
  const std::vector<Answer> base2 = EvaluateVector(q2, support.base);
  const std::vector<Answer> base1 = EvaluateVector(q1, support.base);
  for (int i = 0; i < support.size(); ++i) {
    const MicroTable neighbor = support.Materialize(i);
    if (EvaluateVector(q2, neighbor) == base2 &&
        EvaluateVector(q1, neighbor) != base1) {
      return false;
    }
  }
  return true;
}

Pricer ConflictPricer(PricingVector f, SupportSet support) {
  if (f.kind() != PricingVector::Kind::kUniformBundle &&
      f.dimension() != support.size()) {
    throw InvalidInputError("pricing dimension differs from support size");
  }
  return [f = std::move(f), support = std::move(support)](
             const QueryVector& q) {
    return BundlePrice(f, ConflictSet(q, support));
  };
}

Pricer TablePricer(std::vector<std::pair<QueryDescriptor, double>> prices) {
  return [prices = std::move(prices)](const QueryVector& q) {
    double total = 0.0;
    for (const QueryDescriptor& d : q) {
      const auto it = std::find_if(prices.begin(), prices.end(),
                                   [&](const auto& p) { return p.first == d; });
      if (it == prices.end()) {
        throw InvalidInputError("query missing from the price table");
      }
      total += it->second;
    }
    return total;
  };
}

const char* ViolationKindName(Violation::Kind kind) {
  return kind == Violation::Kind::kInformation ? "information" : "combination";
}

std::vector<Violation> ArbitrageCheck(const Pricer& pricer,
                                      std::span<const QueryVector> queries,
                                      const SupportSet& support) {
  const int q = static_cast<int>(queries.size());
  std::vector<double> price(q);
  std::vector<std::vector<int>> delta(q);
  for (int i = 0; i < q; ++i) {
    price[i] = pricer(queries[i]);
    delta[i] = ConflictSet(queries[i], support);
  }
  auto exceeds = [](double a, double b) {
    return a > b + 1e-9 * (1.0 + std::abs(b));
  };
  std::vector<Violation> out;
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      // queries[j] determines queries[i] iff delta_i is inside delta_j.
      const bool determined = std::includes(delta[j].begin(), delta[j].end(),
                                            delta[i].begin(), delta[i].end());
      if (determined && exceeds(price[i], price[j])) {
        out.push_back({Violation::Kind::kInformation, i, j, price[i],
                       price[j], 0.0});
      }
    }
  }
  for (int i = 0; i < q; ++i) {
    for (int j = i; j < q; ++j) {
      const double combined = pricer(Concat(queries[i], queries[j]));
      if (exceeds(combined, price[i] + price[j])) {
        out.push_back({Violation::Kind::kCombination, i, j, price[i],
                       price[j], combined});
      }
    }
  }
  return out;
}

}  // namespace qprice
