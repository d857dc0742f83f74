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

// A tiny relational model for pricing queries by their conflict sets:
// single-table queries, neighbor databases, conflict sets, determinacy and
// arbitrage checks relative to a finite support.

#ifndef QPRICE_MARKETPLACE_H_
#define QPRICE_MARKETPLACE_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qprice/instance.h"
#include "qprice/pricing.h"

namespace qprice {

using Cell = std::variant<std::int64_t, std::string>;

std::string CellToString(const Cell& cell);

struct MicroTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int key_column = 0;

  // Throws InvalidInputError for unknown names.
  int ColumnIndex(const std::string& name) const;
  // Rectangular, key column in range, key values distinct.
  void Validate() const;

  friend bool operator==(const MicroTable&, const MicroTable&) = default;
};

// Header row, then one row per line; cells that parse fully as integers are
// integers, everything else is a string. No quoting.
MicroTable ReadCsv(std::istream& in, const std::string& key_column = "");
void WriteCsv(const MicroTable& table, std::ostream& out);

// Exact fraction in lowest terms, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational Of(std::int64_t num, std::int64_t den);
  friend auto operator<=>(const Rational&, const Rational&) = default;
};

struct Null {
  friend auto operator<=>(const Null&, const Null&) = default;
};

using AnswerCell = std::variant<Null, std::int64_t, std::string, Rational>;
// Result rows, sorted, so equal answers compare equal.
using Answer = std::vector<std::vector<AnswerCell>>;

enum class Aggregate { kCount, kSum, kAvg, kMin, kMax };
enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe, kLikePrefix };

struct Predicate {
  std::string column;
  Comparator op = Comparator::kEq;
  Cell constant;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct QueryDescriptor {
  enum class Form { kAggregate, kProject, kGroupBy };
  Form form = Form::kAggregate;
  Aggregate agg = Aggregate::kCount;
  std::string column = "*";          // aggregated column; "*" for count
  std::vector<std::string> columns;  // projected columns
  std::string group_column;          // group-by key
  std::optional<Predicate> where;

  friend bool operator==(const QueryDescriptor&,
                         const QueryDescriptor&) = default;
};

// A query vector; concatenation is plain vector concatenation.
using QueryVector = std::vector<QueryDescriptor>;

void ValidateQuery(const QueryDescriptor& query, const MicroTable& table);
Answer EvaluateQuery(const QueryDescriptor& query, const MicroTable& db);
std::vector<Answer> EvaluateVector(const QueryVector& queries,
                                   const MicroTable& db);

QueryVector Concat(const QueryVector& a, const QueryVector& b);

struct CellDiff {
  int row = 0;
  int column = 0;
  Cell value;
  friend bool operator==(const CellDiff&, const CellDiff&) = default;
};

struct SupportSet {
  MicroTable base;
  std::vector<std::vector<CellDiff>> neighbors;  // diffs against base
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(neighbors.size()); }
  MicroTable Materialize(int i) const;
};

// `count` neighbors, each with `perturbations` distinct non-key cells
// changed. Integers move by a nonzero offset of at most half the column
// range (at least 1); strings take a different value from the same column.
SupportSet GenSupport(const MicroTable& db, int count, int perturbations,
                      std::uint64_t seed);

// Neighbor indices whose answer to `queries` differs from the base answer.
std::vector<int> ConflictSet(const QueryVector& queries,
                             const SupportSet& support);

// One bundle per query vector over support.size() items; values 0.
Instance ConflictInstance(std::span<const QueryVector> vectors,
                          const SupportSet& support);

// True iff every neighbor agreeing with the base on q2 also agrees on q1.
bool Determines(const QueryVector& q2, const QueryVector& q1,
                const SupportSet& support);

using Pricer = std::function<double(const QueryVector&)>;

// Price a query vector as f(conflict set).
Pricer ConflictPricer(PricingVector f, SupportSet support);

// Per-query price list; a vector costs the sum over its queries. Queries
// missing from the list throw InvalidInputError.
Pricer TablePricer(std::vector<std::pair<QueryDescriptor, double>> prices);

struct Violation {
  enum class Kind { kInformation, kCombination };
  Kind kind = Kind::kInformation;
  // Information: queries[second] determines queries[first] yet costs less.
  // Combination: queries[first] || queries[second] costs more than both.
  int first = 0;
  int second = 0;
  double price_first = 0.0;
  double price_second = 0.0;
  double price_combined = 0.0;  // combination only
};

const char* ViolationKindName(Violation::Kind kind);

std::vector<Violation> ArbitrageCheck(const Pricer& pricer,
                                      std::span<const QueryVector> queries,
                                      const SupportSet& support);

}  // namespace qprice

#endif  // QPRICE_MARKETPLACE_H_
