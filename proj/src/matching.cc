// Copyright 2026 The PropSeg Authors.
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

#include "propseg/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "propseg/errors.h"

namespace propseg {
namespace {

// Relative tolerance for the threshold test.
constexpr double kThresholdTolerance = 1e-9;

// Absolute tolerance when comparing total similarities of two matchings.
constexpr double kTotalTolerance = 1e-9;

// Objective value of a matching: cardinality first, similarity second.
struct Objective {
  std::size_t cardinality = 0;
  double similarity = 0.0;
};

Objective Evaluate(const std::vector<MatchedPair> &pairs) {
  Objective value;
  value.cardinality = pairs.size();
  for (const MatchedPair &pair : pairs) value.similarity += pair.similarity;
  return value;
}

bool Equivalent(const Objective &a, const Objective &b) {
  return a.cardinality == b.cardinality &&
         std::abs(a.similarity - b.similarity) <= kTotalTolerance;
}

bool Better(const Objective &a, const Objective &b) {
  if (a.cardinality != b.cardinality) return a.cardinality > b.cardinality;
  return a.similarity > b.similarity + kTotalTolerance;
}

bool LexLess(const std::vector<MatchedPair> &a,
             const std::vector<MatchedPair> &b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const MatchedPair &x, const MatchedPair &y) {
        return std::tie(x.left, x.right) < std::tie(y.left, y.right);
      });
}

// Similarity of every left/right pair, or a negative value where the
// matcher rejects the pair.
class PairTable {
 public:
  PairTable(std::span<const Proposition> left,
            std::span<const Proposition> right, const Matcher &matcher)
      : rows_(left.size()), cols_(right.size()), table_(rows_ * cols_, -1.0) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (matcher.Accepts(left[i], right[j])) {
          table_[i * cols_ + j] = JaccardSimilarity(left[i], right[j]);
        }
      }
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool accepted(std::size_t i, std::size_t j) const { return at(i, j) >= 0.0; }
  double at(std::size_t i, std::size_t j) const {
    return table_[i * cols_ + j];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> table_;
};

// Minimum-cost perfect assignment on a square matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns the column assigned to each row.
std::vector<std::size_t> SolveAssignment(
    const std::vector<std::vector<double>> &cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; index 0 is the virtual source row/column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t row0 = row_of_col[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double slack = cost[row0 - 1][col - 1] - u[row0] - v[col];
        if (slack < min_slack[col]) {
          min_slack[col] = slack;
          way[col] = col0;
        }
        if (min_slack[col] < delta) {
          delta = min_slack[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[row_of_col[col]] += delta;
          v[col] -= delta;
        } else {
          min_slack[col] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t col = 1; col <= n; ++col) {
    if (row_of_col[col] != 0) col_of_row[row_of_col[col] - 1] = col - 1;
  }
  return col_of_row;
}

// Best matching restricted to the given free rows and columns.
std::vector<MatchedPair> SolveRestricted(const PairTable &table,
                                         const std::vector<std::size_t> &rows,
                                         const std::vector<std::size_t> &cols) {
  std::vector<MatchedPair> pairs;
  if (rows.empty() || cols.empty()) return pairs;
  const std::size_t n = std::max(rows.size(), cols.size());
  // Any cardinality gain outweighs the largest possible similarity total.
  const double bonus = static_cast<double>(n) + 1.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (table.accepted(rows[a], cols[b])) {
        cost[a][b] = -(bonus + table.at(rows[a], cols[b]));
      }
    }
  }
  const std::vector<std::size_t> assignment = SolveAssignment(cost);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const std::size_t b = assignment[a];
    if (b < cols.size() && table.accepted(rows[a], cols[b])) {
      pairs.push_back({rows[a], cols[b], table.at(rows[a], cols[b])});
    }
  }
  return pairs;
}

void SortPairs(std::vector<MatchedPair> *pairs) {
  std::sort(pairs->begin(), pairs->end(),
            [](const MatchedPair &x, const MatchedPair &y) {
              return std::tie(x.left, x.right) < std::tie(y.left, y.right);
            });
}

MatchResult Finish(std::vector<MatchedPair> pairs, std::size_t rows,
                   std::size_t cols) {
  SortPairs(&pairs);
  MatchResult result;
  std::vector<bool> left_used(rows, false), right_used(cols, false);
  for (const MatchedPair &pair : pairs) {
    left_used[pair.left] = true;
    right_used[pair.right] = true;
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (!left_used[i]) result.unmatched_left.push_back(i);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (!right_used[j]) result.unmatched_right.push_back(j);
  }
  result.pairs = std::move(pairs);
  return result;
}

std::vector<std::size_t> FreeIndices(const std::vector<bool> &used) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) out.push_back(i);
  }
  return out;
}

struct BruteForceSearch {
  const PairTable &table;
  std::vector<bool> right_used;
  std::vector<MatchedPair> current;
  std::vector<MatchedPair> best;
  Objective best_value;

  void Run(std::size_t row) {
    if (row == table.rows()) {
      const Objective value = Evaluate(current);
      if (Better(value, best_value) ||
          (Equivalent(value, best_value) && LexLess(current, best))) {
        best = current;
        best_value = value;
      }
      return;
    }
    for (std::size_t col = 0; col < table.cols(); ++col) {
      if (right_used[col] || !table.accepted(row, col)) continue;
      right_used[col] = true;
      current.push_back({row, col, table.at(row, col)});
      Run(row + 1);
      current.pop_back();
      right_used[col] = false;
    }
    Run(row + 1);
  }
};

}  // namespace

Matcher Matcher::Jaccard(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvariantError("theta must be in (0, 1], got " +
                         std::to_string(theta));
  }
  return Matcher(Kind::kJaccardThreshold, theta);
}

Matcher Matcher::Exact() { return Matcher(Kind::kExact, 1.0); }

bool Matcher::AcceptsSimilarity(double similarity) const {
  if (kind_ == Kind::kExact) return similarity == 1.0;
  return similarity >= theta_ * (1.0 - kThresholdTolerance);
}

bool Matcher::Accepts(const Proposition &a, const Proposition &b) const {
  if (kind_ == Kind::kExact) return a == b;
  return AcceptsSimilarity(JaccardSimilarity(a, b));
}

std::string Matcher::ToString() const {
  if (kind_ == Kind::kExact) return "exact";
  std::ostringstream out;
  out << "jaccard@" << theta_;
  return out.str();
}

double MatchResult::TotalSimilarity() const {
  return Evaluate(pairs).similarity;
}

MatchResult MatchSets(std::span<const Proposition> left,
                      std::span<const Proposition> right,
                      const Matcher &matcher) {
  const PairTable table(left, right, matcher);
  const std::size_t rows = table.rows();
  const std::size_t cols = table.cols();
  std::vector<bool> row_used(rows, false), col_used(cols, false);

  std::vector<MatchedPair> current =
      SolveRestricted(table, FreeIndices(row_used),
                      FreeIndices(col_used));
  const Objective optimum = Evaluate(current);

  // Fix pairs greedily in lexicographic order whenever an optimal matching
  // containing them and all previously fixed pairs still exists. The final
  // fixed set is the lexicographically smallest optimal pair list.
  std::vector<MatchedPair> fixed;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols && !row_used[i]; ++j) {
      if (col_used[j] || !table.accepted(i, j)) continue;
      const bool in_current =
          std::any_of(current.begin(), current.end(), [&](const auto &p) {
            return p.left == i && p.right == j;
          });
      if (!in_current) {
        std::vector<MatchedPair> candidate = fixed;
        candidate.push_back({i, j, table.at(i, j)});
        row_used[i] = col_used[j] = true;
        for (const MatchedPair &p :
             SolveRestricted(table, FreeIndices(row_used),
                             FreeIndices(col_used))) {
          candidate.push_back(p);
        }
        row_used[i] = col_used[j] = false;
        if (!Equivalent(Evaluate(candidate), optimum)) continue;
        current = std::move(candidate);
      }
      fixed.push_back({i, j, table.at(i, j)});
      row_used[i] = col_used[j] = true;
    }
  }
  return Finish(std::move(fixed), rows, cols);
}

MatchResult BruteForceMatch(std::span<const Proposition> left,
                            std::span<const Proposition> right,
                            const Matcher &matcher) {
  if (left.size() > kBruteForceLimit || right.size() > kBruteForceLimit) {
    throw OracleSizeError("brute-force matching supports at most " +
                          std::to_string(kBruteForceLimit) +
                          " propositions per side, got " +
                          std::to_string(left.size()) + "x" +
                          std::to_string(right.size()));
  }
  const PairTable table(left, right, matcher);
  BruteForceSearch search{table, std::vector<bool>(table.cols(), false), {},
                          {}, {}};
  search.Run(0);
  return Finish(std::move(search.best), table.rows(), table.cols());
}

}  // namespace propseg
