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

#ifndef PROPSEG_MATCHING_H_
#define PROPSEG_MATCHING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "propseg/proposition.h"

namespace propseg {

// Decides whether two propositions count as the same proposition.
class Matcher {
 public:
  enum class Kind { kJaccardThreshold, kExact };

  static constexpr double kDefaultTheta = 0.8;

  // Throws InvariantError unless theta is in (0, 1].
  static Matcher Jaccard(double theta = kDefaultTheta);
  static Matcher Exact();

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }

  // Jaccard similarity >= theta (relative tolerance 1e-9), or identical
  // index sets for the exact matcher.
  bool Accepts(const Proposition &a, const Proposition &b) const;
  bool AcceptsSimilarity(double similarity) const;

  std::string ToString() const;

 private:
  Matcher(Kind kind, double theta) : kind_(kind), theta_(theta) {}

  Kind kind_;
  double theta_;
};

struct MatchedPair {
  std::size_t left;
  std::size_t right;
  double similarity;

  bool operator==(const MatchedPair &) const = default;
};

// Injective pairing between two proposition lists.
struct MatchResult {
  std::vector<MatchedPair> pairs;  // sorted by left index
  std::vector<std::size_t> unmatched_left;
  std::vector<std::size_t> unmatched_right;

  std::size_t size() const { return pairs.size(); }
  double TotalSimilarity() const;
};

// Maximum-cardinality matching among the pairs accepted by the matcher.
// Among maximum matchings the total Jaccard similarity is maximized, and
// remaining ties go to the lexicographically smallest sorted pair list.
// Solved with the Hungarian algorithm on a padded square matrix.
MatchResult MatchSets(std::span<const Proposition> left,
                      std::span<const Proposition> right,
                      const Matcher &matcher);

// Largest instance the brute-force oracle accepts, per side.
inline constexpr std::size_t kBruteForceLimit = 8;

// Exhaustive enumeration of injective pairings with the same objective and
// tie-breaking as MatchSets. Throws OracleSizeError above kBruteForceLimit.
MatchResult BruteForceMatch(std::span<const Proposition> left,
                            std::span<const Proposition> right,
                            const Matcher &matcher);

}  // namespace propseg

#endif  // PROPSEG_MATCHING_H_
