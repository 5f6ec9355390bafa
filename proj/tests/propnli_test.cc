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

#include "propseg/propnli.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "propseg/errors.h"

namespace propseg {
namespace {

using V = PropositionVerdict;

std::string Words(const TokenSet &indices,
                  const std::vector<std::string> &tokens) {
  std::string out;
  for (TokenIndex i : indices) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

TokenSet Range(int lo, int hi) {
  TokenSet out;
  for (int i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

void CheckPartition(const SpanMap &map, std::size_t n) {
  TokenSet all = Union(Union(map.faithful, map.hallucinated), map.uncovered);
  CHECK(all == Range(0, static_cast<int>(n)));
  CHECK(Intersection(map.faithful, map.hallucinated).empty());
  CHECK(Intersection(map.faithful, map.uncovered).empty());
  CHECK(Intersection(map.hallucinated, map.uncovered).empty());
}

TEST_CASE("crash summary span map") {
  const SummarySpans summary = testing::CrashSummary();
  const auto set = LabeledPropositionSet::FromSummary(summary);
  CHECK(AggregateConjunction(set) == V::kNonEntail);
  CHECK(ClassifySummary(set) == SummaryVerdict::kHallucinated);

  const SpanMap map = HallucinatedSpans(set);
  CHECK(Words(map.faithful, summary.tokens) ==
        "A man has been taken to hospital");
  CHECK(Words(map.hallucinated, summary.tokens) ==
        "following a one-vehicle crash on the A96 in Aberdeenshire");
  CHECK(map.uncovered == TokenSet{16});
  CheckPartition(map, summary.tokens.size());

  const TokenClasses predicted = map.ToTokenClasses();
  CHECK(predicted.hallucinated == Range(7, 16));
  CHECK(predicted.faithful == Union(Range(0, 7), TokenSet{16}));
  const TokenClasses gold = GoldTokenClasses(summary);
  CHECK(gold.hallucinated == TokenSet{9, 10, 14, 15});
}

TEST_CASE("aggregation examples") {
  LabeledPropositionSet set{testing::Words("a b c d"), {}};
  CHECK_THROWS_AS(AggregateConjunction(set), EmptyHypothesisError);
  CHECK_THROWS_AS(ClassifySummary(set), EmptyHypothesisError);

  set.items = {{Proposition({0, 1}), V::kEntail}};
  CHECK(AggregateConjunction(set) == V::kEntail);
  set.items[0].verdict = V::kNonEntail;
  CHECK(AggregateConjunction(set) == V::kNonEntail);

  set.items = {{Proposition({0, 1}), V::kEntail},
               {Proposition({2, 3}), V::kEntail}};
  CHECK(AggregateConjunction(set) == V::kEntail);
  CHECK(ClassifySummary(set) == SummaryVerdict::kFaithful);
  SpanMap map = HallucinatedSpans(set);
  CHECK(map.hallucinated.empty());
  CHECK(map.faithful == Range(0, 4));

  // A non-entailed span inside an entailed one leaves nothing hallucinated.
  set.items = {{Proposition({0, 1, 2}), V::kEntail},
               {Proposition({1, 2}), V::kNonEntail}};
  CHECK(ClassifySummary(set) == SummaryVerdict::kHallucinated);
  map = HallucinatedSpans(set);
  CHECK(map.hallucinated.empty());
  CHECK(map.uncovered == TokenSet{3});
}

TEST_CASE("three-way aggregation") {
  using L = EntailmentLabel;
  CHECK(AggregateThreeWay(std::vector<L>{L::kEntailment, L::kEntailment}) ==
        L::kEntailment);
  CHECK(AggregateThreeWay(std::vector<L>{L::kEntailment, L::kNeutral}) ==
        L::kNeutral);
  CHECK(AggregateThreeWay(std::vector<L>{L::kNeutral, L::kContradiction,
                                         L::kEntailment}) ==
        L::kContradiction);
  CHECK_THROWS_AS(AggregateThreeWay(std::vector<L>{}), EmptyHypothesisError);
}

TEST_CASE("aggregation and span properties") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    LabeledPropositionSet set{std::vector<std::string>(n, "w"), {}};
    for (int k = 1 + rng() % 6; k > 0; --k) {
      set.items.push_back({testing::RandomProposition(rng, n),
                           rng() % 3 == 0 ? V::kNonEntail : V::kEntail});
    }
    const auto bad = std::count_if(
        set.items.begin(), set.items.end(),
        [](const LabeledProposition &x) { return x.verdict == V::kNonEntail; });
    CHECK((ClassifySummary(set) == SummaryVerdict::kHallucinated) ==
          (bad >= 1));

    // Monotone: flipping one entail to non-entail never yields entail from
    // non-entail.
    LabeledPropositionSet flipped = set;
    flipped.items[rng() % flipped.items.size()].verdict = V::kNonEntail;
    if (AggregateConjunction(set) == V::kNonEntail) {
      CHECK(AggregateConjunction(flipped) == V::kNonEntail);
    }

    const SpanMap map = HallucinatedSpans(set);
    CheckPartition(map, n);

    LabeledPropositionSet shuffled = set;
    shuffled.items.push_back(set.items[rng() % set.items.size()]);
    std::shuffle(shuffled.items.begin(), shuffled.items.end(), rng);
    const SpanMap again = HallucinatedSpans(shuffled);
    CHECK(again.faithful == map.faithful);
    CHECK(again.hallucinated == map.hallucinated);
    CHECK(again.uncovered == map.uncovered);
  }
}

TEST_CASE("length buckets") {
  const std::vector<std::size_t> edges{5, 10};
  const std::vector<LengthExample> examples{
      {5, 1, 1}, {6, 0, 0}, {9, 1, 1}, {7, 1, 0}, {10, 0, 0}, {30, 0, 1},
  };
  const auto rows = LengthBucketReport(examples, edges);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].low == 5);
  CHECK(rows[0].high == 10);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].accuracy() == 0.75);
  CHECK(rows[1].low == 10);
  CHECK(!rows[1].high);
  CHECK(rows[1].n == 2);
  CHECK(rows[1].accuracy() == 0.5);

  const std::vector<std::size_t> single{0};
  const auto all = LengthBucketReport(examples, single);
  REQUIRE(all.size() == 1);
  CHECK(all[0].accuracy() == doctest::Approx(4.0 / 6.0));

  std::vector<LengthExample> with_short = examples;
  with_short.push_back({2, 1, 1});
  const auto under = LengthBucketReport(with_short, edges);
  REQUIRE(under.size() == 3);
  CHECK(under[0].underflow);
  CHECK(under[0].low == 0);
  CHECK(under[0].high == 5);
  CHECK(under[0].n == 1);

  const std::vector<std::size_t> wide{5, 10, 100};
  const auto sparse = LengthBucketReport(examples, wide);
  REQUIRE(sparse.size() == 3);
  CHECK(sparse[1].n == 2);
  CHECK(sparse[2].n == 0);
  CHECK(std::isnan(sparse[2].accuracy()));

  std::ostringstream csv;
  WriteBucketCsv(sparse, csv);
  CHECK(csv.str() ==
        "bucket_low,bucket_high,n,accuracy\n"
        "5,10,4,0.750000\n"
        "10,100,2,0.500000\n"
        "100,inf,0,nan\n");

  CHECK_THROWS_AS(LengthBucketReport(examples, std::vector<std::size_t>{}),
                  InvariantError);
  CHECK_THROWS_AS(
      LengthBucketReport(examples, std::vector<std::size_t>{5, 5}),
      InvariantError);
  CHECK_THROWS_AS(
      LengthBucketReport(examples, std::vector<std::size_t>{9, 3}),
      InvariantError);
}

}  // namespace
}  // namespace propseg
