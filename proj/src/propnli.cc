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
#include <cstdio>
#include <limits>
#include <ostream>

#include "propseg/errors.h"

namespace propseg {

LabeledPropositionSet LabeledPropositionSet::FromSummary(
    const SummarySpans &summary) {
  summary.Validate();
  LabeledPropositionSet set;
  set.tokens = summary.tokens;
  for (std::size_t i = 0; i < summary.propositions.size(); ++i) {
    set.items.push_back({summary.propositions[i], summary.labels[i]});
  }
  return set;
}

PropositionVerdict AggregateConjunction(const LabeledPropositionSet &set) {
  if (set.items.empty()) {
    throw EmptyHypothesisError("cannot aggregate a hypothesis without "
                               "propositions");
  }
  const bool all_entailed =
      std::all_of(set.items.begin(), set.items.end(), [](const auto &item) {
        return item.verdict == PropositionVerdict::kEntail;
      });
  return all_entailed ? PropositionVerdict::kEntail
                      : PropositionVerdict::kNonEntail;
}

EntailmentLabel AggregateThreeWay(std::span<const EntailmentLabel> labels) {
  if (labels.empty()) {
    throw EmptyHypothesisError("cannot aggregate a hypothesis without "
                               "propositions");
  }
  auto has = [&](EntailmentLabel label) {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
  };
  if (has(EntailmentLabel::kContradiction)) {
    return EntailmentLabel::kContradiction;
  }
  if (has(EntailmentLabel::kNeutral)) return EntailmentLabel::kNeutral;
  return EntailmentLabel::kEntailment;
}

TokenClasses SpanMap::ToTokenClasses() const {
  return {Union(faithful, uncovered), hallucinated};
}

SpanMap HallucinatedSpans(const LabeledPropositionSet &set) {
  TokenSet entailed, rejected;
  for (const LabeledProposition &item : set.items) {
    item.proposition.ValidateFor(set.tokens.size());
    TokenSet &target =
        item.verdict == PropositionVerdict::kEntail ? entailed : rejected;
    target = Union(target, item.proposition.indices());
  }
  SpanMap map;
  map.faithful = entailed;
  map.hallucinated = Difference(rejected, entailed);
  for (std::size_t t = 0; t < set.tokens.size(); ++t) {
    const auto index = static_cast<TokenIndex>(t);
    if (!std::binary_search(entailed.begin(), entailed.end(), index) &&
        !std::binary_search(rejected.begin(), rejected.end(), index)) {
      map.uncovered.push_back(index);
    }
  }
  return map;
}

SummaryVerdict ClassifySummary(const LabeledPropositionSet &set) {
  return AggregateConjunction(set) == PropositionVerdict::kEntail
             ? SummaryVerdict::kFaithful
             : SummaryVerdict::kHallucinated;
}

TokenClasses GoldTokenClasses(const SummarySpans &summary) {
  TokenSet all;
  for (std::size_t t = 0; t < summary.tokens.size(); ++t) {
    all.push_back(static_cast<TokenIndex>(t));
  }
  return {Difference(all, summary.gold_hallucinated),
          summary.gold_hallucinated};
}

double BucketRow::accuracy() const {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(correct) / static_cast<double>(n);
}

std::vector<BucketRow> LengthBucketReport(
    std::span<const LengthExample> examples,
    std::span<const std::size_t> edges) {
  if (edges.empty()) throw InvariantError("no bucket edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) {
      throw InvariantError("bucket edges must be strictly ascending");
    }
  }
  BucketRow underflow{0, edges.front(), 0, 0, true};
  std::vector<BucketRow> rows;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    BucketRow row;
    row.low = edges[i];
    if (i + 1 < edges.size()) row.high = edges[i + 1];
    rows.push_back(row);
  }
  for (const LengthExample &example : examples) {
    BucketRow *row = &underflow;
    if (example.length >= edges.front()) {
      // Last edge not greater than the length.
      const auto it =
          std::upper_bound(edges.begin(), edges.end(), example.length);
      row = &rows[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
    ++row->n;
    if (example.predicted == example.gold) ++row->correct;
  }
  if (underflow.n > 0) rows.insert(rows.begin(), underflow);
  return rows;
}

void WriteBucketCsv(std::span<const BucketRow> rows, std::ostream &out) {
  out << "bucket_low,bucket_high,n,accuracy\n";
  for (const BucketRow &row : rows) {
    out << row.low << ',';
    if (row.high) {
      out << *row.high;
    } else {
      out << "inf";
    }
    out << ',' << row.n << ',';
    if (row.n == 0) {
      out << "nan";
    } else {
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.6f", row.accuracy());
      out << buffer;
    }
    out << '\n';
  }
}

}  // namespace propseg
