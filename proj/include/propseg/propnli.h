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

#ifndef PROPSEG_PROPNLI_H_
#define PROPSEG_PROPNLI_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "propseg/codec.h"
#include "propseg/metrics.h"
#include "propseg/proposition.h"

namespace propseg {

struct LabeledProposition {
  Proposition proposition;
  PropositionVerdict verdict;
};

// Hypothesis (or summary) tokens with labeled propositions.
struct LabeledPropositionSet {
  std::vector<std::string> tokens;
  std::vector<LabeledProposition> items;

  static LabeledPropositionSet FromSummary(const SummarySpans &summary);
};

// Entail iff every proposition is entailed. Throws EmptyHypothesisError when
// there are no propositions.
PropositionVerdict AggregateConjunction(const LabeledPropositionSet &set);

// Three-way composition: any contradiction wins, then any neutral, else
// entailment. Throws EmptyHypothesisError on an empty list.
EntailmentLabel AggregateThreeWay(std::span<const EntailmentLabel> labels);

// Partition of a summary's tokens.
struct SpanMap {
  TokenSet faithful;      // covered by an entailed proposition
  TokenSet hallucinated;  // only covered by non-entailed propositions
  TokenSet uncovered;     // in no proposition

  // Two-class view for token metrics: uncovered tokens count as faithful.
  TokenClasses ToTokenClasses() const;
};

// hallucinated = (union of non-entailed spans) minus (union of entailed
// spans), token-wise.
SpanMap HallucinatedSpans(const LabeledPropositionSet &set);

enum class SummaryVerdict { kFaithful, kHallucinated };

// Hallucinated iff the conjunction is non-entail.
SummaryVerdict ClassifySummary(const LabeledPropositionSet &set);

// Gold token classes of an annotated summary: gold_hallucinated versus the
// rest of the tokens.
TokenClasses GoldTokenClasses(const SummarySpans &summary);

// ---------------------------------------------------------------------------
// Accuracy by hypothesis length.

struct LengthExample {
  std::size_t length = 0;
  std::size_t predicted = 0;  // class ids, compared for equality
  std::size_t gold = 0;
};

struct BucketRow {
  std::size_t low = 0;
  std::optional<std::size_t> high;  // exclusive; nullopt is unbounded
  std::size_t n = 0;
  std::size_t correct = 0;
  bool underflow = false;

  // NaN for an empty bucket.
  double accuracy() const;
};

// Half-open buckets [edge_i, edge_i+1), the last one unbounded. Examples
// shorter than the first edge go to an underflow row [0, edge_0), emitted
// first and only when non-empty. Throws InvariantError unless edges are
// non-empty and strictly ascending.
std::vector<BucketRow> LengthBucketReport(std::span<const LengthExample> examples,
                                          std::span<const std::size_t> edges);

// CSV with header bucket_low,bucket_high,n,accuracy. The unbounded high edge
// is written as "inf", the accuracy of an empty bucket as "nan".
void WriteBucketCsv(std::span<const BucketRow> rows, std::ostream &out);

}  // namespace propseg

#endif  // PROPSEG_PROPNLI_H_
