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

#ifndef PROPSEG_ANNOTATE_H_
#define PROPSEG_ANNOTATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "propseg/codec.h"
#include "propseg/matching.h"
#include "propseg/proposition.h"

namespace propseg {

// One rater's segmentation of a sentence.
struct RaterResponse {
  std::string rater_id;
  SentenceRecord record;
};

// How a rater's support from the other raters is counted.
enum class SupportCount {
  // Sum of matching cardinalities against every other rater.
  kTotalPairs,
  // Number of the rater's propositions matched by at least one other rater.
  kAtLeastOne,
};

struct Reconciliation {
  SentenceRecord chosen;
  std::string rater_id;
  std::map<std::string, std::size_t> support;  // by rater_id
};

// Picks the response whose propositions the other raters annotated most.
// Ties go to the response with more propositions, then to the smallest
// rater_id. Throws AlignmentError when token lists differ and
// InvariantError for fewer than 2 responses or repeated rater ids.
Reconciliation ReconcileSegmentation(
    std::span<const RaterResponse> responses, const Matcher &matcher,
    SupportCount count = SupportCount::kTotalPairs);

// Strict-majority label, or nullopt when no label has more than half of the
// votes. Throws InvariantError on an empty list.
std::optional<EntailmentLabel> MajorityLabel(
    std::span<const EntailmentLabel> labels);

// Corpus-level reconciliation of per-rater cluster files.
struct ReconciledCorpus {
  std::vector<DocumentCluster> clusters;
  // Sentence key -> rater chosen, in key order.
  std::map<std::pair<std::string, std::string>, Reconciliation> choices;
};

// Groups rater lines by cluster, document and sentence. Every sentence must
// be annotated by every rater of its cluster.
ReconciledCorpus ReconcileCorpus(std::span<const RaterCluster> raters,
                                 const Matcher &matcher,
                                 SupportCount count = SupportCount::kTotalPairs);

struct LabelResolution {
  std::vector<EntailmentLine> gold;  // majority labels, rater_id cleared
  // Items without a strict majority, with the votes they received.
  std::vector<std::pair<EntailmentRecord, std::vector<EntailmentLabel>>>
      unresolved;
};

// Majority vote per (doc, sentence, proposition, premise) key, in order of
// first appearance.
LabelResolution ResolveLabels(std::span<const EntailmentLine> votes);

}  // namespace propseg

#endif  // PROPSEG_ANNOTATE_H_
