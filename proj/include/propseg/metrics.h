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

#ifndef PROPSEG_METRICS_H_
#define PROPSEG_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "propseg/matching.h"
#include "propseg/proposition.h"

namespace propseg {

// 2pr/(p+r), or 0 when both are 0.
double F1(double precision, double recall);

// Precision/recall/F1 triple.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// ---------------------------------------------------------------------------
// Segmentation.

struct SentenceSegmentation {
  std::string doc_id;
  std::string sentence_id;
  Prf score;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Macro-averaged over sentences. The top-level F1 is the harmonic mean of
// the macro precision and macro recall.
struct SegmentationScore {
  Prf score;
  std::vector<SentenceSegmentation> per_sentence;  // ordered by key
};

struct SegmentationOptions {
  // A sentence where both prediction and gold have no propositions scores
  // p = r = 1 when set, 0 otherwise.
  bool credit_empty_sentences = true;
};

// Sentences are aligned on (doc_id, sentence_id). Throws AlignmentError
// naming the key when a sentence is missing on one side, duplicated, or has
// different tokens.
SegmentationScore ScoreSegmentation(std::span<const SentenceRecord> pred,
                                    std::span<const SentenceRecord> gold,
                                    const Matcher &matcher,
                                    const SegmentationOptions &options = {});

// ---------------------------------------------------------------------------
// Classification.

enum class LabelScheme { kTwoWay, kThreeWay };

std::string_view SchemeName(LabelScheme scheme);

struct LabelScore {
  Prf score;
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
};

struct ClassificationScore {
  std::vector<std::string> labels;
  // confusion[gold][predicted], indices into labels.
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t total = 0;
  double accuracy = 0.0;
  // Mean recall over labels with nonzero gold support.
  double balanced_accuracy = 0.0;
  // One-vs-rest scores; labels absent from both gold and prediction are
  // omitted.
  std::map<std::string, LabelScore> per_label;
};

// Scores label ids against gold ids; both index into labels.
ClassificationScore ScoreLabels(std::vector<std::string> labels,
                                std::span<const std::size_t> gold,
                                std::span<const std::size_t> pred);

// Names of the classes of a scheme, in confusion-matrix order.
std::vector<std::string> SchemeLabels(LabelScheme scheme);

// Class id of a label under a scheme; two-way merges neutral and
// contradiction into non_entailment.
std::size_t SchemeClass(EntailmentLabel label, LabelScheme scheme);

// Records are aligned on (doc_id, sentence_id, proposition, premise_doc_id).
// Throws AlignmentError for duplicated or unmatched keys.
ClassificationScore ScoreEntailment(std::span<const EntailmentRecord> pred,
                                    std::span<const EntailmentRecord> gold,
                                    LabelScheme scheme);

// ---------------------------------------------------------------------------
// Agreement.

// ratings[item][category] = number of raters that assigned the category.
using RatingMatrix = std::vector<std::vector<std::size_t>>;

struct AgreementScore {
  double kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  std::size_t n_items = 0;
  std::size_t n_raters = 0;
  std::size_t n_categories = 0;
  // Every rating fell in one category, so chance agreement is 1 and kappa
  // is reported as 1 by convention.
  bool degenerate = false;
};

// Fleiss' kappa. Throws MalformedRatingsError when a row does not sum to
// n_raters, when n_raters < 2, or when there are no items.
AgreementScore FleissKappa(const RatingMatrix &ratings, std::size_t n_raters);

struct RaterAgreement {
  Prf score;
  std::size_t matched = 0;
  std::size_t a_total = 0;
  std::size_t b_total = 0;
};

// Matched propositions credited to both raters, pooled over all sentences:
// precision over a's propositions, recall over b's.
RaterAgreement PairwiseRaterF1(std::span<const SentenceRecord> a,
                               std::span<const SentenceRecord> b,
                               const Matcher &matcher);

// Token inclusion ratings over propositions that every rater annotated.
// A proposition of the first rater forms a group when each other rater has a
// matched partner and all partners are matched with each other as well. Each
// token of the sentence is then one item with categories {in, out}.
RatingMatrix TokenAgreementRatings(
    const std::vector<std::vector<SentenceRecord>> &raters,
    const Matcher &matcher);

// Items are rows of labels, one per rater.
RatingMatrix LabelAgreementRatings(
    const std::vector<std::vector<EntailmentLabel>> &items);

// ---------------------------------------------------------------------------
// Token classification for hallucinated spans.

struct TokenClasses {
  TokenSet faithful;
  TokenSet hallucinated;
};

struct TokenClassificationScore {
  Prf faithful;
  Prf hallucinated;
  std::size_t summaries = 0;
};

// Per summary and per class set-overlap precision and recall, macro-averaged
// over summaries; F1 is the harmonic mean of the macro values. A class empty
// on both sides contributes p = r = 1. Throws InvariantError if a side's
// classes overlap and AlignmentError on a length mismatch.
TokenClassificationScore ScoreTokenClassification(
    std::span<const TokenClasses> pred, std::span<const TokenClasses> gold);

}  // namespace propseg

#endif  // PROPSEG_METRICS_H_
