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

#include "propseg/metrics.h"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "propseg/errors.h"

namespace propseg {
namespace {

using SentenceKey = std::pair<std::string, std::string>;

std::string KeyName(const SentenceKey &key) {
  return "(" + key.first + ", " + key.second + ")";
}

// Indexes sentences by key; rejects duplicates.
std::map<SentenceKey, const SentenceRecord *> IndexSentences(
    std::span<const SentenceRecord> sentences, const char *side) {
  std::map<SentenceKey, const SentenceRecord *> index;
  for (const SentenceRecord &sentence : sentences) {
    SentenceKey key{sentence.doc_id, sentence.sentence_id};
    if (!index.emplace(key, &sentence).second) {
      throw AlignmentError(std::string("duplicate sentence ") + KeyName(key) +
                           " in " + side);
    }
  }
  return index;
}

// Pairs every sentence of a with the sentence of b under the same key,
// ordered by key.
std::vector<std::pair<const SentenceRecord *, const SentenceRecord *>>
AlignSentences(std::span<const SentenceRecord> a,
               std::span<const SentenceRecord> b, const char *a_side,
               const char *b_side) {
  const auto a_index = IndexSentences(a, a_side);
  const auto b_index = IndexSentences(b, b_side);
  for (const auto &[key, sentence] : b_index) {
    if (!a_index.count(key)) {
      throw AlignmentError("sentence " + KeyName(key) + " missing from " +
                           a_side);
    }
  }
  std::vector<std::pair<const SentenceRecord *, const SentenceRecord *>> out;
  for (const auto &[key, sentence] : a_index) {
    auto found = b_index.find(key);
    if (found == b_index.end()) {
      throw AlignmentError("sentence " + KeyName(key) + " missing from " +
                           b_side);
    }
    if (sentence->tokens != found->second->tokens) {
      throw AlignmentError("sentence " + KeyName(key) +
                           " has different tokens in " + a_side + " and " +
                           b_side);
    }
    out.emplace_back(sentence, found->second);
  }
  return out;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

using EntailmentKey =
    std::tuple<std::string, std::string, TokenSet, std::string>;

EntailmentKey KeyOf(const EntailmentRecord &record) {
  return {record.doc_id, record.sentence_id, record.proposition.indices(),
          record.premise_doc_id};
}

std::string KeyName(const EntailmentKey &key) {
  std::string props;
  for (TokenIndex index : std::get<2>(key)) {
    if (!props.empty()) props += ",";
    props += std::to_string(index);
  }
  return "(" + std::get<0>(key) + ", " + std::get<1>(key) + ", [" + props +
         "], premise " + std::get<3>(key) + ")";
}

// Precision and recall of one class in one summary.
std::pair<double, double> SetOverlap(const TokenSet &pred,
                                     const TokenSet &gold) {
  if (pred.empty() && gold.empty()) return {1.0, 1.0};
  const std::size_t common = Intersection(pred, gold).size();
  return {Ratio(common, pred.size()), Ratio(common, gold.size())};
}

void CheckDisjoint(const TokenClasses &classes, std::size_t summary,
                   const char *side) {
  if (!Intersection(classes.faithful, classes.hallucinated).empty()) {
    throw InvariantError(std::string(side) + " summary " +
                         std::to_string(summary) +
                         ": faithful and hallucinated tokens overlap");
  }
}

}  // namespace

double F1(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

SegmentationScore ScoreSegmentation(std::span<const SentenceRecord> pred,
                                    std::span<const SentenceRecord> gold,
                                    const Matcher &matcher,
                                    const SegmentationOptions &options) {
  SegmentationScore result;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (const auto &[p, g] : AlignSentences(pred, gold, "prediction", "gold")) {
    SentenceSegmentation row;
    row.doc_id = g->doc_id;
    row.sentence_id = g->sentence_id;
    row.predicted = p->propositions.size();
    row.gold = g->propositions.size();
    if (row.predicted == 0 && row.gold == 0) {
      const double credit = options.credit_empty_sentences ? 1.0 : 0.0;
      row.score = {credit, credit, credit};
    } else {
      row.matched = MatchSets(p->propositions, g->propositions, matcher).size();
      row.score.precision = Ratio(row.matched, row.predicted);
      row.score.recall = Ratio(row.matched, row.gold);
      row.score.f1 = F1(row.score.precision, row.score.recall);
    }
    precision_sum += row.score.precision;
    recall_sum += row.score.recall;
    result.per_sentence.push_back(std::move(row));
  }
  if (!result.per_sentence.empty()) {
    const double n = static_cast<double>(result.per_sentence.size());
    result.score.precision = precision_sum / n;
    result.score.recall = recall_sum / n;
    result.score.f1 = F1(result.score.precision, result.score.recall);
  }
  return result;
}

std::string_view SchemeName(LabelScheme scheme) {
  return scheme == LabelScheme::kTwoWay ? "two_way" : "three_way";
}

std::vector<std::string> SchemeLabels(LabelScheme scheme) {
  if (scheme == LabelScheme::kTwoWay) return {"entailment", "non_entailment"};
  return {"entailment", "neutral", "contradiction"};
}

std::size_t SchemeClass(EntailmentLabel label, LabelScheme scheme) {
  if (label == EntailmentLabel::kEntailment) return 0;
  if (scheme == LabelScheme::kTwoWay) return 1;
  return label == EntailmentLabel::kNeutral ? 1 : 2;
}

ClassificationScore ScoreLabels(std::vector<std::string> labels,
                                std::span<const std::size_t> gold,
                                std::span<const std::size_t> pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) +
                         " labels, prediction has " +
                         std::to_string(pred.size()));
  }
  const std::size_t k = labels.size();
  ClassificationScore result;
  result.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] >= k || pred[i] >= k) {
      throw InvariantError("label id out of range at item " +
                           std::to_string(i));
    }
    ++result.confusion[gold[i]][pred[i]];
  }
  result.total = gold.size();

  std::size_t correct = 0;
  double recall_sum = 0.0;
  std::size_t present = 0;
  for (std::size_t c = 0; c < k; ++c) {
    LabelScore score;
    std::size_t tp = result.confusion[c][c];
    correct += tp;
    for (std::size_t o = 0; o < k; ++o) {
      score.support += result.confusion[c][o];
      score.predicted += result.confusion[o][c];
    }
    if (score.support == 0 && score.predicted == 0) continue;
    score.score.precision = Ratio(tp, score.predicted);
    score.score.recall = Ratio(tp, score.support);
    score.score.f1 = F1(score.score.precision, score.score.recall);
    if (score.support > 0) {
      recall_sum += score.score.recall;
      ++present;
    }
    result.per_label[labels[c]] = score;
  }
  result.accuracy = Ratio(correct, result.total);
  result.balanced_accuracy =
      present == 0 ? 0.0 : recall_sum / static_cast<double>(present);
  result.labels = std::move(labels);
  return result;
}

ClassificationScore ScoreEntailment(std::span<const EntailmentRecord> pred,
                                    std::span<const EntailmentRecord> gold,
                                    LabelScheme scheme) {
  std::map<EntailmentKey, EntailmentLabel> predicted;
  for (const EntailmentRecord &record : pred) {
    if (!predicted.emplace(KeyOf(record), record.label).second) {
      throw AlignmentError("duplicate prediction " + KeyName(KeyOf(record)));
    }
  }
  std::vector<std::size_t> gold_ids, pred_ids;
  std::map<EntailmentKey, bool> seen;
  for (const EntailmentRecord &record : gold) {
    const EntailmentKey key = KeyOf(record);
    if (!seen.emplace(key, true).second) {
      throw AlignmentError("duplicate gold record " + KeyName(key));
    }
    auto found = predicted.find(key);
    if (found == predicted.end()) {
      throw AlignmentError("no prediction for " + KeyName(key));
    }
    gold_ids.push_back(SchemeClass(record.label, scheme));
    pred_ids.push_back(SchemeClass(found->second, scheme));
  }
  for (const auto &[key, label] : predicted) {
    if (!seen.count(key)) {
      throw AlignmentError("prediction without gold record " + KeyName(key));
    }
  }
  return ScoreLabels(SchemeLabels(scheme), gold_ids, pred_ids);
}

AgreementScore FleissKappa(const RatingMatrix &ratings, std::size_t n_raters) {
  if (n_raters < 2) {
    throw MalformedRatingsError("need at least 2 raters, got " +
                                std::to_string(n_raters));
  }
  if (ratings.empty()) throw MalformedRatingsError("no rated items");
  const std::size_t categories = ratings.front().size();
  if (categories == 0) throw MalformedRatingsError("no categories");

  AgreementScore result;
  result.n_items = ratings.size();
  result.n_raters = n_raters;
  result.n_categories = categories;

  const double n = static_cast<double>(n_raters);
  std::vector<double> category_totals(categories, 0.0);
  double agreement_sum = 0.0;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const auto &row = ratings[i];
    if (row.size() != categories) {
      throw MalformedRatingsError("item " + std::to_string(i) + " has " +
                                  std::to_string(row.size()) +
                                  " categories, expected " +
                                  std::to_string(categories));
    }
    std::size_t row_sum = 0;
    double squares = 0.0;
    for (std::size_t j = 0; j < categories; ++j) {
      row_sum += row[j];
      squares += static_cast<double>(row[j]) * static_cast<double>(row[j]);
      category_totals[j] += static_cast<double>(row[j]);
    }
    if (row_sum != n_raters) {
      throw MalformedRatingsError("item " + std::to_string(i) + " has " +
                                  std::to_string(row_sum) +
                                  " ratings, expected " +
                                  std::to_string(n_raters));
    }
    agreement_sum += (squares - n) / (n * (n - 1.0));
  }
  const double items = static_cast<double>(ratings.size());
  result.observed_agreement = agreement_sum / items;
  double expected = 0.0;
  for (double total : category_totals) {
    const double share = total / (items * n);
    expected += share * share;
  }
  result.expected_agreement = expected;
  const bool single_category =
      std::count_if(category_totals.begin(), category_totals.end(),
                    [](double t) { return t > 0.0; }) == 1;
  if (single_category) {
    result.degenerate = true;
    result.kappa = 1.0;
  } else if (result.observed_agreement == 1.0) {
    result.kappa = 1.0;
  } else {
    result.kappa = (result.observed_agreement - expected) / (1.0 - expected);
  }
  return result;
}

RaterAgreement PairwiseRaterF1(std::span<const SentenceRecord> a,
                               std::span<const SentenceRecord> b,
                               const Matcher &matcher) {
  RaterAgreement result;
  for (const auto &[x, y] : AlignSentences(a, b, "rater a", "rater b")) {
    result.a_total += x->propositions.size();
    result.b_total += y->propositions.size();
    result.matched += MatchSets(x->propositions, y->propositions, matcher).size();
  }
  if (result.a_total == 0 && result.b_total == 0) {
    result.score = {1.0, 1.0, 1.0};
    return result;
  }
  result.score.precision = Ratio(result.matched, result.a_total);
  result.score.recall = Ratio(result.matched, result.b_total);
  result.score.f1 = F1(result.score.precision, result.score.recall);
  return result;
}

RatingMatrix TokenAgreementRatings(
    const std::vector<std::vector<SentenceRecord>> &raters,
    const Matcher &matcher) {
  RatingMatrix ratings;
  if (raters.size() < 2) {
    throw MalformedRatingsError("token agreement needs at least 2 raters");
  }
  const std::size_t n = raters.size();
  // aligned[r] holds rater r's sentences in the key order of rater 0.
  std::vector<std::vector<const SentenceRecord *>> aligned(n);
  for (std::size_t r = 1; r < n; ++r) {
    for (const auto &[x, y] :
         AlignSentences(raters[0], raters[r], "rater 0",
                        ("rater " + std::to_string(r)).c_str())) {
      if (r == 1) aligned[0].push_back(x);
      aligned[r].push_back(y);
    }
  }
  const std::size_t sentences = aligned[0].size();
  for (std::size_t s = 0; s < sentences; ++s) {
    // partner[r][i]: index of rater r's proposition matched to rater 0's i.
    std::vector<std::vector<long>> partner(
        n, std::vector<long>(aligned[0][s]->propositions.size(), -1));
    for (std::size_t r = 1; r < n; ++r) {
      for (const MatchedPair &pair :
           MatchSets(aligned[0][s]->propositions, aligned[r][s]->propositions,
                     matcher)
               .pairs) {
        partner[r][pair.left] = static_cast<long>(pair.right);
      }
    }
    // Pairwise matchings among the other raters, for the consistency check.
    std::map<std::pair<std::size_t, std::size_t>, std::map<long, long>> links;
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t q = r + 1; q < n; ++q) {
        for (const MatchedPair &pair :
             MatchSets(aligned[r][s]->propositions,
                       aligned[q][s]->propositions, matcher)
                 .pairs) {
          links[{r, q}][static_cast<long>(pair.left)] =
              static_cast<long>(pair.right);
        }
      }
    }
    const std::size_t num_tokens = aligned[0][s]->tokens.size();
    for (std::size_t i = 0; i < aligned[0][s]->propositions.size(); ++i) {
      bool complete = true;
      for (std::size_t r = 1; r < n && complete; ++r) {
        complete = partner[r][i] >= 0;
      }
      for (std::size_t r = 1; r < n && complete; ++r) {
        for (std::size_t q = r + 1; q < n && complete; ++q) {
          const auto &link = links[{r, q}];
          auto found = link.find(partner[r][i]);
          complete = found != link.end() && found->second == partner[q][i];
        }
      }
      if (!complete) continue;
      for (std::size_t t = 0; t < num_tokens; ++t) {
        std::size_t inside = 0;
        for (std::size_t r = 0; r < n; ++r) {
          const std::size_t index = r == 0 ? i : partner[r][i];
          if (aligned[r][s]->propositions[index].Contains(
                  static_cast<TokenIndex>(t))) {
            ++inside;
          }
        }
        ratings.push_back({inside, n - inside});
      }
    }
  }
  return ratings;
}

RatingMatrix LabelAgreementRatings(
    const std::vector<std::vector<EntailmentLabel>> &items) {
  RatingMatrix ratings;
  for (const auto &labels : items) {
    std::vector<std::size_t> row(3, 0);
    for (EntailmentLabel label : labels) {
      ++row[SchemeClass(label, LabelScheme::kThreeWay)];
    }
    ratings.push_back(std::move(row));
  }
  return ratings;
}

TokenClassificationScore ScoreTokenClassification(
    std::span<const TokenClasses> pred, std::span<const TokenClasses> gold) {
  if (pred.size() != gold.size()) {
    throw AlignmentError("prediction has " + std::to_string(pred.size()) +
                         " summaries, gold has " +
                         std::to_string(gold.size()));
  }
  TokenClassificationScore result;
  result.summaries = gold.size();
  if (gold.empty()) return result;
  double fp = 0, fr = 0, hp = 0, hr = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    CheckDisjoint(pred[i], i, "predicted");
    CheckDisjoint(gold[i], i, "gold");
    const auto [p1, r1] = SetOverlap(pred[i].faithful, gold[i].faithful);
    const auto [p2, r2] =
        SetOverlap(pred[i].hallucinated, gold[i].hallucinated);
    fp += p1;
    fr += r1;
    hp += p2;
    hr += r2;
  }
  const double n = static_cast<double>(gold.size());
  result.faithful = {fp / n, fr / n, F1(fp / n, fr / n)};
  result.hallucinated = {hp / n, hr / n, F1(hp / n, hr / n)};
  return result;
}

}  // namespace propseg
