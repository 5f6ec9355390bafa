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

#include "propseg/annotate.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "propseg/errors.h"

namespace propseg {

Reconciliation ReconcileSegmentation(std::span<const RaterResponse> responses,
                                     const Matcher &matcher,
                                     SupportCount count) {
  if (responses.size() < 2) {
    throw InvariantError("reconciliation needs at least 2 responses");
  }
  std::set<std::string> ids;
  for (const RaterResponse &response : responses) {
    if (!ids.insert(response.rater_id).second) {
      throw InvariantError("rater '" + response.rater_id +
                           "' responded twice for sentence '" +
                           response.record.sentence_id + "'");
    }
    if (response.record.tokens != responses.front().record.tokens) {
      throw AlignmentError("rater '" + response.rater_id +
                           "' has different tokens for sentence (" +
                           response.record.doc_id + ", " +
                           response.record.sentence_id + ")");
    }
  }

  Reconciliation result;
  const RaterResponse *best = nullptr;
  std::size_t best_score = 0;
  for (const RaterResponse &response : responses) {
    const auto &own = response.record.propositions;
    std::size_t score = 0;
    std::vector<bool> matched(own.size(), false);
    for (const RaterResponse &other : responses) {
      if (&other == &response) continue;
      const MatchResult match =
          MatchSets(own, other.record.propositions, matcher);
      score += match.size();
      for (const MatchedPair &pair : match.pairs) matched[pair.left] = true;
    }
    if (count == SupportCount::kAtLeastOne) {
      score = static_cast<std::size_t>(
          std::count(matched.begin(), matched.end(), true));
    }
    result.support[response.rater_id] = score;
    // Support, then proposition count; equal ranks fall to the smaller id.
    const auto rank = [](std::size_t s, const RaterResponse &r) {
      return std::make_tuple(s, r.record.propositions.size());
    };
    if (best == nullptr || rank(score, response) > rank(best_score, *best) ||
        (rank(score, response) == rank(best_score, *best) &&
         response.rater_id < best->rater_id)) {
      best = &response;
      best_score = score;
    }
  }
  result.chosen = best->record;
  result.rater_id = best->rater_id;
  return result;
}

std::optional<EntailmentLabel> MajorityLabel(
    std::span<const EntailmentLabel> labels) {
  if (labels.empty()) throw InvariantError("majority vote over no labels");
  std::map<EntailmentLabel, std::size_t> votes;
  for (EntailmentLabel label : labels) ++votes[label];
  for (const auto &[label, n] : votes) {
    if (2 * n > labels.size()) return label;
  }
  return std::nullopt;
}

ReconciledCorpus ReconcileCorpus(std::span<const RaterCluster> raters,
                                 const Matcher &matcher, SupportCount count) {
  // cluster id -> rater lines, in first-appearance order of clusters.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RaterCluster *>> by_cluster;
  for (const RaterCluster &line : raters) {
    auto &group = by_cluster[line.cluster.cluster_id];
    if (group.empty()) order.push_back(line.cluster.cluster_id);
    group.push_back(&line);
  }

  ReconciledCorpus result;
  for (const std::string &cluster_id : order) {
    const auto &group = by_cluster[cluster_id];
    const RaterCluster &first = *group.front();
    DocumentCluster out;
    out.cluster_id = cluster_id;
    out.domain = first.cluster.domain;
    for (const Document &doc : first.cluster.documents) {
      Document reconciled{doc.doc_id, {}};
      for (const SentenceRecord &sentence : doc.sentences) {
        std::vector<RaterResponse> responses;
        for (const RaterCluster *line : group) {
          const SentenceRecord *found = nullptr;
          for (const Document &d : line->cluster.documents) {
            if (d.doc_id != doc.doc_id) continue;
            for (const SentenceRecord &s : d.sentences) {
              if (s.sentence_id == sentence.sentence_id) found = &s;
            }
          }
          if (found == nullptr) {
            throw AlignmentError("rater '" + line->rater_id +
                                 "' did not annotate sentence (" + doc.doc_id +
                                 ", " + sentence.sentence_id + ")");
          }
          responses.push_back({line->rater_id, *found});
        }
        Reconciliation choice =
            ReconcileSegmentation(responses, matcher, count);
        reconciled.sentences.push_back(choice.chosen);
        result.choices.emplace(
            std::make_pair(doc.doc_id, sentence.sentence_id),
            std::move(choice));
      }
      out.documents.push_back(std::move(reconciled));
    }
    result.clusters.push_back(std::move(out));
  }
  return result;
}

LabelResolution ResolveLabels(std::span<const EntailmentLine> votes) {
  using Key = std::tuple<std::string, std::string, TokenSet, std::string>;
  std::vector<Key> order;
  std::map<Key, std::pair<const EntailmentRecord *,
                          std::vector<EntailmentLabel>>>
      items;
  for (const EntailmentLine &vote : votes) {
    const EntailmentRecord &r = vote.record;
    Key key{r.doc_id, r.sentence_id, r.proposition.indices(), r.premise_doc_id};
    auto [it, inserted] = items.try_emplace(key, &r,
                                            std::vector<EntailmentLabel>{});
    if (inserted) order.push_back(key);
    it->second.second.push_back(r.label);
  }
  LabelResolution result;
  for (const Key &key : order) {
    const auto &[record, labels] = items[key];
    if (auto label = MajorityLabel(labels)) {
      EntailmentRecord gold = *record;
      gold.label = *label;
      result.gold.push_back({std::move(gold), std::nullopt});
    } else {
      result.unresolved.emplace_back(*record, labels);
    }
  }
  return result;
}

}  // namespace propseg
