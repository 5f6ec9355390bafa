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

#include "propseg/proposition.h"

#include <algorithm>
#include <iterator>
#include <set>

#include "propseg/errors.h"

namespace propseg {

Proposition::Proposition(std::vector<TokenIndex> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw InvariantError("empty proposition");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  if (indices_.front() < 0) {
    throw InvariantError("negative token index " +
                         std::to_string(indices_.front()));
  }
}

bool Proposition::Contains(TokenIndex index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

void Proposition::ValidateFor(std::size_t num_tokens) const {
  if (static_cast<std::size_t>(indices_.back()) >= num_tokens) {
    throw InvariantError("token index " + std::to_string(indices_.back()) +
                         " out of range for " + std::to_string(num_tokens) +
                         " tokens");
  }
}

void SentenceRecord::Validate() const {
  const std::string where = "doc '" + doc_id + "' sentence '" + sentence_id +
                            "': ";
  if (tokens.empty()) throw InvariantError(where + "no tokens");
  for (const Proposition &prop : propositions) {
    try {
      prop.ValidateFor(tokens.size());
    } catch (const InvariantError &e) {
      throw InvariantError(where + e.what());
    }
  }
}

std::string_view DomainName(Domain domain) {
  switch (domain) {
    case Domain::kWiki: return "wiki";
    case Domain::kNews: return "news";
    case Domain::kOther: return "other";
  }
  return "other";
}

std::optional<Domain> ParseDomain(std::string_view name) {
  if (name == "wiki") return Domain::kWiki;
  if (name == "news") return Domain::kNews;
  if (name == "other") return Domain::kOther;
  return std::nullopt;
}

void DocumentCluster::Validate() const {
  std::set<std::string> doc_ids;
  for (const Document &doc : documents) {
    if (!doc_ids.insert(doc.doc_id).second) {
      throw InvariantError("cluster '" + cluster_id + "': duplicate doc_id '" +
                           doc.doc_id + "'");
    }
    std::set<std::string> sentence_ids;
    for (const SentenceRecord &sentence : doc.sentences) {
      if (sentence.doc_id != doc.doc_id) {
        throw InvariantError("cluster '" + cluster_id + "': sentence '" +
                             sentence.sentence_id + "' has doc_id '" +
                             sentence.doc_id + "' inside document '" +
                             doc.doc_id + "'");
      }
      if (!sentence_ids.insert(sentence.sentence_id).second) {
        throw InvariantError("doc '" + doc.doc_id +
                             "': duplicate sentence_id '" +
                             sentence.sentence_id + "'");
      }
      sentence.Validate();
    }
  }
}

std::string_view LabelName(EntailmentLabel label) {
  switch (label) {
    case EntailmentLabel::kEntailment: return "entailment";
    case EntailmentLabel::kNeutral: return "neutral";
    case EntailmentLabel::kContradiction: return "contradiction";
  }
  return "neutral";
}

std::optional<EntailmentLabel> ParseLabel(std::string_view name) {
  if (name == "entailment") return EntailmentLabel::kEntailment;
  if (name == "neutral") return EntailmentLabel::kNeutral;
  if (name == "contradiction") return EntailmentLabel::kContradiction;
  return std::nullopt;
}

void EntailmentRecord::Validate() const {
  if (premise_doc_id == doc_id) {
    throw InvariantError("doc '" + doc_id + "' sentence '" + sentence_id +
                         "': premise document equals hypothesis document");
  }
}

double JaccardSimilarity(const Proposition &a, const Proposition &b) {
  const TokenSet &x = a.indices();
  const TokenSet &y = b.indices();
  std::size_t common = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t total = x.size() + y.size() - common;
  return static_cast<double>(common) / static_cast<double>(total);
}

std::vector<Proposition> CanonicalOrder(std::vector<Proposition> props) {
  std::stable_sort(props.begin(), props.end());
  return props;
}

std::vector<Proposition> Dedup(std::span<const Proposition> props) {
  std::vector<Proposition> result;
  std::set<Proposition> seen;
  for (const Proposition &prop : props) {
    if (seen.insert(prop).second) result.push_back(prop);
  }
  return result;
}

TokenSet CoveredTokens(std::span<const Proposition> props) {
  TokenSet covered;
  for (const Proposition &prop : props) covered = Union(covered, prop.indices());
  return covered;
}

TokenSet Union(const TokenSet &a, const TokenSet &b) {
  TokenSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

TokenSet Intersection(const TokenSet &a, const TokenSet &b) {
  TokenSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

TokenSet Difference(const TokenSet &a, const TokenSet &b) {
  TokenSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::string Render(const Proposition &prop,
                   std::span<const std::string> tokens) {
  std::string out;
  for (TokenIndex index : prop.indices()) {
    if (!out.empty()) out += ' ';
    if (static_cast<std::size_t>(index) < tokens.size()) {
      out += tokens[index];
    } else {
      out += "<" + std::to_string(index) + ">";
    }
  }
  return out;
}

}  // namespace propseg
