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

#ifndef PROPSEG_PROPOSITION_H_
#define PROPSEG_PROPOSITION_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace propseg {

using TokenIndex = int;

// Sorted, duplicate-free list of token indices.
using TokenSet = std::vector<TokenIndex>;

// A proposition is a non-empty subset of the token indices of one sentence.
// Indices are kept sorted and unique; the owning sentence length is checked
// separately with ValidateFor() since a proposition does not know its
// sentence.
class Proposition {
 public:
  // Accepts indices in any order; duplicates are collapsed. Throws
  // InvariantError for an empty list or a negative index.
  explicit Proposition(std::vector<TokenIndex> indices);
  Proposition(std::initializer_list<TokenIndex> indices)
      : Proposition(std::vector<TokenIndex>(indices)) {}

  const TokenSet &indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  TokenIndex front() const { return indices_.front(); }
  TokenIndex back() const { return indices_.back(); }
  bool Contains(TokenIndex index) const;

  // Throws InvariantError if some index is >= num_tokens.
  void ValidateFor(std::size_t num_tokens) const;

  // Lexicographic order on the index sequence. This is the canonical
  // proposition order: foremost token first, ties on the following indices.
  friend auto operator<=>(const Proposition &, const Proposition &) = default;
  friend bool operator==(const Proposition &, const Proposition &) = default;

 private:
  TokenSet indices_;
};

// Tokenized sentence with its proposition set.
struct SentenceRecord {
  std::string doc_id;
  std::string sentence_id;
  std::vector<std::string> tokens;
  std::vector<Proposition> propositions;

  // Throws InvariantError naming doc/sentence on violation.
  void Validate() const;

  bool operator==(const SentenceRecord &) const = default;
};

enum class Domain { kWiki, kNews, kOther };

std::string_view DomainName(Domain domain);
std::optional<Domain> ParseDomain(std::string_view name);

struct Document {
  std::string doc_id;
  std::vector<SentenceRecord> sentences;

  bool operator==(const Document &) const = default;
};

struct DocumentCluster {
  std::string cluster_id;
  Domain domain = Domain::kOther;
  std::vector<Document> documents;

  // Checks unique doc ids, matching sentence doc ids, unique sentence ids per
  // document and every sentence invariant.
  void Validate() const;

  bool operator==(const DocumentCluster &) const = default;
};

enum class EntailmentLabel { kEntailment, kNeutral, kContradiction };

std::string_view LabelName(EntailmentLabel label);
std::optional<EntailmentLabel> ParseLabel(std::string_view name);

struct EntailmentRecord {
  std::string doc_id;
  std::string sentence_id;
  Proposition proposition;
  std::string premise_doc_id;
  EntailmentLabel label;

  void Validate() const;

  bool operator==(const EntailmentRecord &) const = default;
};

// Intersection over union of the two index sets.
double JaccardSimilarity(const Proposition &a, const Proposition &b);

// Sorts by foremost token, then by the remaining indices lexicographically.
std::vector<Proposition> CanonicalOrder(std::vector<Proposition> props);

// Drops exact duplicates, keeping the first occurrence in place.
std::vector<Proposition> Dedup(std::span<const Proposition> props);

// Union of all index sets.
TokenSet CoveredTokens(std::span<const Proposition> props);

// Set algebra over sorted TokenSets.
TokenSet Union(const TokenSet &a, const TokenSet &b);
TokenSet Intersection(const TokenSet &a, const TokenSet &b);
TokenSet Difference(const TokenSet &a, const TokenSet &b);

// Renders the selected tokens separated by spaces, for display only.
std::string Render(const Proposition &prop,
                   std::span<const std::string> tokens);

}  // namespace propseg

#endif  // PROPSEG_PROPOSITION_H_
