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

#ifndef PROPSEG_TESTS_FIXTURES_H_
#define PROPSEG_TESTS_FIXTURES_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "propseg/codec.h"
#include "propseg/proposition.h"

namespace propseg::testing {

// Andy Warhol sentence with punctuation split off:
//   0 The  1 Andy  2 Warhol  3 Museum  4 in  5 his  6 hometown  7 ,
//   8 Pittsburgh  9 ,  10 Pennsylvania  11 ,  12 contains  13 an
//   14 extensive  15 permanent  16 collection  17 of  18 art  19 .
inline SentenceRecord WarholSentence() {
  SentenceRecord s;
  s.doc_id = "warhol-en";
  s.sentence_id = "s3";
  s.tokens = {"The",        "Andy",       "Warhol",   "Museum",   "in",
              "his",        "hometown",   ",",        "Pittsburgh", ",",
              "Pennsylvania", ",",        "contains", "an",       "extensive",
              "permanent",  "collection", "of",       "art",      "."};
  s.propositions = {
      // The Andy Warhol Museum ... contains an extensive permanent
      // collection of art
      Proposition({0, 1, 2, 3, 12, 13, 14, 15, 16, 17, 18}),
      // Andy Warhol ... his hometown, Pittsburgh, Pennsylvania
      Proposition({1, 2, 5, 6, 7, 8, 9, 10}),
      // The Andy Warhol Museum in his hometown, Pittsburgh, Pennsylvania
      Proposition({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
  };
  return s;
}

// Same sentence tokenized on whitespace only (punctuation attached):
//   0 The  1 Andy  2 Warhol  3 Museum  4 in  5 his  6 hometown,
//   7 Pittsburgh,  8 Pennsylvania,  9 contains ... 15 art.
inline std::vector<std::string> WarholWhitespaceTokens() {
  return {"The",       "Andy",        "Warhol",        "Museum",
          "in",        "his",         "hometown,",     "Pittsburgh,",
          "Pennsylvania,", "contains", "an",           "extensive",
          "permanent", "collection",  "of",            "art."};
}

// XSum summary with four predicted propositions:
//   0 A  1 man  2 has  3 been  4 taken  5 to  6 hospital  7 following
//   8 a  9 one-vehicle  10 crash  11 on  12 the  13 A96  14 in
//   15 Aberdeenshire  16 .
inline SummarySpans CrashSummary() {
  SummarySpans s;
  s.summary_id = "xsum-crash";
  s.tokens = {"A",     "man",       "has",         "been",  "taken", "to",
              "hospital", "following", "a",         "one-vehicle",
              "crash", "on",        "the",         "A96",   "in",
              "Aberdeenshire", "."};
  s.propositions = {
      Proposition({0, 1, 2, 3, 4, 5, 6}),
      Proposition({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
      Proposition({9, 10, 11, 12, 13}),
      Proposition({9, 10, 14, 15}),
  };
  s.labels = {PropositionVerdict::kEntail, PropositionVerdict::kNonEntail,
              PropositionVerdict::kNonEntail, PropositionVerdict::kNonEntail};
  // Human labels: "one-vehicle crash" and "in Aberdeenshire".
  s.gold_hallucinated = {9, 10, 14, 15};
  return s;
}

inline std::vector<std::string> Words(const std::string &text) {
  std::vector<std::string> out;
  std::string word;
  for (char c : text) {
    if (c == ' ') {
      if (!word.empty()) out.push_back(word);
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) out.push_back(word);
  return out;
}

// Random non-empty subset of [0, n).
inline Proposition RandomProposition(std::mt19937 &rng, int n) {
  std::bernoulli_distribution take(0.4);
  std::vector<TokenIndex> indices;
  for (int i = 0; i < n; ++i) {
    if (take(rng)) indices.push_back(i);
  }
  if (indices.empty()) {
    indices.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
  }
  return Proposition(indices);
}

// Copy of prop with up to `edits` random token flips, never empty.
inline Proposition Perturb(std::mt19937 &rng, const Proposition &prop, int n,
                           int edits) {
  std::vector<TokenIndex> indices = prop.indices();
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int e = 0; e < edits; ++e) {
    const int t = pick(rng);
    auto it = std::find(indices.begin(), indices.end(), t);
    if (it == indices.end()) {
      indices.push_back(t);
    } else if (indices.size() > 1) {
      indices.erase(it);
    }
  }
  return Proposition(indices);
}

}  // namespace propseg::testing

#endif  // PROPSEG_TESTS_FIXTURES_H_
