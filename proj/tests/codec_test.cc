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

#include "propseg/codec.h"

#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "propseg/errors.h"

namespace propseg {
namespace {

std::size_t Count(const std::string &text, std::string_view what) {
  std::size_t n = 0;
  for (std::size_t at = text.find(what); at != std::string::npos;
       at = text.find(what, at + what.size())) {
    ++n;
  }
  return n;
}

const std::vector<std::string> kZoo = testing::Words(
    "Alice and Bob went to the Zoo .");

TEST_CASE("encode the Alice and Bob example") {
  const std::vector<Proposition> props{Proposition({2, 3, 4, 5, 6, 7}),
                                       Proposition({0, 3, 4, 5, 6})};
  CHECK(Encode(kZoo, props) ==
        "[M] Alice [/M] and Bob [M] went to the Zoo [/M] . [TARGET] "
        "Alice and [M] Bob went to the Zoo . [/M]");
}

TEST_CASE("encode edge cases") {
  CHECK(Encode(kZoo, std::vector<Proposition>{}) ==
        "Alice and Bob went to the Zoo .");
  CHECK(Encode(kZoo, std::vector<Proposition>{
                         Proposition({0, 1, 2, 3, 4, 5, 6, 7})}) ==
        "[M] Alice and Bob went to the Zoo . [/M]");
  // Duplicates are removed before rendering.
  const std::string twice =
      Encode(kZoo, std::vector<Proposition>{Proposition({0}), Proposition({0})});
  CHECK(Count(twice, kSeparator) == 0);
}

TEST_CASE("decode accepts the free-spacing form") {
  const DecodeResult r = Decode(
      "[M] Alice[/M] and Bob [M] went to the Zoo[/M]. [TARGET] Alice and "
      "[M] Bob went to the Zoo.[/M] ",
      kZoo);
  CHECK(r.warnings.empty());
  CHECK(r.propositions == std::vector<Proposition>{
                              Proposition({0, 3, 4, 5, 6}),
                              Proposition({2, 3, 4, 5, 6, 7})});
}

TEST_CASE("decode drops unmarked segments with a warning") {
  const DecodeResult r =
      Decode("Alice and Bob went to the Zoo . [TARGET] [M] Alice [/M] and "
             "Bob went to the Zoo .",
             kZoo);
  REQUIRE(r.propositions.size() == 1);
  CHECK(r.propositions[0] == Proposition({0}));
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("segment 0") != std::string::npos);
}

TEST_CASE("decode error paths") {
  CHECK_THROWS_AS(Decode("[M] Alice [M] and [/M] Bob went to the Zoo .", kZoo),
                  MalformedMarkupError);
  CHECK_THROWS_AS(Decode("Alice [/M] and Bob went to the Zoo .", kZoo),
                  MalformedMarkupError);
  CHECK_THROWS_AS(Decode("[M] Alice and Bob went to the Zoo .", kZoo),
                  MalformedMarkupError);
  CHECK_THROWS_AS(Decode("Al[M]ice and Bob went to the Zoo . [/M]", kZoo),
                  MalformedMarkupError);

  try {
    Decode("[M] Alice and Bob walked to the Zoo . [/M]", kZoo);
    FAIL("expected TokenDriftError");
  } catch (const TokenDriftError &e) {
    CHECK(e.position() == 3);
  }
  try {
    Decode("[M] Alice and Bob went [/M]", kZoo);
    FAIL("expected TokenDriftError");
  } catch (const TokenDriftError &e) {
    CHECK(e.position() == 4);
  }
  try {
    Decode("Alice and Bob went to the Zoo . [M] again [/M]", kZoo);
    FAIL("expected TokenDriftError");
  } catch (const TokenDriftError &e) {
    CHECK(e.position() == kZoo.size());
  }
}

TEST_CASE("lenient decode repairs drift") {
  const DecodeResult r = Decode(
      "[M] Alice [/M] and Bob walked [M] to the Zoo [/M] .", kZoo,
      {.lenient = true});
  REQUIRE(r.propositions.size() == 1);
  CHECK(r.propositions[0] == Proposition({0, 4, 5, 6}));
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("codec round trip on random sentences") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 25)(rng);
    std::vector<std::string> tokens;
    for (int i = 0; i < n; ++i) {
      tokens.push_back(std::string(1, static_cast<char>('a' + rng() % 3)) +
                       (rng() % 2 ? "." : ""));
    }
    std::vector<Proposition> props;
    for (int k = rng() % 7; k > 0; --k) {
      props.push_back(testing::RandomProposition(rng, n));
    }
    const std::string text = Encode(tokens, props);
    const auto expected = CanonicalOrder(Dedup(props));
    if (!expected.empty()) {
      CHECK(Count(text, kSeparator) == expected.size() - 1);
    }
    CHECK(Count(text, kOpenMarker) == Count(text, kCloseMarker));
    CHECK(Decode(text, tokens).propositions == expected);
  }
}

DocumentCluster TwoDocCluster(const std::string &id, Domain domain) {
  SentenceRecord a = testing::WarholSentence();
  a.doc_id = id + "-a";
  SentenceRecord b{id + "-b", "s0", testing::Words("Warhol was born in 1928 ."),
                   {Proposition({0, 2, 3, 4})}};
  SentenceRecord empty{id + "-b", "s1", testing::Words("Hello ."), {}};
  return {id, domain, {{a.doc_id, {a}}, {b.doc_id, {b, empty}}}};
}

TEST_CASE("cluster JSONL round trip is canonical") {
  const std::vector<DocumentCluster> clusters{
      TwoDocCluster("c1", Domain::kWiki), TwoDocCluster("c2", Domain::kNews)};
  std::ostringstream first;
  WriteClusters(clusters, first);
  std::istringstream in(first.str());
  const auto read = ReadClusters(in);
  CHECK(read == clusters);
  std::ostringstream second;
  WriteClusters(read, second);
  CHECK(second.str() == first.str());
  CHECK(first.str().rfind("{\"cluster_id\":\"c1\",\"domain\":\"wiki\","
                          "\"documents\":[{\"doc_id\":\"c1-a\",\"sentences\":"
                          "[{\"sentence_id\":\"s3\",\"tokens\":[\"The\"",
                          0) == 0);
}

TEST_CASE("the Warhol fixture parses to three propositions") {
  const std::string line =
      R"({"cluster_id":"warhol","domain":"wiki","documents":[{"doc_id":"warhol-en","sentences":[{"sentence_id":"s3","tokens":["The","Andy","Warhol","Museum","in","his","hometown",",","Pittsburgh",",","Pennsylvania",",","contains","an","extensive","permanent","collection","of","art","."],"propositions":[[0,1,2,3,12,13,14,15,16,17,18],[1,2,5,6,7,8,9,10],[0,1,2,3,4,5,6,7,8,9,10]]}]}]})";
  const DocumentCluster cluster = ClusterFromJson(line, 1);
  REQUIRE(cluster.documents.size() == 1);
  const SentenceRecord &s = cluster.documents[0].sentences[0];
  CHECK(s.propositions.size() == 3);
  CHECK(s == testing::WarholSentence());
}

TEST_CASE("corpus parse errors carry line and record context") {
  std::istringstream in(
      R"({"cluster_id":"c","domain":"wiki","documents":[]})"
      "\n"
      R"({"cluster_id":"c","domain":"wiki","documents":[{"doc_id":"d7","sentences":[{"sentence_id":"s9","tokens":["a","b"],"propositions":[[0,2]]}]}]})"
      "\n");
  try {
    ReadClusters(in);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    const std::string what = e.what();
    CHECK(what.find("d7") != std::string::npos);
    CHECK(what.find("s9") != std::string::npos);
  }
  CHECK_THROWS_AS(ClusterFromJson("{not json", 3), ParseError);
  CHECK_THROWS_AS(ClusterFromJson(R"({"cluster_id":"c","domain":"web","documents":[]})"),
                  ParseError);
  CHECK_THROWS_AS(ClusterFromJson(
                      R"({"cluster_id":"c","domain":"wiki","documents":[{"doc_id":"d","sentences":[{"sentence_id":"s","tokens":["a"],"propositions":[[]]}]}]})"),
                  ParseError);
}

TEST_CASE("entailment, rater and summary lines") {
  const EntailmentLine line = EntailmentFromJson(
      R"({"doc_id":"d1","sentence_id":"s1","proposition":[3,1],"premise_doc_id":"d2","label":"neutral"})");
  CHECK(line.record.proposition == Proposition({1, 3}));
  CHECK(!line.rater_id);
  CHECK(EntailmentToJson(line) ==
        R"({"doc_id":"d1","sentence_id":"s1","proposition":[1,3],"premise_doc_id":"d2","label":"neutral"})");
  CHECK_THROWS_AS(EntailmentFromJson(
                      R"({"doc_id":"d1","sentence_id":"s1","proposition":[1],"premise_doc_id":"d1","label":"neutral"})"),
                  ParseError);
  CHECK_THROWS_AS(EntailmentFromJson(
                      R"({"doc_id":"d1","sentence_id":"s1","proposition":[1],"premise_doc_id":"d2","label":"maybe"})"),
                  ParseError);

  const RaterCluster rater{"r1", TwoDocCluster("c", Domain::kOther)};
  CHECK(RaterClusterFromJson(RaterClusterToJson(rater)) == rater);

  const SummarySpans summary = testing::CrashSummary();
  CHECK(SummarySpansFromJson(SummarySpansToJson(summary)) == summary);
  SummarySpans bad = summary;
  bad.labels.pop_back();
  CHECK_THROWS_AS(SummarySpansFromJson(SummarySpansToJson(bad)), ParseError);
}

}  // namespace
}  // namespace propseg
