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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "propseg/errors.h"

namespace propseg {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string StripSpaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!IsSpace(c)) out += c;
  }
  return out;
}

// Lexical item of one segment: a marker or a whitespace-free text chunk.
struct Piece {
  enum Kind { kOpen, kClose, kText } kind;
  std::string text;
};

std::vector<Piece> Lex(std::string_view segment) {
  std::vector<Piece> pieces;
  std::string chunk;
  auto flush = [&]() {
    if (!chunk.empty()) pieces.push_back({Piece::kText, std::move(chunk)});
    chunk.clear();
  };
  std::size_t i = 0;
  while (i < segment.size()) {
    const std::string_view rest = segment.substr(i);
    if (rest.starts_with(kOpenMarker)) {
      flush();
      pieces.push_back({Piece::kOpen, {}});
      i += kOpenMarker.size();
    } else if (rest.starts_with(kCloseMarker)) {
      flush();
      pieces.push_back({Piece::kClose, {}});
      i += kCloseMarker.size();
    } else if (IsSpace(segment[i])) {
      flush();
      ++i;
    } else {
      chunk += segment[i++];
    }
  }
  flush();
  return pieces;
}

std::vector<std::string_view> SplitSegments(std::string_view text) {
  std::vector<std::string_view> segments;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(kSeparator, start);
    if (at == std::string_view::npos) {
      segments.push_back(text.substr(start));
      return segments;
    }
    segments.push_back(text.substr(start, at - start));
    start = at + kSeparator.size();
  }
}

// Checks marker balance and returns the text chunks with their inside flag.
std::vector<std::pair<std::string, bool>> MarkedChunks(
    const std::vector<Piece> &pieces, std::size_t segment) {
  std::vector<std::pair<std::string, bool>> chunks;
  bool inside = false;
  for (const Piece &piece : pieces) {
    switch (piece.kind) {
      case Piece::kOpen:
        if (inside) {
          throw MalformedMarkupError("segment " + std::to_string(segment) +
                                     ": nested [M]");
        }
        inside = true;
        break;
      case Piece::kClose:
        if (!inside) {
          throw MalformedMarkupError("segment " + std::to_string(segment) +
                                     ": [/M] without [M]");
        }
        inside = false;
        break;
      case Piece::kText:
        chunks.emplace_back(piece.text, inside);
        break;
    }
  }
  if (inside) {
    throw MalformedMarkupError("segment " + std::to_string(segment) +
                               ": unclosed [M]");
  }
  return chunks;
}

// Character-level alignment of one segment against the expected tokens.
// Returns the marked token indices.
TokenSet AlignStrict(const std::vector<Piece> &pieces,
                     const std::vector<std::string> &expected,
                     std::size_t segment) {
  MarkedChunks(pieces, segment);  // balance check
  TokenSet marked;
  std::size_t token = 0;
  std::size_t offset = 0;
  bool inside = false;
  auto skip_empty = [&]() {
    while (token < expected.size() && expected[token].empty()) ++token;
  };
  auto drift = [&](std::size_t position, const std::string &what) {
    return TokenDriftError(position, "segment " + std::to_string(segment) +
                                         ": token drift at position " +
                                         std::to_string(position) + ": " +
                                         what);
  };
  for (const Piece &piece : pieces) {
    if (piece.kind != Piece::kText) {
      if (offset != 0) {
        throw MalformedMarkupError("segment " + std::to_string(segment) +
                                   ": marker inside token " +
                                   std::to_string(token));
      }
      inside = piece.kind == Piece::kOpen;
      continue;
    }
    for (char c : piece.text) {
      if (offset == 0) skip_empty();
      if (token >= expected.size()) {
        throw drift(expected.size(), "unexpected trailing text '" +
                                         piece.text + "'");
      }
      if (expected[token][offset] != c) {
        throw drift(token, "expected '" + expected[token] + "', got '" +
                               piece.text + "'");
      }
      if (offset == 0 && inside) {
        marked.push_back(static_cast<TokenIndex>(token));
      }
      if (++offset == expected[token].size()) {
        ++token;
        offset = 0;
      }
    }
  }
  if (offset != 0) throw drift(token, "token '" + expected[token] + "' cut short");
  skip_empty();
  if (token < expected.size()) {
    throw drift(token, "missing token '" + expected[token] + "'");
  }
  return marked;
}

// Longest-common-subsequence alignment of whitespace chunks against the
// expected tokens. Unaligned chunks are ignored.
TokenSet AlignLenient(const std::vector<Piece> &pieces,
                      const std::vector<std::string> &expected,
                      std::size_t segment, std::vector<std::string> *warnings) {
  const auto chunks = MarkedChunks(pieces, segment);
  const std::size_t n = chunks.size();
  const std::size_t m = expected.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1,
                                            std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = chunks[i].first == expected[j]
                      ? lcs[i + 1][j + 1] + 1
                      : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  TokenSet marked;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (chunks[i].first == expected[j]) {
      if (chunks[i].second) marked.push_back(static_cast<TokenIndex>(j));
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  warnings->push_back("segment " + std::to_string(segment) +
                      ": token drift repaired, aligned " +
                      std::to_string(lcs[0][0]) + " of " + std::to_string(m) +
                      " tokens");
  return marked;
}

template <typename T>
T Field(const Json &object, const char *name) {
  auto found = object.find(name);
  if (found == object.end()) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  try {
    return found->get<T>();
  } catch (const Json::exception &) {
    throw ParseError(std::string("field '") + name + "' has the wrong type");
  }
}

Json ParseObject(std::string_view line) {
  Json object;
  try {
    object = Json::parse(line);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!object.is_object()) throw ParseError("expected a JSON object");
  return object;
}

// Runs a line parser and attaches the line number to any failure.
template <typename Fn>
auto WithLine(std::size_t line_no, Fn &&parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const TokenDriftError &) {
    throw;
  } catch (const ParseError &e) {
    if (line_no == 0 || e.line() != 0) throw;
    throw ParseError(e.what(), line_no);
  } catch (const InvariantError &e) {
    throw ParseError(e.what(), line_no);
  }
}

std::vector<Proposition> ParsePropositions(const Json &value) {
  std::vector<Proposition> props;
  for (const auto &indices : value) {
    props.emplace_back(indices.get<std::vector<TokenIndex>>());
  }
  return props;
}

OrderedJson PropositionsToJson(std::span<const Proposition> props) {
  OrderedJson out = OrderedJson::array();
  for (const Proposition &prop : props) out.push_back(prop.indices());
  return out;
}

SentenceRecord SentenceFromJson(const Json &object, const std::string &doc_id) {
  SentenceRecord sentence;
  sentence.doc_id = doc_id;
  sentence.sentence_id = Field<std::string>(object, "sentence_id");
  sentence.tokens = Field<std::vector<std::string>>(object, "tokens");
  const auto props = Field<Json>(object, "propositions");
  if (!props.is_array()) throw ParseError("'propositions' must be an array");
  try {
    sentence.propositions = ParsePropositions(props);
  } catch (const Json::exception &) {
    throw ParseError("doc '" + doc_id + "' sentence '" + sentence.sentence_id +
                     "': propositions must be arrays of integers");
  } catch (const InvariantError &e) {
    throw ParseError("doc '" + doc_id + "' sentence '" + sentence.sentence_id +
                     "': " + e.what());
  }
  return sentence;
}

DocumentCluster ClusterFromObject(const Json &object) {
  DocumentCluster cluster;
  cluster.cluster_id = Field<std::string>(object, "cluster_id");
  const auto domain = ParseDomain(Field<std::string>(object, "domain"));
  if (!domain) throw ParseError("unknown domain");
  cluster.domain = *domain;
  for (const Json &doc : Field<Json>(object, "documents")) {
    Document document;
    document.doc_id = Field<std::string>(doc, "doc_id");
    for (const Json &sentence : Field<Json>(doc, "sentences")) {
      document.sentences.push_back(SentenceFromJson(sentence, document.doc_id));
    }
    cluster.documents.push_back(std::move(document));
  }
  cluster.Validate();
  return cluster;
}

OrderedJson ClusterToObject(const DocumentCluster &cluster) {
  OrderedJson out;
  out["cluster_id"] = cluster.cluster_id;
  out["domain"] = std::string(DomainName(cluster.domain));
  OrderedJson documents = OrderedJson::array();
  for (const Document &doc : cluster.documents) {
    OrderedJson d;
    d["doc_id"] = doc.doc_id;
    OrderedJson sentences = OrderedJson::array();
    for (const SentenceRecord &sentence : doc.sentences) {
      OrderedJson s;
      s["sentence_id"] = sentence.sentence_id;
      s["tokens"] = sentence.tokens;
      s["propositions"] = PropositionsToJson(sentence.propositions);
      sentences.push_back(std::move(s));
    }
    d["sentences"] = std::move(sentences);
    documents.push_back(std::move(d));
  }
  out["documents"] = std::move(documents);
  return out;
}

template <typename T, typename Parse>
std::vector<T> ReadLines(std::istream &in, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (StripSpaces(line).empty()) continue;
    out.push_back(parse(line, line_no));
  }
  return out;
}

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string Encode(std::span<const std::string> tokens,
                   std::span<const Proposition> propositions) {
  const std::vector<Proposition> props =
      CanonicalOrder(Dedup(propositions));
  auto join_tokens = [&]() {
    std::string out;
    for (const std::string &token : tokens) {
      if (!out.empty()) out += ' ';
      out += token;
    }
    return out;
  };
  if (props.empty()) return join_tokens();
  std::string out;
  for (std::size_t p = 0; p < props.size(); ++p) {
    if (p > 0) out += " " + std::string(kSeparator);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto index = static_cast<TokenIndex>(i);
      const bool selected = props[p].Contains(index);
      if (!out.empty()) out += ' ';
      if (selected && (i == 0 || !props[p].Contains(index - 1))) {
        out += std::string(kOpenMarker) + " ";
      }
      out += tokens[i];
      if (selected && !props[p].Contains(index + 1)) {
        out += " " + std::string(kCloseMarker);
      }
    }
  }
  return out;
}

std::string Encode(const SentenceRecord &sentence) {
  return Encode(sentence.tokens, sentence.propositions);
}

DecodeResult Decode(std::string_view text,
                    std::span<const std::string> expected_tokens,
                    const DecodeOptions &options) {
  std::vector<std::string> expected;
  for (const std::string &token : expected_tokens) {
    expected.push_back(StripSpaces(token));
  }
  DecodeResult result;
  std::vector<Proposition> props;
  const auto segments = SplitSegments(text);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const std::vector<Piece> pieces = Lex(segments[s]);
    TokenSet marked;
    if (options.lenient) {
      try {
        marked = AlignStrict(pieces, expected, s);
      } catch (const TokenDriftError &) {
        marked = AlignLenient(pieces, expected, s, &result.warnings);
      }
    } else {
      marked = AlignStrict(pieces, expected, s);
    }
    if (marked.empty()) {
      result.warnings.push_back("segment " + std::to_string(s) +
                                ": no marked tokens, dropped");
      continue;
    }
    props.emplace_back(std::move(marked));
  }
  result.propositions = Dedup(props);
  return result;
}

std::string_view VerdictName(PropositionVerdict verdict) {
  return verdict == PropositionVerdict::kEntail ? "entail" : "non-entail";
}

std::optional<PropositionVerdict> ParseVerdict(std::string_view name) {
  if (name == "entail") return PropositionVerdict::kEntail;
  if (name == "non-entail") return PropositionVerdict::kNonEntail;
  return std::nullopt;
}

void SummarySpans::Validate() const {
  const std::string where = "summary '" + summary_id + "': ";
  if (tokens.empty()) throw InvariantError(where + "no tokens");
  if (labels.size() != propositions.size()) {
    throw InvariantError(where + std::to_string(propositions.size()) +
                         " propositions but " + std::to_string(labels.size()) +
                         " labels");
  }
  for (const Proposition &prop : propositions) {
    try {
      prop.ValidateFor(tokens.size());
    } catch (const InvariantError &e) {
      throw InvariantError(where + e.what());
    }
  }
  for (TokenIndex index : gold_hallucinated) {
    if (index < 0 || static_cast<std::size_t>(index) >= tokens.size()) {
      throw InvariantError(where + "gold hallucinated index " +
                           std::to_string(index) + " out of range");
    }
  }
}

std::string ClusterToJson(const DocumentCluster &cluster) {
  return ClusterToObject(cluster).dump();
}

std::string RaterClusterToJson(const RaterCluster &cluster) {
  OrderedJson out = ClusterToObject(cluster.cluster);
  out["rater_id"] = cluster.rater_id;
  return out.dump();
}

std::string EntailmentToJson(const EntailmentLine &line) {
  OrderedJson out;
  out["doc_id"] = line.record.doc_id;
  out["sentence_id"] = line.record.sentence_id;
  out["proposition"] = line.record.proposition.indices();
  out["premise_doc_id"] = line.record.premise_doc_id;
  out["label"] = std::string(LabelName(line.record.label));
  if (line.rater_id) out["rater_id"] = *line.rater_id;
  return out.dump();
}

std::string SummarySpansToJson(const SummarySpans &summary) {
  OrderedJson out;
  out["summary_id"] = summary.summary_id;
  out["tokens"] = summary.tokens;
  out["propositions"] = PropositionsToJson(summary.propositions);
  OrderedJson labels = OrderedJson::array();
  for (PropositionVerdict verdict : summary.labels) {
    labels.push_back(std::string(VerdictName(verdict)));
  }
  out["labels"] = std::move(labels);
  out["gold_hallucinated"] = summary.gold_hallucinated;
  return out.dump();
}

DocumentCluster ClusterFromJson(std::string_view line, std::size_t line_no) {
  return WithLine(line_no, [&] { return ClusterFromObject(ParseObject(line)); });
}

RaterCluster RaterClusterFromJson(std::string_view line, std::size_t line_no) {
  return WithLine(line_no, [&] {
    const Json object = ParseObject(line);
    return RaterCluster{Field<std::string>(object, "rater_id"),
                        ClusterFromObject(object)};
  });
}

EntailmentLine EntailmentFromJson(std::string_view line, std::size_t line_no) {
  return WithLine(line_no, [&] {
    const Json object = ParseObject(line);
    const auto label = ParseLabel(Field<std::string>(object, "label"));
    if (!label) throw ParseError("unknown entailment label");
    EntailmentLine out{
        EntailmentRecord{
            Field<std::string>(object, "doc_id"),
            Field<std::string>(object, "sentence_id"),
            Proposition(Field<std::vector<TokenIndex>>(object, "proposition")),
            Field<std::string>(object, "premise_doc_id"), *label},
        std::nullopt};
    if (object.contains("rater_id")) {
      out.rater_id = Field<std::string>(object, "rater_id");
    }
    out.record.Validate();
    return out;
  });
}

SummarySpans SummarySpansFromJson(std::string_view line, std::size_t line_no) {
  return WithLine(line_no, [&] {
    const Json object = ParseObject(line);
    SummarySpans summary;
    summary.summary_id = Field<std::string>(object, "summary_id");
    summary.tokens = Field<std::vector<std::string>>(object, "tokens");
    try {
      summary.propositions =
          ParsePropositions(Field<Json>(object, "propositions"));
    } catch (const Json::exception &) {
      throw ParseError("propositions must be arrays of integers");
    }
    for (const auto &name : Field<std::vector<std::string>>(object, "labels")) {
      const auto verdict = ParseVerdict(name);
      if (!verdict) throw ParseError("unknown label '" + name + "'");
      summary.labels.push_back(*verdict);
    }
    auto gold = Field<std::vector<TokenIndex>>(object, "gold_hallucinated");
    std::sort(gold.begin(), gold.end());
    gold.erase(std::unique(gold.begin(), gold.end()), gold.end());
    summary.gold_hallucinated = std::move(gold);
    summary.Validate();
    return summary;
  });
}

std::vector<DocumentCluster> ReadClusters(std::istream &in) {
  return ReadLines<DocumentCluster>(in, ClusterFromJson);
}

std::vector<RaterCluster> ReadRaterClusters(std::istream &in) {
  return ReadLines<RaterCluster>(in, RaterClusterFromJson);
}

std::vector<EntailmentLine> ReadEntailment(std::istream &in) {
  return ReadLines<EntailmentLine>(in, EntailmentFromJson);
}

std::vector<SummarySpans> ReadSummarySpans(std::istream &in) {
  return ReadLines<SummarySpans>(in, SummarySpansFromJson);
}

void WriteClusters(std::span<const DocumentCluster> clusters,
                   std::ostream &out) {
  for (const auto &cluster : clusters) out << ClusterToJson(cluster) << '\n';
}

void WriteRaterClusters(std::span<const RaterCluster> clusters,
                        std::ostream &out) {
  for (const auto &cluster : clusters) {
    out << RaterClusterToJson(cluster) << '\n';
  }
}

void WriteEntailment(std::span<const EntailmentLine> lines,
                     std::ostream &out) {
  for (const auto &line : lines) out << EntailmentToJson(line) << '\n';
}

void WriteSummarySpans(std::span<const SummarySpans> summaries,
                       std::ostream &out) {
  for (const auto &summary : summaries) {
    out << SummarySpansToJson(summary) << '\n';
  }
}

std::vector<DocumentCluster> ReadClusterFile(const std::string &path) {
  auto in = OpenInput(path);
  return ReadClusters(in);
}

std::vector<RaterCluster> ReadRaterClusterFile(const std::string &path) {
  auto in = OpenInput(path);
  return ReadRaterClusters(in);
}

std::vector<EntailmentLine> ReadEntailmentFile(const std::string &path) {
  auto in = OpenInput(path);
  return ReadEntailment(in);
}

std::vector<SummarySpans> ReadSummarySpansFile(const std::string &path) {
  auto in = OpenInput(path);
  return ReadSummarySpans(in);
}

void WriteClusterFile(std::span<const DocumentCluster> clusters,
                      const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  WriteClusters(clusters, out);
}

std::vector<SentenceRecord> Sentences(
    std::span<const DocumentCluster> clusters) {
  std::vector<SentenceRecord> out;
  for (const DocumentCluster &cluster : clusters) {
    for (const Document &doc : cluster.documents) {
      out.insert(out.end(), doc.sentences.begin(), doc.sentences.end());
    }
  }
  return out;
}

}  // namespace propseg
