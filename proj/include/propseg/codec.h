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

#ifndef PROPSEG_CODEC_H_
#define PROPSEG_CODEC_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propseg/proposition.h"

namespace propseg {

// Marked sequence format: every proposition is the full sentence with the
// selected token runs wrapped in [M] ... [/M]; propositions are joined with
// [TARGET]. Canonical output uses single spaces everywhere, e.g.
//
//   [M] Alice [/M] and Bob [M] went to the Zoo [/M] . [TARGET] Alice and
//   [M] Bob went to the Zoo . [/M]
inline constexpr std::string_view kOpenMarker = "[M]";
inline constexpr std::string_view kCloseMarker = "[/M]";
inline constexpr std::string_view kSeparator = "[TARGET]";

// Dedups and canonically orders the propositions, then renders them.
std::string Encode(std::span<const std::string> tokens,
                   std::span<const Proposition> propositions);
std::string Encode(const SentenceRecord &sentence);

struct DecodeOptions {
  // Align each segment to the expected tokens with a longest common
  // subsequence instead of failing on the first divergent token.
  bool lenient = false;
};

struct DecodeResult {
  std::vector<Proposition> propositions;  // appearance order, deduplicated
  std::vector<std::string> warnings;
};

// Inverse of Encode. Whitespace around tokens and markers is free; tokens
// are matched by their characters, so "Zoo.[/M]" decodes against the
// expected tokens "Zoo" and ".". Throws MalformedMarkupError on unbalanced
// markers and TokenDriftError (strict mode) when a segment's token stream
// differs from expected_tokens. Segments without any marked token are
// dropped with a warning.
DecodeResult Decode(std::string_view text,
                    std::span<const std::string> expected_tokens,
                    const DecodeOptions &options = {});

// ---------------------------------------------------------------------------
// JSONL corpora. One JSON object per line, UTF-8.

// A cluster line with the rater that produced it.
struct RaterCluster {
  std::string rater_id;
  DocumentCluster cluster;

  bool operator==(const RaterCluster &) const = default;
};

// Entailment line; rater_id is present on per-rater label files only.
struct EntailmentLine {
  EntailmentRecord record;
  std::optional<std::string> rater_id;
};

enum class PropositionVerdict { kEntail, kNonEntail };

std::string_view VerdictName(PropositionVerdict verdict);
std::optional<PropositionVerdict> ParseVerdict(std::string_view name);

// Summary with propositions, their predicted labels and gold hallucinated
// token indices.
struct SummarySpans {
  std::string summary_id;
  std::vector<std::string> tokens;
  std::vector<Proposition> propositions;
  std::vector<PropositionVerdict> labels;
  TokenSet gold_hallucinated;

  void Validate() const;

  bool operator==(const SummarySpans &) const = default;
};

// Canonical single-line serializations (no trailing newline).
std::string ClusterToJson(const DocumentCluster &cluster);
std::string RaterClusterToJson(const RaterCluster &cluster);
std::string EntailmentToJson(const EntailmentLine &line);
std::string SummarySpansToJson(const SummarySpans &summary);

// Parsers validate invariants; errors carry the 1-based line number.
DocumentCluster ClusterFromJson(std::string_view line, std::size_t line_no = 0);
RaterCluster RaterClusterFromJson(std::string_view line,
                                  std::size_t line_no = 0);
EntailmentLine EntailmentFromJson(std::string_view line,
                                  std::size_t line_no = 0);
SummarySpans SummarySpansFromJson(std::string_view line,
                                  std::size_t line_no = 0);

std::vector<DocumentCluster> ReadClusters(std::istream &in);
std::vector<RaterCluster> ReadRaterClusters(std::istream &in);
std::vector<EntailmentLine> ReadEntailment(std::istream &in);
std::vector<SummarySpans> ReadSummarySpans(std::istream &in);

void WriteClusters(std::span<const DocumentCluster> clusters,
                   std::ostream &out);
void WriteRaterClusters(std::span<const RaterCluster> clusters,
                        std::ostream &out);
void WriteEntailment(std::span<const EntailmentLine> lines, std::ostream &out);
void WriteSummarySpans(std::span<const SummarySpans> summaries,
                       std::ostream &out);

// File variants. Throw ParseError if the file cannot be opened.
std::vector<DocumentCluster> ReadClusterFile(const std::string &path);
std::vector<RaterCluster> ReadRaterClusterFile(const std::string &path);
std::vector<EntailmentLine> ReadEntailmentFile(const std::string &path);
std::vector<SummarySpans> ReadSummarySpansFile(const std::string &path);
void WriteClusterFile(std::span<const DocumentCluster> clusters,
                      const std::string &path);

// All sentences of the clusters, in file order.
std::vector<SentenceRecord> Sentences(
    std::span<const DocumentCluster> clusters);

}  // namespace propseg

#endif  // PROPSEG_CODEC_H_
