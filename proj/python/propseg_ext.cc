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

// Python bindings. Propositions cross the boundary as lists of token
// indices; files are read with the same codec as the command-line tool.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "propseg/codec.h"
#include "propseg/errors.h"
#include "propseg/matching.h"
#include "propseg/metrics.h"
#include "propseg/propnli.h"
#include "propseg/proposition.h"

namespace py = pybind11;

namespace propseg {
namespace {

using IndexLists = std::vector<std::vector<TokenIndex>>;

std::vector<Proposition> ToPropositions(const IndexLists &lists) {
  std::vector<Proposition> out;
  out.reserve(lists.size());
  for (const auto &l : lists) out.emplace_back(l);
  return out;
}

IndexLists ToLists(const std::vector<Proposition> &props) {
  IndexLists out;
  for (const auto &p : props) out.push_back(p.indices());
  return out;
}

Matcher MakeMatcher(const std::string &kind, double theta) {
  if (kind == "exact") return Matcher::Exact();
  if (kind == "jaccard") return Matcher::Jaccard(theta);
  throw InvariantError("matcher must be 'jaccard' or 'exact'");
}

LabelScheme MakeScheme(const std::string &scheme) {
  if (scheme == "two_way") return LabelScheme::kTwoWay;
  if (scheme == "three_way") return LabelScheme::kThreeWay;
  throw InvariantError("scheme must be 'two_way' or 'three_way'");
}

py::dict PrfDict(const Prf &prf) {
  py::dict d;
  d["precision"] = prf.precision;
  d["recall"] = prf.recall;
  d["f1"] = prf.f1;
  return d;
}

py::dict MatchSetsPy(const IndexLists &left, const IndexLists &right,
                     double theta, const std::string &matcher) {
  const MatchResult r = MatchSets(ToPropositions(left), ToPropositions(right),
                                  MakeMatcher(matcher, theta));
  py::list pairs;
  for (const MatchedPair &p : r.pairs) {
    pairs.append(py::make_tuple(p.left, p.right, p.similarity));
  }
  py::dict d;
  d["pairs"] = pairs;
  d["unmatched_left"] = r.unmatched_left;
  d["unmatched_right"] = r.unmatched_right;
  return d;
}

py::dict DecodePy(const std::string &text,
                  const std::vector<std::string> &tokens, bool lenient) {
  const DecodeResult r = Decode(text, tokens, {.lenient = lenient});
  py::dict d;
  d["propositions"] = ToLists(r.propositions);
  d["warnings"] = r.warnings;
  return d;
}

py::dict ScoreSegmentationFiles(const std::string &pred,
                                const std::string &gold, double theta,
                                bool strict) {
  const auto p = Sentences(ReadClusterFile(pred));
  const auto g = Sentences(ReadClusterFile(gold));
  const SegmentationOptions options{.credit_empty_sentences = !strict};
  py::dict d;
  d["jaccard"] =
      PrfDict(ScoreSegmentation(p, g, Matcher::Jaccard(theta), options).score);
  d["exact"] = PrfDict(ScoreSegmentation(p, g, Matcher::Exact(), options).score);
  return d;
}

py::dict ClassificationDict(const ClassificationScore &s) {
  py::dict per_label;
  for (const auto &[label, score] : s.per_label) {
    py::dict row = PrfDict(score.score);
    row["support"] = score.support;
    row["predicted"] = score.predicted;
    per_label[py::str(label)] = row;
  }
  py::dict d;
  d["total"] = s.total;
  d["accuracy"] = s.accuracy;
  d["balanced_accuracy"] = s.balanced_accuracy;
  d["labels"] = s.labels;
  d["confusion"] = s.confusion;
  d["per_label"] = per_label;
  return d;
}

py::dict ScoreLabelsPy(const std::vector<std::string> &gold,
                       const std::vector<std::string> &pred,
                       const std::string &scheme) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("gold and pred lengths differ");
  }
  const LabelScheme s = MakeScheme(scheme);
  auto ids = [&](const std::vector<std::string> &names) {
    std::vector<std::size_t> out;
    for (const std::string &n : names) {
      const auto l = ParseLabel(n);
      if (!l) throw InvariantError("unknown label '" + n + "'");
      out.push_back(SchemeClass(*l, s));
    }
    return out;
  };
  return ClassificationDict(ScoreLabels(SchemeLabels(s), ids(gold), ids(pred)));
}

py::dict ScoreEntailmentFiles(const std::string &pred, const std::string &gold,
                              const std::string &scheme) {
  auto records = [](const std::string &path) {
    std::vector<EntailmentRecord> out;
    for (auto &line : ReadEntailmentFile(path)) out.push_back(line.record);
    return out;
  };
  return ClassificationDict(
      ScoreEntailment(records(pred), records(gold), MakeScheme(scheme)));
}

py::dict FleissPy(const RatingMatrix &ratings, std::size_t raters) {
  const AgreementScore k = FleissKappa(ratings, raters);
  py::dict d;
  d["kappa"] = k.kappa;
  d["observed_agreement"] = k.observed_agreement;
  d["expected_agreement"] = k.expected_agreement;
  d["degenerate"] = k.degenerate;
  return d;
}

LabeledPropositionSet MakeSet(const std::vector<std::string> &tokens,
                              const IndexLists &props,
                              const std::vector<bool> &entailed) {
  if (props.size() != entailed.size()) {
    throw InvariantError("one verdict per proposition required");
  }
  LabeledPropositionSet set{tokens, {}};
  for (std::size_t i = 0; i < props.size(); ++i) {
    Proposition p(props[i]);
    p.ValidateFor(tokens.size());
    set.items.push_back({std::move(p), entailed[i] ? PropositionVerdict::kEntail
                                                   : PropositionVerdict::kNonEntail});
  }
  return set;
}

py::dict HallucinatedSpansPy(const std::vector<std::string> &tokens,
                             const IndexLists &props,
                             const std::vector<bool> &entailed) {
  const LabeledPropositionSet set = MakeSet(tokens, props, entailed);
  const SpanMap map = HallucinatedSpans(set);
  py::dict d;
  d["faithful"] = map.faithful;
  d["hallucinated"] = map.hallucinated;
  d["uncovered"] = map.uncovered;
  if (set.items.empty()) {
    d["verdict"] = py::none();
  } else {
    d["verdict"] = ClassifySummary(set) == SummaryVerdict::kHallucinated
                       ? "hallucinated"
                       : "faithful";
  }
  return d;
}

py::list BucketsPy(const std::vector<std::tuple<std::size_t, bool>> &examples,
                   const std::vector<std::size_t> &edges) {
  std::vector<LengthExample> in;
  for (const auto &[length, correct] : examples) {
    in.push_back({length, correct ? 1u : 0u, 1u});
  }
  py::list rows;
  for (const BucketRow &r : LengthBucketReport(in, edges)) {
    py::dict d;
    d["low"] = r.low;
    d["high"] = r.high ? py::cast(*r.high) : py::none();
    d["n"] = r.n;
    d["accuracy"] = r.accuracy();
    d["underflow"] = r.underflow;
    rows.append(d);
  }
  return rows;
}

}  // namespace
}  // namespace propseg

PYBIND11_MODULE(_propseg, m) {
  using namespace propseg;
  m.doc() = "Proposition segmentation and entailment evaluation";

  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
  py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TokenDriftError>(m, "TokenDriftError", PyExc_ValueError);
  py::register_exception<MalformedRatingsError>(m, "MalformedRatingsError",
                                                PyExc_ValueError);
  py::register_exception<EmptyHypothesisError>(m, "EmptyHypothesisError",
                                               PyExc_ValueError);

  m.def("jaccard", [](const std::vector<TokenIndex> &a,
                      const std::vector<TokenIndex> &b) {
    return JaccardSimilarity(Proposition(a), Proposition(b));
  }, py::arg("a"), py::arg("b"));
  m.def("canonical_order", [](const IndexLists &props) {
    return ToLists(CanonicalOrder(Dedup(ToPropositions(props))));
  }, py::arg("propositions"), "Deduplicate and sort propositions.");
  m.def("match_sets", &MatchSetsPy, py::arg("left"), py::arg("right"),
        py::arg("theta") = 0.8, py::arg("matcher") = "jaccard");
  m.def("encode", [](const std::vector<std::string> &tokens,
                     const IndexLists &props) {
    return Encode(tokens, ToPropositions(props));
  }, py::arg("tokens"), py::arg("propositions"));
  m.def("decode", &DecodePy, py::arg("text"), py::arg("tokens"),
        py::arg("lenient") = false);
  m.def("score_segmentation_files", &ScoreSegmentationFiles, py::arg("pred"),
        py::arg("gold"), py::arg("theta") = 0.8, py::arg("strict") = false);
  m.def("score_labels", &ScoreLabelsPy, py::arg("gold"), py::arg("pred"),
        py::arg("scheme") = "two_way");
  m.def("score_entailment_files", &ScoreEntailmentFiles, py::arg("pred"),
        py::arg("gold"), py::arg("scheme") = "two_way");
  m.def("fleiss_kappa", &FleissPy, py::arg("ratings"), py::arg("raters"));
  m.def("hallucinated_spans", &HallucinatedSpansPy, py::arg("tokens"),
        py::arg("propositions"), py::arg("entailed"));
  m.def("length_buckets", &BucketsPy, py::arg("examples"), py::arg("edges"),
        "Examples are (length, correct) pairs.");
}
