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

// Command-line front end. Every subcommand writes a human-readable table
// followed by a JSON block that embeds the effective run configuration; the
// JSON is the machine contract.
//
// Exit codes: 0 success, 1 usage, 2 data or alignment error, 3 internal
// invariant violation.
//
// Sample usage:
//   propseg eval-seg --pred pred.jsonl --gold gold.jsonl --theta 0.8
//   propseg eval-ent --pred pred.jsonl --gold gold.jsonl --scheme two_way
//   propseg hallucinate --in summaries.jsonl --out spans.jsonl

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "propseg/annotate.h"
#include "propseg/codec.h"
#include "propseg/errors.h"
#include "propseg/matching.h"
#include "propseg/metrics.h"
#include "propseg/propnli.h"

namespace propseg {
namespace {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kInternalError = 3 };

// Bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  double theta = 0.8;
  std::string matcher = "jaccard";
  std::string scheme = "two_way";
  std::string domain;  // empty: no filter
  bool strict = false;
  bool json_only = false;
  std::string pred, gold, in, out, clusters, raters, votes;
  std::string labels_out, unresolved_out, edges, support = "total";
  std::string on_drift = "error";

  Matcher MakeMatcher() const {
    return matcher == "exact" ? Matcher::Exact() : Matcher::Jaccard(theta);
  }
  LabelScheme Scheme() const {
    return scheme == "three_way" ? LabelScheme::kThreeWay
                                 : LabelScheme::kTwoWay;
  }
  std::optional<Domain> DomainFilter() const {
    if (domain.empty()) return std::nullopt;
    return ParseDomain(domain);
  }

  Json ToJson() const {
    Json paths = Json::object();
    auto add = [&](const char *key, const std::string &value) {
      if (!value.empty()) paths[key] = value;
    };
    add("pred", pred);
    add("gold", gold);
    add("in", in);
    add("out", out);
    add("clusters", clusters);
    add("raters", raters);
    add("votes", votes);
    add("labels_out", labels_out);
    add("unresolved_out", unresolved_out);
    Json j;
    j["subcommand"] = subcommand;
    j["theta"] = theta;
    j["matcher"] = matcher;
    j["scheme"] = scheme;
    j["domain"] = domain.empty() ? Json() : Json(domain);
    j["strict"] = strict;
    j["paths"] = paths;
    if (subcommand == "reconcile") j["support"] = support;
    if (subcommand == "decode") j["on_drift"] = on_drift;
    if (subcommand == "report-buckets") j["edges"] = edges;
    return j;
  }
};

std::string Pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%7.2f", 100.0 * value);
  return buf;
}

Json PrfJson(const Prf &prf) {
  return {{"precision", prf.precision},
          {"recall", prf.recall},
          {"f1", prf.f1}};
}

std::string PrfRow(const std::string &name, const Prf &prf) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-16s %s %s %s\n", name.c_str(),
                Pct(prf.precision).c_str(), Pct(prf.recall).c_str(),
                Pct(prf.f1).c_str());
  return buf;
}

const char kPrfHeader[] = "                 prec.   recall     f1\n";

void Emit(const RunConfig &config, const std::string &table, Json results) {
  Json report;
  report["config"] = config.ToJson();
  report["results"] = std::move(results);
  if (!config.json_only) std::cout << table << '\n';
  std::cout << report.dump(2) << '\n';
}

std::ofstream OpenOutput(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

bool Blank(const std::string &line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

Json ParseLine(const std::string &line, std::size_t line_no) {
  try {
    Json j = Json::parse(line);
    if (!j.is_object()) throw ParseError("expected a JSON object", line_no);
    return j;
  } catch (const Json::exception &e) {
    throw ParseError(e.what(), line_no);
  }
}

// Optional "domain" field of a free-form line; absent lines are "other".
Domain LineDomain(const Json &j, std::size_t line_no) {
  if (!j.contains("domain")) return Domain::kOther;
  const auto d = ParseDomain(j["domain"].get<std::string>());
  if (!d) throw ParseError("unknown domain", line_no);
  return *d;
}

std::vector<DocumentCluster> FilterClusters(std::vector<DocumentCluster> all,
                                            const RunConfig &config) {
  const auto domain = config.DomainFilter();
  if (!domain) return all;
  std::vector<DocumentCluster> kept;
  for (auto &c : all) {
    if (c.domain == *domain) kept.push_back(std::move(c));
  }
  return kept;
}

std::vector<RaterCluster> FilterRaters(std::vector<RaterCluster> all,
                                       const RunConfig &config) {
  const auto domain = config.DomainFilter();
  if (!domain) return all;
  std::vector<RaterCluster> kept;
  for (auto &r : all) {
    if (r.cluster.domain == *domain) kept.push_back(std::move(r));
  }
  return kept;
}

// doc_id -> domain, from a cluster file or a rater file.
std::map<std::string, Domain> DocumentDomains(const RunConfig &config) {
  std::map<std::string, Domain> out;
  if (!config.clusters.empty()) {
    for (const auto &c : ReadClusterFile(config.clusters)) {
      for (const auto &d : c.documents) out[d.doc_id] = c.domain;
    }
  } else if (!config.raters.empty()) {
    for (const auto &r : ReadRaterClusterFile(config.raters)) {
      for (const auto &d : r.cluster.documents) out[d.doc_id] = r.cluster.domain;
    }
  } else {
    throw UsageError("--domain needs --clusters to look up document domains");
  }
  return out;
}

template <typename Line, typename DocOf>
std::vector<Line> FilterByDocument(std::vector<Line> lines,
                                   const RunConfig &config, DocOf doc_of) {
  const auto domain = config.DomainFilter();
  if (!domain) return lines;
  const auto domains = DocumentDomains(config);
  std::vector<Line> kept;
  for (auto &line : lines) {
    const auto it = domains.find(doc_of(line));
    if (it != domains.end() && it->second == *domain) {
      kept.push_back(std::move(line));
    }
  }
  return kept;
}

Json ClassificationJson(const ClassificationScore &s) {
  Json per_label = Json::object();
  for (const std::string &label : s.labels) {
    const LabelScore &ls = s.per_label.at(label);
    Json j = PrfJson(ls.score);
    j["support"] = ls.support;
    j["predicted"] = ls.predicted;
    per_label[label] = j;
  }
  return {{"total", s.total},
          {"accuracy", s.accuracy},
          {"balanced_accuracy", s.balanced_accuracy},
          {"labels", s.labels},
          {"confusion", s.confusion},
          {"per_label", per_label}};
}

std::string ClassificationTable(const ClassificationScore &s) {
  std::ostringstream t;
  t << "records            " << s.total << '\n'
    << "accuracy          " << Pct(s.accuracy) << '\n'
    << "balanced accuracy " << Pct(s.balanced_accuracy) << "\n\n"
    << kPrfHeader;
  for (const std::string &label : s.labels) {
    t << PrfRow(label, s.per_label.at(label).score);
  }
  return t.str();
}

// ---------------------------------------------------------------------------

int EvalSeg(const RunConfig &config) {
  const auto gold = Sentences(FilterClusters(ReadClusterFile(config.gold), config));
  const auto pred = Sentences(FilterClusters(ReadClusterFile(config.pred), config));
  const SegmentationOptions options{.credit_empty_sentences = !config.strict};
  const Matcher fuzzy = Matcher::Jaccard(config.theta);
  const SegmentationScore jaccard =
      ScoreSegmentation(pred, gold, fuzzy, options);
  const SegmentationScore exact =
      ScoreSegmentation(pred, gold, Matcher::Exact(), options);

  std::ostringstream t;
  t << "sentences " << gold.size() << "\n\n"
    << kPrfHeader << PrfRow(fuzzy.ToString(), jaccard.score)
    << PrfRow("exact", exact.score);

  Json per_sentence = Json::array();
  for (std::size_t i = 0; i < jaccard.per_sentence.size(); ++i) {
    const auto &a = jaccard.per_sentence[i];
    const auto &b = exact.per_sentence[i];
    per_sentence.push_back({{"doc_id", a.doc_id},
                            {"sentence_id", a.sentence_id},
                            {"predicted", a.predicted},
                            {"gold", a.gold},
                            {"jaccard_matched", a.matched},
                            {"exact_matched", b.matched}});
  }
  Emit(config, t.str(),
       {{"sentences", gold.size()},
        {"jaccard", PrfJson(jaccard.score)},
        {"exact", PrfJson(exact.score)},
        {"per_sentence", per_sentence}});
  return kOk;
}

std::vector<EntailmentRecord> Records(std::vector<EntailmentLine> lines) {
  std::vector<EntailmentRecord> out;
  for (auto &l : lines) out.push_back(std::move(l.record));
  return out;
}

int EvalEnt(const RunConfig &config) {
  auto doc = [](const EntailmentLine &l) { return l.record.doc_id; };
  const auto gold = Records(
      FilterByDocument(ReadEntailmentFile(config.gold), config, doc));
  const auto pred = Records(
      FilterByDocument(ReadEntailmentFile(config.pred), config, doc));
  const ClassificationScore s = ScoreEntailment(pred, gold, config.Scheme());
  Emit(config, ClassificationTable(s), ClassificationJson(s));
  return kOk;
}

// Rater files grouped by rater_id, sorted by id.
std::map<std::string, std::vector<DocumentCluster>> ByRater(
    std::vector<RaterCluster> lines) {
  std::map<std::string, std::vector<DocumentCluster>> out;
  for (auto &l : lines) out[l.rater_id].push_back(std::move(l.cluster));
  return out;
}

EntailmentLabel InScheme(EntailmentLabel label, LabelScheme scheme) {
  if (scheme == LabelScheme::kTwoWay &&
      label == EntailmentLabel::kContradiction) {
    return EntailmentLabel::kNeutral;
  }
  return label;
}

using VoteKey =
    std::tuple<std::string, std::string, TokenSet, std::string>;

VoteKey KeyOf(const EntailmentRecord &r) {
  return {r.doc_id, r.sentence_id, r.proposition.indices(), r.premise_doc_id};
}

Json KappaJson(const AgreementScore &k) {
  return {{"kappa", k.kappa},
          {"observed_agreement", k.observed_agreement},
          {"expected_agreement", k.expected_agreement},
          {"items", k.n_items},
          {"raters", k.n_raters},
          {"categories", k.n_categories},
          {"degenerate", k.degenerate}};
}

int Agreement(const RunConfig &config) {
  if (config.raters.empty() && config.votes.empty()) {
    throw UsageError("agreement needs --raters and/or --votes");
  }
  std::ostringstream t;
  Json results;
  const Matcher matcher = config.MakeMatcher();

  if (!config.raters.empty()) {
    const auto raters =
        ByRater(FilterRaters(ReadRaterClusterFile(config.raters), config));
    if (raters.size() < 2) {
      throw MalformedRatingsError("agreement needs at least 2 raters");
    }
    std::vector<std::string> ids;
    std::vector<std::vector<SentenceRecord>> sentences;
    for (const auto &[id, clusters] : raters) {
      ids.push_back(id);
      sentences.push_back(Sentences(clusters));
    }
    Json pairs = Json::array();
    double total = 0.0;
    t << "pairwise proposition agreement (" << matcher.ToString() << ")\n"
      << kPrfHeader;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        const RaterAgreement r =
            PairwiseRaterF1(sentences[a], sentences[b], matcher);
        total += r.score.f1;
        t << PrfRow(ids[a] + " / " + ids[b], r.score);
        Json j = PrfJson(r.score);
        j["raters"] = {ids[a], ids[b]};
        j["matched"] = r.matched;
        pairs.push_back(j);
      }
    }
    const double mean_f1 = total / static_cast<double>(pairs.size());
    t << "mean F1         " << Pct(mean_f1) << '\n';
    results["pairwise"] = pairs;
    results["mean_pairwise_f1"] = mean_f1;

    const RatingMatrix tokens = TokenAgreementRatings(sentences, matcher);
    if (tokens.empty()) {
      t << "token kappa         n/a (no proposition matched by every rater)\n";
      results["token_kappa"] = nullptr;
    } else {
      const AgreementScore k = FleissKappa(tokens, ids.size());
      char buf[96];
      std::snprintf(buf, sizeof(buf), "token kappa     %8.4f over %zu items\n",
                    k.kappa, k.n_items);
      t << buf;
      results["token_kappa"] = KappaJson(k);
    }
  }

  if (!config.votes.empty()) {
    auto doc = [](const EntailmentLine &l) { return l.record.doc_id; };
    const auto votes =
        FilterByDocument(ReadEntailmentFile(config.votes), config, doc);
    std::map<VoteKey, std::size_t> index;
    std::vector<std::vector<EntailmentLabel>> items;
    std::set<std::string> raters;
    for (const auto &v : votes) {
      if (v.rater_id) raters.insert(*v.rater_id);
      const auto [it, fresh] = index.emplace(KeyOf(v.record), items.size());
      if (fresh) items.emplace_back();
      items[it->second].push_back(InScheme(v.record.label, config.Scheme()));
    }
    if (items.empty()) throw MalformedRatingsError("no label votes");
    const AgreementScore k =
        FleissKappa(LabelAgreementRatings(items), items.front().size());
    char buf[96];
    std::snprintf(buf, sizeof(buf), "label kappa     %8.4f over %zu items\n",
                  k.kappa, k.n_items);
    t << buf;
    results["label_kappa"] = KappaJson(k);
    results["label_raters"] = raters;
  }
  Emit(config, t.str(), results);
  return kOk;
}

int Reconcile(const RunConfig &config) {
  const auto raters = FilterRaters(ReadRaterClusterFile(config.raters), config);
  const SupportCount count = config.support == "at-least-one"
                                 ? SupportCount::kAtLeastOne
                                 : SupportCount::kTotalPairs;
  const ReconciledCorpus corpus =
      ReconcileCorpus(raters, config.MakeMatcher(), count);
  {
    auto out = OpenOutput(config.out);
    WriteClusters(corpus.clusters, out);
  }

  std::ostringstream t;
  t << "sentence                       chosen   support\n";
  Json choices = Json::array();
  std::map<std::string, std::size_t> wins;
  for (const auto &[key, choice] : corpus.choices) {
    ++wins[choice.rater_id];
    std::string support;
    for (const auto &[id, n] : choice.support) {
      support += (support.empty() ? "" : " ") + id + "=" + std::to_string(n);
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-30s %-8s %s\n",
                  (key.first + "/" + key.second).c_str(),
                  choice.rater_id.c_str(), support.c_str());
    t << buf;
    choices.push_back({{"doc_id", key.first},
                       {"sentence_id", key.second},
                       {"rater_id", choice.rater_id},
                       {"support", choice.support}});
  }
  Json results{{"clusters", corpus.clusters.size()},
               {"sentences", corpus.choices.size()},
               {"wins", wins},
               {"choices", choices}};

  if (!config.votes.empty()) {
    auto doc = [](const EntailmentLine &l) { return l.record.doc_id; };
    const auto votes =
        FilterByDocument(ReadEntailmentFile(config.votes), config, doc);
    const LabelResolution res = ResolveLabels(votes);
    if (!config.labels_out.empty()) {
      auto out = OpenOutput(config.labels_out);
      WriteEntailment(res.gold, out);
    }
    Json unresolved = Json::array();
    for (const auto &[record, labels] : res.unresolved) {
      Json j = Json::parse(EntailmentToJson({record, std::nullopt}));
      j.erase("label");
      Json names = Json::array();
      for (EntailmentLabel l : labels) names.push_back(std::string(LabelName(l)));
      j["votes"] = names;
      unresolved.push_back(j);
    }
    if (!config.unresolved_out.empty()) {
      auto out = OpenOutput(config.unresolved_out);
      for (const Json &j : unresolved) out << j.dump() << '\n';
    }
    t << "\nlabels resolved    " << res.gold.size() << '\n'
      << "labels unresolved  " << res.unresolved.size() << '\n';
    results["labels_resolved"] = res.gold.size();
    results["labels_unresolved"] = unresolved;
  }
  Emit(config, t.str(), results);
  return kOk;
}

int EncodeCmd(const RunConfig &config) {
  const auto clusters = FilterClusters(ReadClusterFile(config.in), config);
  auto out = OpenOutput(config.out);
  std::size_t n = 0;
  for (const auto &c : clusters) {
    for (const auto &d : c.documents) {
      for (const auto &s : d.sentences) {
        Json j;
        j["cluster_id"] = c.cluster_id;
        j["domain"] = std::string(DomainName(c.domain));
        j["doc_id"] = s.doc_id;
        j["sentence_id"] = s.sentence_id;
        j["tokens"] = s.tokens;
        j["target"] = Encode(s);
        out << j.dump() << '\n';
        ++n;
      }
    }
  }
  std::ostringstream t;
  t << "encoded " << n << " sentences\n";
  Emit(config, t.str(), {{"sentences", n}});
  return kOk;
}

int DecodeCmd(const RunConfig &config) {
  const std::optional<Domain> filter = config.DomainFilter();
  std::vector<DocumentCluster> clusters;
  std::map<std::string, std::size_t> cluster_index;
  Json warnings = Json::array();
  std::size_t decoded = 0, dropped = 0;
  const auto lines = ReadLines(config.in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Blank(lines[i])) continue;
    const std::size_t line_no = i + 1;
    const Json j = ParseLine(lines[i], line_no);
    std::string doc_id, sentence_id, target;
    std::vector<std::string> tokens;
    try {
      doc_id = j.at("doc_id").get<std::string>();
      sentence_id = j.at("sentence_id").get<std::string>();
      tokens = j.at("tokens").get<std::vector<std::string>>();
      target = j.at("target").get<std::string>();
    } catch (const Json::exception &e) {
      throw ParseError(e.what(), line_no);
    }
    const std::string cluster_id =
        j.contains("cluster_id") ? j["cluster_id"].get<std::string>() : doc_id;
    const Domain domain = LineDomain(j, line_no);
    if (filter && domain != *filter) continue;

    SentenceRecord record{doc_id, sentence_id, tokens, {}};
    const std::string where = doc_id + "/" + sentence_id;
    try {
      const DecodeResult r =
          Decode(target, tokens, {.lenient = config.on_drift == "repair"});
      record.propositions = r.propositions;
      for (const std::string &w : r.warnings) warnings.push_back(where + ": " + w);
      ++decoded;
    } catch (const TokenDriftError &e) {
      if (config.on_drift != "drop") {
        throw ParseError(where + ": " + e.what(), line_no);
      }
      warnings.push_back(where + ": dropped, " + e.what());
      ++dropped;
    } catch (const MalformedMarkupError &e) {
      if (config.on_drift != "drop") {
        throw ParseError(where + ": " + e.what(), line_no);
      }
      warnings.push_back(where + ": dropped, " + e.what());
      ++dropped;
    }

    auto [it, fresh] = cluster_index.emplace(cluster_id, clusters.size());
    if (fresh) clusters.push_back({cluster_id, domain, {}});
    DocumentCluster &cluster = clusters[it->second];
    if (cluster.documents.empty() || cluster.documents.back().doc_id != doc_id) {
      cluster.documents.push_back({doc_id, {}});
    }
    cluster.documents.back().sentences.push_back(std::move(record));
  }
  for (const auto &c : clusters) c.Validate();
  {
    auto out = OpenOutput(config.out);
    WriteClusters(clusters, out);
  }
  std::ostringstream t;
  t << "decoded " << decoded << " sentences, " << dropped << " dropped, "
    << warnings.size() << " warnings\n";
  for (const auto &w : warnings) t << "  " << w.get<std::string>() << '\n';
  Emit(config, t.str(),
       {{"decoded", decoded}, {"dropped", dropped}, {"warnings", warnings}});
  return kOk;
}

int Hallucinate(const RunConfig &config) {
  const std::optional<Domain> filter = config.DomainFilter();
  const auto lines = ReadLines(config.in);
  auto out = OpenOutput(config.out);
  std::vector<TokenClasses> predicted, gold;
  std::size_t hallucinated = 0, correct = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Blank(lines[i])) continue;
    if (filter && LineDomain(ParseLine(lines[i], i + 1), i + 1) != *filter) {
      continue;
    }
    const SummarySpans summary = SummarySpansFromJson(lines[i], i + 1);
    const auto set = LabeledPropositionSet::FromSummary(summary);
    const SummaryVerdict verdict = ClassifySummary(set);
    const SpanMap map = HallucinatedSpans(set);
    const bool flagged = verdict == SummaryVerdict::kHallucinated;
    hallucinated += flagged;
    correct += flagged == !summary.gold_hallucinated.empty();
    Json j;
    j["summary_id"] = summary.summary_id;
    j["verdict"] = flagged ? "hallucinated" : "faithful";
    j["faithful"] = map.faithful;
    j["hallucinated"] = map.hallucinated;
    j["uncovered"] = map.uncovered;
    out << j.dump() << '\n';
    predicted.push_back(map.ToTokenClasses());
    gold.push_back(GoldTokenClasses(summary));
  }
  const std::size_t n = predicted.size();
  const TokenClassificationScore tokens =
      ScoreTokenClassification(predicted, gold);
  const double accuracy =
      n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n);
  std::ostringstream t;
  t << "summaries          " << n << '\n'
    << "hallucinated       " << hallucinated << '\n'
    << "summary accuracy  " << Pct(accuracy) << "\n\n"
    << "token classes\n"
    << kPrfHeader << PrfRow("faithful", tokens.faithful)
    << PrfRow("hallucinated", tokens.hallucinated);
  Emit(config, t.str(),
       {{"summaries", n},
        {"hallucinated", hallucinated},
        {"summary_accuracy", accuracy},
        {"tokens",
         {{"faithful", PrfJson(tokens.faithful)},
          {"hallucinated", PrfJson(tokens.hallucinated)}}}});
  return kOk;
}

std::vector<std::size_t> ParseEdges(const std::string &text) {
  std::vector<std::size_t> edges;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      const long value = std::stol(item, &used);
      if (used != item.size() || value < 0) throw std::invalid_argument(item);
      edges.push_back(static_cast<std::size_t>(value));
    } catch (const std::logic_error &) {
      throw UsageError("bad bucket edge '" + item + "'");
    }
  }
  return edges;
}

int ReportBuckets(const RunConfig &config) {
  std::vector<std::size_t> edges = ParseEdges(config.edges);
  if (edges.empty()) throw UsageError("--edges must list at least one edge");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) {
      throw UsageError("--edges must be strictly ascending");
    }
  }
  const std::optional<Domain> filter = config.DomainFilter();
  const LabelScheme scheme = config.Scheme();
  std::vector<LengthExample> examples;
  const auto lines = ReadLines(config.in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Blank(lines[i])) continue;
    const Json j = ParseLine(lines[i], i + 1);
    if (filter && LineDomain(j, i + 1) != *filter) continue;
    try {
      auto label = [&](const char *key) {
        const auto l = ParseLabel(j.at(key).get<std::string>());
        if (!l) throw ParseError(std::string("unknown label in ") + key, i + 1);
        return SchemeClass(*l, scheme);
      };
      const long length = j.at("hypothesis_length").get<long>();
      if (length < 0) throw ParseError("negative hypothesis_length", i + 1);
      examples.push_back({static_cast<std::size_t>(length), label("predicted"),
                          label("gold")});
    } catch (const Json::exception &e) {
      throw ParseError(e.what(), i + 1);
    }
  }
  const auto rows = LengthBucketReport(examples, edges);
  if (config.out.empty()) {
    WriteBucketCsv(rows, std::cout);
    return kOk;
  }
  {
    auto out = OpenOutput(config.out);
    WriteBucketCsv(rows, out);
  }
  std::ostringstream t;
  WriteBucketCsv(rows, t);
  Json buckets = Json::array();
  for (const BucketRow &r : rows) {
    buckets.push_back({{"low", r.low},
                       {"high", r.high ? Json(*r.high) : Json()},
                       {"n", r.n},
                       {"correct", r.correct},
                       {"underflow", r.underflow}});
  }
  Emit(config, t.str(), {{"examples", examples.size()}, {"buckets", buckets}});
  return kOk;
}

// ---------------------------------------------------------------------------

int Run(int argc, char **argv) {
  CLI::App app{"Proposition segmentation and entailment evaluation toolkit"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&](CLI::App *cmd) {
    cmd->add_option("--theta", config.theta, "Jaccard match threshold in (0, 1]")
        ->check([](const std::string &value) -> std::string {
          try {
            const double t = std::stod(value);
            return t > 0.0 && t <= 1.0 ? "" : "theta must be in (0, 1]";
          } catch (const std::exception &) {
            return "theta must be a number";
          }
        });
    cmd->add_option("--matcher", config.matcher, "jaccard or exact")
        ->check(CLI::IsMember({"jaccard", "exact"}));
    cmd->add_option("--scheme", config.scheme, "two_way or three_way")
        ->check(CLI::IsMember({"two_way", "three_way"}));
    cmd->add_option("--domain", config.domain, "restrict to wiki or news")
        ->check(CLI::IsMember({"wiki", "news", "other"}));
    cmd->add_flag("--strict", config.strict,
                  "score sentences with no propositions on either side as 0");
    cmd->add_flag("--json", config.json_only, "print only the JSON report");
  };

  CLI::App *seg = app.add_subcommand("eval-seg", "score proposition segmentation");
  common(seg);
  seg->add_option("--pred", config.pred, "predicted cluster JSONL")->required();
  seg->add_option("--gold", config.gold, "gold cluster JSONL")->required();

  CLI::App *ent = app.add_subcommand("eval-ent", "score entailment labels");
  common(ent);
  ent->add_option("--pred", config.pred, "predicted entailment JSONL")->required();
  ent->add_option("--gold", config.gold, "gold entailment JSONL")->required();
  ent->add_option("--clusters", config.clusters,
                  "cluster JSONL giving document domains for --domain");

  CLI::App *agree = app.add_subcommand("agreement", "inter-rater agreement");
  common(agree);
  agree->add_option("--raters", config.raters, "rater cluster JSONL");
  agree->add_option("--votes", config.votes, "entailment JSONL with rater_id");
  agree->add_option("--clusters", config.clusters,
                    "cluster JSONL giving document domains for --domain");

  CLI::App *rec = app.add_subcommand("reconcile", "merge rater annotations");
  common(rec);
  rec->add_option("--raters", config.raters, "rater cluster JSONL")->required();
  rec->add_option("--out", config.out, "reconciled cluster JSONL")->required();
  rec->add_option("--support", config.support, "total or at-least-one")
      ->check(CLI::IsMember({"total", "at-least-one"}));
  rec->add_option("--votes", config.votes, "entailment JSONL with rater_id");
  rec->add_option("--labels-out", config.labels_out, "majority-label JSONL");
  rec->add_option("--unresolved-out", config.unresolved_out,
                  "items without a strict majority");

  CLI::App *enc = app.add_subcommand("encode", "write marked target sequences");
  common(enc);
  enc->add_option("--in", config.in, "cluster JSONL")->required();
  enc->add_option("--out", config.out, "sequence JSONL")->required();

  CLI::App *dec = app.add_subcommand("decode", "read marked target sequences");
  common(dec);
  dec->add_option("--in", config.in, "sequence JSONL")->required();
  dec->add_option("--out", config.out, "cluster JSONL")->required();
  dec->add_option("--on-drift", config.on_drift, "error, drop or repair")
      ->check(CLI::IsMember({"error", "drop", "repair"}));

  CLI::App *hal = app.add_subcommand("hallucinate", "derive hallucinated spans");
  common(hal);
  hal->add_option("--in", config.in, "summary-spans JSONL")->required();
  hal->add_option("--out", config.out, "span map JSONL")->required();

  CLI::App *buckets =
      app.add_subcommand("report-buckets", "accuracy by hypothesis length");
  common(buckets);
  buckets->add_option("--in", config.in, "length JSONL")->required();
  buckets->add_option("--edges", config.edges, "ascending edges, e.g. 5,10,20")
      ->required();
  buckets->add_option("--out", config.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  if (config.strict && config.subcommand == "decode" &&
      config.on_drift == "repair") {
    std::cerr << "error: --strict excludes --on-drift repair\n";
    return kUsage;
  }

  try {
    const std::string &c = config.subcommand;
    if (c == "eval-seg") return EvalSeg(config);
    if (c == "eval-ent") return EvalEnt(config);
    if (c == "agreement") return Agreement(config);
    if (c == "reconcile") return Reconcile(config);
    if (c == "encode") return EncodeCmd(config);
    if (c == "decode") return DecodeCmd(config);
    if (c == "hallucinate") return Hallucinate(config);
    if (c == "report-buckets") return ReportBuckets(config);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const AlignmentError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const TokenDriftError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const MalformedRatingsError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const EmptyHypothesisError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsage;
}

}  // namespace
}  // namespace propseg

int main(int argc, char **argv) { return propseg::Run(argc, argv); }
