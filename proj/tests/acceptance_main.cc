// Copyright 2026 The Analogy Engine Authors
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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "analogy/engine_config.h"
#include "analogy/entity_clustering.h"
#include "analogy/interchange.h"
#include "analogy/mapper.h"
#include "analogy/metrics.h"
#include "analogy/miner.h"
#include "analogy/pipeline.h"
#include "analogy/qa_filter.h"
#include "analogy/similarity.h"
#include "clustering_cases.h"
#include "mapping_cases.h"
#include "metric_cases.h"
#include "test_support.h"

namespace analogy {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- filter ---------------------------------------------------------------

struct FilterVector {
  SrlRecord record;
  std::optional<RejectReason> expected;
};

std::vector<FilterVector> filter_vector() {
  using R = RejectReason;
  auto rec = [](const char* verb, const char* q, double qp, double ap, bool has_verb = false,
                bool has_noun = true, bool pronoun = false) {
    SrlRecord r = testing::record(verb, q, "span", qp, ap);
    r.answer.contains_verb = has_verb;
    r.answer.contains_noun = has_noun;
    r.answer.is_pronoun = pronoun;
    return r;
  };
  return {
      {rec("make", "what makes something?", 0.9, 0.9), std::nullopt},
      {rec("see", "who sees something?", 0.9, 0.9), std::nullopt},
      {rec("pick", "which is picked?", 0.9, 0.9), std::nullopt},
      {rec("go", "where does something go?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("go", "when does something go?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("go", "why does something go?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("go", "how does something go?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("go", "does something go?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("make", "what makes something?", 0.1, 0.9), R::kLowQuestionProb},
      {rec("make", "what makes something?", 0.09, 0.9), R::kLowQuestionProb},
      {rec("make", "what makes something?", 0.11, 0.9), std::nullopt},
      {rec("make", "what makes something?", 0.0, 0.9), R::kLowQuestionProb},
      {rec("make", "what makes something?", 1.0, 1.0), std::nullopt},
      {rec("make", "what makes something?", 0.9, 0.05), R::kLowAnswerProb},
      {rec("make", "what makes something?", 0.9, 0.04), R::kLowAnswerProb},
      {rec("make", "what makes something?", 0.9, 0.06), std::nullopt},
      {rec("make", "what makes something?", 0.9, 0.0), R::kLowAnswerProb},
      {rec("be", "what is something?", 0.9, 0.9), R::kBannedVerb},
      {rec("be", "who is someone?", 0.5, 0.5), R::kBannedVerb},
      {rec("become", "what becomes something?", 0.9, 0.9), std::nullopt},
      {rec("control", "what is controlled?", 0.9, 0.9, true), R::kAnswerHasVerb},
      {rec("control", "what is controlled?", 0.9, 0.9, false, false), R::kAnswerLacksNoun},
      {rec("make", "what makes something?", 0.9, 0.9, false, true, true), R::kPronounAnswer},
      {rec("make", "who makes something?", 0.9, 0.9, false, false, true), R::kAnswerLacksNoun},
      {rec("make", "what makes something?", 0.9, 0.9, true, false, true), R::kAnswerHasVerb},
      {rec("be", "where is something?", 0.9, 0.9), R::kWhNotAllowed},
      {rec("be", "what is something?", 0.05, 0.9), R::kLowQuestionProb},
      {rec("make", "where is something made?", 0.9, 0.01), R::kLowAnswerProb},
      {rec("be", "what is something?", 0.9, 0.9, true, false, true), R::kBannedVerb},
      {rec("transport", "what is transported?", 0.101, 0.051), std::nullopt},
  };
}

Outcome filter_conformance() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto vec = filter_vector();
  if (vec.size() != 30) o.fail("vector has " + std::to_string(vec.size()) + " records");
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const auto got = keep_record(vec[i].record, FilterConfig{});
    if (got != vec[i].expected) {
      o.fail("record " + std::to_string(i) + ": got " +
             (got ? std::string(to_string(*got)) : "keep"));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) o.fail("took " + fmt(secs) + " s");
  if (o.pass) o.detail = "30 records, " + fmt(secs) + " s";
  return o;
}

// --- clustering -------------------------------------------------------------

Outcome clustering_oracle() {
  Outcome o;
  const auto cases = testing::cluster_cases();
  for (const auto& c : cases)
    if (agglomerate(c.matrix(), c.threshold, c.linkage) != c.expected)
      o.fail("case " + c.name + " differs from the reference partition");

  testing::Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.below(10);
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    DistanceMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        m.set(i, j, std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
    const double lo = rng.uniform(0.01, 0.7);
    const double hi = lo + rng.uniform(0.0, 0.7);
    const auto fine = agglomerate(m, lo, Linkage::kAverage);
    const auto coarse = agglomerate(m, hi, Linkage::kAverage);
    std::map<int, int> image;
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] = image.emplace(fine[i], coarse[i]);
      if (!fresh && it->second != coarse[i]) {
        o.fail("threshold monotonicity broken in trial " + std::to_string(trial));
        break;
      }
    }
    ++checked;
  }
  if (o.pass)
    o.detail = std::to_string(cases.size()) + " matrices, " + std::to_string(checked) +
               " monotonicity instances";
  return o;
}

// --- beam search --------------------------------------------------------------

Outcome beam_vs_brute_force() {
  Outcome o;
  const auto t0 = Clock::now();
  testing::Rng rng(20240601);
  int hits7 = 0, hits64 = 0;
  constexpr int kTrials = 200;
  for (int trial = 0; trial < kTrials; ++trial) {
    const ScoreMatrix m = testing::random_matrix(rng, 4, 4, 0.0, 3.0);
    const double best = testing::brute_force_optimum(m);
    if (std::abs(beam_search(m, BeamConfig{7, 3})[0].score - best) <= 1e-9) ++hits7;
    if (std::abs(beam_search(m, BeamConfig{64, 3})[0].score - best) <= 1e-9) ++hits64;
  }
  const double secs = seconds_since(t0);
  if (hits7 < 190) o.fail("width 7 optimal on " + std::to_string(hits7) + "/200");
  if (hits64 != kTrials) o.fail("width 64 optimal on " + std::to_string(hits64) + "/200");
  if (secs >= 10.0) o.fail("took " + fmt(secs) + " s");
  if (o.pass)
    o.detail = "width 7: " + std::to_string(hits7) + "/200, width 64: " +
               std::to_string(hits64) + "/200, " + fmt(secs) + " s";
  return o;
}

// --- swap symmetry --------------------------------------------------------------

Outcome swap_symmetry() {
  Outcome o;
  const EngineConfig cfg;
  int nonempty = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    testing::RandomPair p = testing::random_pair(seed);
    const auto b = prepare_document(p.base, p.embeddings, cfg).clustered;
    const auto t = prepare_document(p.target, p.embeddings, cfg).clustered;
    const auto fwd = analyze_pair(b, t, p.embeddings, cfg).mappings.at(0);
    const auto rev = analyze_pair(t, b, p.embeddings, cfg).mappings.at(0);
    if (std::abs(fwd.score - rev.score) > 1e-9 ||
        std::abs(analogy_score(fwd) - analogy_score(rev)) > 1e-9) {
      o.fail("seed " + std::to_string(seed) + ": " + fmt(fwd.score) + " vs " + fmt(rev.score));
      continue;
    }
    PairSet inverted;
    for (const auto& [x, y] : rev.pair_set()) inverted.emplace_back(y, x);
    std::sort(inverted.begin(), inverted.end());
    if (inverted != fwd.pair_set()) o.fail("seed " + std::to_string(seed) + ": pair sets differ");
    if (!fwd.pairs.empty()) ++nonempty;
  }
  if (nonempty < 40) o.fail("only " + std::to_string(nonempty) + " fixtures had mappings");
  if (o.pass) o.detail = "50 pairs (" + std::to_string(nonempty) + " with non-empty mappings)";
  return o;
}

// --- relation bonus ---------------------------------------------------------------

Outcome relation_bonus() {
  using testing::record;
  Outcome o;
  DocumentExtraction base = testing::document(
      "cell", {{record("provide", "what provides something?", "The mitochondria"),
                record("provide", "what does something provide?", "energy")},
               {record("store", "what stores something?", "the vacuole")}});
  DocumentExtraction target = testing::document(
      "factory", {{record("provide", "what provides something?", "The generators"),
                   record("provide", "what does something provide?", "electricity")},
                  {record("store", "what stores something?", "the warehouse")}});
  EmbeddingTable table = testing::TableBuilder(10)
                             .axis("what provides something?", 0)
                             .axis("what does something provide?", 1)
                             .axis("what stores something?", 2)
                             .axis("The mitochondria", 3)
                             .axis("energy", 4)
                             .axis("the vacuole", 5)
                             .axis("The generators", 6)
                             .axis("electricity", 7)
                             .axis("the warehouse", 8)
                             .add("provide", {0, 0, 0, 0, 0, 0, 0, 0, 0, 1})
                             .add("store", {0, 0, 0, 0, 0, 0, 0, 0, 0.6, 0.8})
                             .build();
  const ClusteringConfig separate{0.5, Linkage::kAverage};
  const auto b = cluster_entities(base, table, separate);
  const auto t = cluster_entities(target, table, separate);
  for (double alpha : {1.0, 0.0, 0.75}) {
    SimilarityConfig cfg;
    cfg.relation_bonus_alpha = alpha;
    const SimilarityMatrix before = score_pairs(b, t, table, cfg);
    const SimilarityMatrix after = apply_relation_bonus(before, b, t, cfg);
    for (std::size_t i = 0; i < after.rows(); ++i) {
      for (std::size_t j = 0; j < after.cols(); ++j) {
        const bool related = i == j && i < 2;
        const double want = before.total(i, j) + (related ? alpha : 0.0);
        if (after.total(i, j) != want)
          o.fail("alpha " + fmt(alpha) + ": cell (" + std::to_string(i) + "," +
                 std::to_string(j) + ") total " + fmt(after.total(i, j)));
      }
    }
  }
  if (o.pass) o.detail = "+alpha on (mitochondria,generators) and (energy,electricity) only";
  return o;
}

// --- ranking formula ----------------------------------------------------------------

Outcome ranking_formula() {
  Outcome o;
  const auto t0 = Clock::now();
  auto mapping = [](std::vector<double> totals) {
    Mapping m;
    for (std::size_t i = 0; i < totals.size(); ++i)
      m.pairs.push_back({int(i), int(i), totals[i], 0.0, {}, {}});
    return m;
  };
  if (median_total(mapping({4})) != 4.0 || analogy_score(mapping({4})) != 4.0)
    o.fail("totals {4}");
  if (median_total(mapping({2, 4, 6})) != 4.0 || analogy_score(mapping({2, 4, 6})) != 12.0)
    o.fail("totals {2,4,6}");
  if (median_total(mapping({1, 3})) != 2.0) o.fail("totals {1,3}");

  const auto dir = testing::data_dir() / "planted";
  const auto ranking = mine(load_corpus(dir / "docs"), load_embeddings(dir / "embeddings.jsonl"),
                            EngineConfig{});
  if (ranking.size() != 10) o.fail("expected 10 pairs");
  else if (ranking[0].base_doc != "doc_b_heart" || ranking[0].target_doc != "doc_d_pump")
    o.fail("top pair is " + ranking[0].base_doc + " x " + ranking[0].target_doc);
  else if (!(ranking[0].analogy_score > ranking[1].analogy_score))
    o.fail("planted pair is tied");
  const double secs = seconds_since(t0);
  if (secs >= 30.0) o.fail("took " + fmt(secs) + " s");
  if (o.pass)
    o.detail = "planted pair first with score " + format_double(ranking[0].analogy_score) +
               ", " + fmt(secs) + " s";
  return o;
}

// --- metrics ---------------------------------------------------------------------------

Outcome metric_suite() {
  Outcome o;
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  int n_rank = 0, n_prf = 0;
  for (const auto& c : testing::rank_cases()) {
    ++n_rank;
    if (!near(precision_at_k(c.labels, c.k), c.precision) ||
        !near(average_precision_at_k(c.labels, c.k), c.average_precision) ||
        !near(ndcg_at_k(c.labels, c.k), c.ndcg))
      o.fail("ranking case " + std::to_string(n_rank));
  }
  for (const auto& c : testing::prf_cases()) {
    ++n_prf;
    const Prf got = mapping_prf(c.pred, c.gold);
    if (!near(got.precision, c.expected.precision) || !near(got.recall, c.expected.recall) ||
        !near(got.f1, c.expected.f1))
      o.fail("mapping case " + c.name);
  }
  if (o.pass)
    o.detail = std::to_string(n_rank) + " ranking cases, " + std::to_string(n_prf) +
               " mapping cases";
  return o;
}

// --- end to end ------------------------------------------------------------------------

bool contains(const SpanSet& spans, const std::string& s) { return spans_match(spans, {s}); }

Outcome end_to_end() {
  Outcome o;
  const auto dir = testing::data_dir() / "cell_factory";
  const EngineConfig cfg;
  const DocumentExtraction cell = load_document(dir / "cell.json");
  const DocumentExtraction factory = load_document(dir / "factory.json");
  std::set<std::string> keys = required_keys_after_filter(cell, cfg.filter);
  keys.merge(required_keys_after_filter(factory, cfg.filter));
  const EmbeddingTable emb = load_embeddings(dir / "embeddings.jsonl", keys);
  const auto b = prepare_document(cell, emb, cfg).clustered;
  const auto t = prepare_document(factory, emb, cfg).clustered;
  const auto analysis = analyze_pair(b, t, emb, cfg);
  if (analysis.mappings.empty()) {
    o.fail("no mapping");
    return o;
  }
  const Mapping& top = analysis.mappings.front();
  bool cell_factory = false, mito_gen = false;
  std::size_t cell_matches = 0;
  for (const MappedPair& p : top.pairs) {
    const SpanSet& bs = b.clusters[p.base].spans;
    const SpanSet& ts = t.clusters[p.target].spans;
    if (contains(bs, "the cell") && contains(ts, "the factory")) {
      cell_factory = true;
      cell_matches = p.matches.size();
    }
    if (contains(bs, "The mitochondria") && contains(ts, "the electrical generators"))
      mito_gen = true;
  }
  if (!cell_factory) o.fail("top-1 lacks (cell, factory)");
  if (!mito_gen) o.fail("top-1 lacks (mitochondria, generators)");
  if (cell_factory && cell_matches < 3)
    o.fail("(cell, factory) has " + std::to_string(cell_matches) + " matches");
  if (o.pass)
    o.detail = std::to_string(top.pairs.size()) + " pairs, (cell, factory) with " +
               std::to_string(cell_matches) + " matches";
  return o;
}

// --- determinism -------------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const auto dir = testing::data_dir() / "planted";
  const EmbeddingTable emb = load_embeddings(dir / "embeddings.jsonl");
  MineOptions opts;
  opts.jobs = 4;
  const std::string first =
      ranking_to_csv(mine(load_corpus(dir / "docs"), emb, EngineConfig{}, opts), "run");
  const std::string second =
      ranking_to_csv(mine(load_corpus(dir / "docs"), emb, EngineConfig{}, opts), "run");
  if (first != second) o.fail("outputs differ");
  if (o.pass) o.detail = std::to_string(first.size()) + " identical bytes";
  return o;
}

}  // namespace
}  // namespace analogy

int main() {
  using analogy::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"filter conformance", analogy::filter_conformance},
      {"clustering oracle", analogy::clustering_oracle},
      {"beam vs brute force", analogy::beam_vs_brute_force},
      {"swap symmetry", analogy::swap_symmetry},
      {"relation bonus", analogy::relation_bonus},
      {"ranking formula", analogy::ranking_formula},
      {"metric unit suite", analogy::metric_suite},
      {"end-to-end fixture", analogy::end_to_end},
      {"mine determinism", analogy::determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
