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

#include "analogy/similarity.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "analogy/errors.h"

namespace analogy {
namespace {

// One comparable item of an entity: the string whose embedding is compared
// and the record it was taken from.
struct Entry {
  int key = 0;  // index into the document's unique compared strings
  RecordRef ref;
};

struct EntityEntries {
  std::vector<std::string> keys;               // unique compared strings
  std::vector<std::vector<Entry>> by_cluster;  // per cluster, member order
};

EntityEntries collect_entries(const ClusteredDocument& doc, const SimilarityConfig& cfg) {
  EntityEntries out;
  std::unordered_map<std::string, int> key_index;
  out.by_cluster.resize(doc.clusters.size());
  for (const EntityCluster& c : doc.clusters) {
    std::set<int> seen;
    for (const RecordRef& ref : c.member_records) {
      const SrlRecord& r = doc.record(ref);
      std::string text = canonical_key(
          cfg.mode == SimilarityMode::kFmq ? r.question : r.verb);
      auto [it, inserted] = key_index.emplace(text, static_cast<int>(out.keys.size()));
      if (inserted) out.keys.push_back(std::move(text));
      if (cfg.dedupe_questions && !seen.insert(it->second).second) continue;
      out.by_cluster[c.cluster_id].push_back({it->second, ref});
    }
  }
  return out;
}

using RelationKey = std::tuple<int, int, std::string, std::string,
                               std::pair<int, int>, std::pair<int, int>>;

}  // namespace

std::string_view to_string(SimilarityMode mode) {
  return mode == SimilarityMode::kFmq ? "fmq" : "fmv";
}

SimilarityMode mode_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "fmq") return SimilarityMode::kFmq;
  if (lower == "fmv") return SimilarityMode::kFmv;
  throw ConfigError("unknown similarity mode \"" + std::string(name) +
                    "\" (expected fmq or fmv)");
}

void SimilarityConfig::validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(question_cos_threshold))
    throw ConfigError("similarity.question_cos_threshold must lie in [0, 1]");
  if (!unit(verb_cos_threshold))
    throw ConfigError("similarity.verb_cos_threshold must lie in [0, 1]");
  if (!(relation_bonus_alpha >= 0.0))
    throw ConfigError("similarity.relation_bonus_alpha must be >= 0");
}

SimilarityMatrix::SimilarityMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols) {
  for (std::size_t b = 0; b < rows; ++b) {
    for (std::size_t t = 0; t < cols; ++t) {
      at(b, t).base_cluster = static_cast<int>(b);
      at(b, t).target_cluster = static_cast<int>(t);
    }
  }
}

SimilarityMatrix score_pairs(const ClusteredDocument& base,
                             const ClusteredDocument& target,
                             const EmbeddingTable& embeddings,
                             const SimilarityConfig& cfg) {
  cfg.validate();
  const EntityEntries be = collect_entries(base, cfg);
  const EntityEntries te = collect_entries(target, cfg);

  std::vector<std::span<const double>> bvec, tvec;
  for (const auto& k : be.keys) bvec.push_back(embeddings.at(k));
  for (const auto& k : te.keys) tvec.push_back(embeddings.at(k));
  std::vector<double> cos(be.keys.size() * te.keys.size());
  for (std::size_t i = 0; i < be.keys.size(); ++i)
    for (std::size_t j = 0; j < te.keys.size(); ++j)
      cos[i * te.keys.size() + j] = cosine(bvec[i], tvec[j]);

  const double threshold = cfg.threshold();
  SimilarityMatrix out(base.clusters.size(), target.clusters.size());
  std::vector<double> scores;
  for (std::size_t b = 0; b < out.rows(); ++b) {
    for (std::size_t t = 0; t < out.cols(); ++t) {
      SimilarityCell& cell = out.at(b, t);
      scores.clear();
      for (const Entry& eb : be.by_cluster[b]) {
        for (const Entry& et : te.by_cluster[t]) {
          const double c = cos[eb.key * te.keys.size() + et.key];
          if (!(c >= threshold)) continue;
          const SrlRecord& rb = base.record(eb.ref);
          const SrlRecord& rt = target.record(et.ref);
          cell.matches.push_back({eb.ref, et.ref, static_cast<int>(b),
                                  static_cast<int>(t), rb.question, rt.question,
                                  canonical_key(rb.verb), canonical_key(rt.verb), c});
          scores.push_back(c);
        }
      }
      // Summing in sorted order makes the cell total independent of which
      // document is the base.
      std::sort(scores.begin(), scores.end());
      for (double s : scores) cell.base_score += s;
    }
  }
  return out;
}

SimilarityMatrix apply_relation_bonus(const SimilarityMatrix& cells,
                                      const ClusteredDocument& base,
                                      const ClusteredDocument& target,
                                      const SimilarityConfig& cfg) {
  cfg.validate();
  if (cells.rows() != base.clusters.size() || cells.cols() != target.clusters.size())
    throw ValidationError("similarity matrix shape does not match the documents");
  SimilarityMatrix out = cells;

  // (base sentence, target sentence, base verb, target verb) -> matches
  std::map<std::tuple<int, int, std::string, std::string>,
           std::vector<const QuestionMatch*>>
      groups;
  for (std::size_t b = 0; b < cells.rows(); ++b)
    for (std::size_t t = 0; t < cells.cols(); ++t)
      for (const QuestionMatch& m : cells.at(b, t).matches)
        groups[{m.base_ref.sentence, m.target_ref.sentence, m.base_verb, m.target_verb}]
            .push_back(&m);

  std::set<RelationKey> applied;
  for (const auto& [key, matches] : groups) {
    const auto& [bs, ts, bverb, tverb] = key;
    if (cfg.require_identical_verbs && bverb != tverb) continue;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      for (std::size_t j = i + 1; j < matches.size(); ++j) {
        const QuestionMatch& m1 = *matches[i];
        const QuestionMatch& m2 = *matches[j];
        if (m1.base_cluster == m2.base_cluster || m1.target_cluster == m2.target_cluster)
          continue;
        auto c1 = std::make_pair(m1.base_cluster, m1.target_cluster);
        auto c2 = std::make_pair(m2.base_cluster, m2.target_cluster);
        if (c2 < c1) std::swap(c1, c2);
        if (!applied.insert({bs, ts, bverb, tverb, c1, c2}).second) continue;

        SimilarityCell& x = out.at(c1.first, c1.second);
        SimilarityCell& y = out.at(c2.first, c2.second);
        x.bonus += cfg.relation_bonus_alpha;
        y.bonus += cfg.relation_bonus_alpha;
        x.relation_partners.push_back({c2.first, c2.second, bs, ts, bverb, tverb});
        y.relation_partners.push_back({c1.first, c1.second, bs, ts, bverb, tverb});
      }
    }
  }
  return out;
}

SimilarityMatrix similarity_matrix(const ClusteredDocument& base,
                                   const ClusteredDocument& target,
                                   const EmbeddingTable& embeddings,
                                   const SimilarityConfig& cfg) {
  return apply_relation_bonus(score_pairs(base, target, embeddings, cfg), base,
                              target, cfg);
}

std::string similarity_to_json(const SimilarityMatrix& matrix,
                               const ClusteredDocument& base,
                               const ClusteredDocument& target,
                               const SimilarityConfig& cfg) {
  using nlohmann::json;
  json cells = json::array();
  for (std::size_t b = 0; b < matrix.rows(); ++b) {
    for (std::size_t t = 0; t < matrix.cols(); ++t) {
      const SimilarityCell& c = matrix.at(b, t);
      if (c.matches.empty() && c.bonus == 0.0) continue;
      json matches = json::array();
      for (const QuestionMatch& m : c.matches)
        matches.push_back({{"base_question", m.base_question},
                           {"target_question", m.target_question},
                           {"base_verb", m.base_verb},
                           {"target_verb", m.target_verb},
                           {"base_sentence", m.base_ref.sentence},
                           {"target_sentence", m.target_ref.sentence},
                           {"score", m.score}});
      json relations = json::array();
      for (const RelationPartner& p : c.relation_partners)
        relations.push_back({{"partner_base", p.partner_base},
                             {"partner_target", p.partner_target},
                             {"base_sentence", p.base_sentence},
                             {"target_sentence", p.target_sentence},
                             {"base_verb", p.base_verb},
                             {"target_verb", p.target_verb}});
      cells.push_back({{"base", {{"id", b}, {"spans", base.clusters[b].spans}}},
                       {"target", {{"id", t}, {"spans", target.clusters[t].spans}}},
                       {"base_score", c.base_score},
                       {"bonus", c.bonus},
                       {"total", c.total()},
                       {"matches", std::move(matches)},
                       {"relations", std::move(relations)}});
    }
  }
  json out{{"base_doc", base.document.doc_id},
           {"target_doc", target.document.doc_id},
           {"mode", to_string(cfg.mode)},
           {"cells", std::move(cells)}};
  return out.dump(2) + "\n";
}

}  // namespace analogy
