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

#include "analogy/mapper.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "analogy/errors.h"

namespace analogy {
namespace {

struct State {
  PairSet pairs;
  double score = 0.0;
};

bool better(const State& a, const State& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.pairs < b.pairs;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string format_weight(double w) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << w;
  return os.str();
}

}  // namespace

void BeamConfig::validate() const {
  if (beam_width < 1) throw ConfigError("beam.beam_width must be positive");
  if (top_k < 1) throw ConfigError("beam.top_k must be positive");
  if (top_k > beam_width) throw ConfigError("beam.top_k must not exceed beam.beam_width");
}

ScoreMatrix::ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), v_(std::move(values)) {
  if (v_.size() != rows * cols)
    throw DimensionError("score matrix needs rows * cols values");
}

ScoreMatrix ScoreMatrix::totals_of(const SimilarityMatrix& m) {
  std::vector<double> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t b = 0; b < m.rows(); ++b)
    for (std::size_t t = 0; t < m.cols(); ++t) v.push_back(m.total(b, t));
  return ScoreMatrix(m.rows(), m.cols(), std::move(v));
}

ScoreMatrix ScoreMatrix::transposed() const {
  std::vector<double> v(v_.size());
  for (std::size_t b = 0; b < rows_; ++b)
    for (std::size_t t = 0; t < cols_; ++t) v[t * rows_ + b] = (*this)(b, t);
  return ScoreMatrix(cols_, rows_, std::move(v));
}

double assignment_score(const ScoreMatrix& scores, const PairSet& pairs) {
  std::vector<double> values;
  values.reserve(pairs.size());
  for (const auto& [b, t] : pairs) values.push_back(scores(b, t));
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

std::vector<Assignment> beam_search(const ScoreMatrix& scores, const BeamConfig& cfg) {
  cfg.validate();

  // Admissible pairs, strongest first; ties by (base, target).
  std::vector<std::pair<int, int>> admissible;
  for (std::size_t b = 0; b < scores.rows(); ++b)
    for (std::size_t t = 0; t < scores.cols(); ++t)
      if (scores(b, t) > 0.0) admissible.emplace_back(static_cast<int>(b), static_cast<int>(t));
  std::stable_sort(admissible.begin(), admissible.end(), [&](const auto& x, const auto& y) {
    return scores(x.first, x.second) > scores(y.first, y.second);
  });

  std::vector<State> frontier{State{}};
  std::vector<State> complete;
  std::set<PairSet> complete_seen;
  std::vector<char> row_used(scores.rows()), col_used(scores.cols());

  while (!frontier.empty()) {
    std::vector<State> children;
    std::set<PairSet> seen;
    for (const State& s : frontier) {
      std::fill(row_used.begin(), row_used.end(), 0);
      std::fill(col_used.begin(), col_used.end(), 0);
      for (const auto& [b, t] : s.pairs) row_used[b] = col_used[t] = 1;
      bool extended = false;
      for (const auto& p : admissible) {
        if (row_used[p.first] || col_used[p.second]) continue;
        extended = true;
        PairSet next = s.pairs;
        next.insert(std::upper_bound(next.begin(), next.end(), p), p);
        if (!seen.insert(next).second) continue;
        const double score = assignment_score(scores, next);
        children.push_back({std::move(next), score});
      }
      if (!extended && complete_seen.insert(s.pairs).second) complete.push_back(s);
    }
    const std::size_t keep = std::min<std::size_t>(children.size(), cfg.beam_width);
    std::partial_sort(children.begin(), children.begin() + static_cast<std::ptrdiff_t>(keep),
                      children.end(), better);
    children.resize(keep);
    frontier = std::move(children);
  }

  std::sort(complete.begin(), complete.end(), better);
  if (complete.size() > static_cast<std::size_t>(cfg.top_k)) complete.resize(cfg.top_k);
  std::vector<Assignment> out;
  out.reserve(complete.size());
  for (State& s : complete) out.push_back({std::move(s.pairs), s.score});
  return out;
}

PairSet Mapping::pair_set() const {
  PairSet out;
  out.reserve(pairs.size());
  for (const MappedPair& p : pairs) out.emplace_back(p.base, p.target);
  return out;
}

std::vector<Mapping> find_mappings(const SimilarityMatrix& cells, const BeamConfig& cfg) {
  std::vector<Mapping> out;
  for (const Assignment& a : beam_search(ScoreMatrix::totals_of(cells), cfg)) {
    Mapping m;
    m.score = a.score;
    for (const auto& [b, t] : a.pairs) {
      const SimilarityCell& c = cells.at(b, t);
      m.pairs.push_back({b, t, c.total(), c.bonus, c.matches, c.relation_partners});
    }
    out.push_back(std::move(m));
  }
  return out;
}

nlohmann::json mapping_to_json(const Mapping& m, const ClusteredDocument& base,
                               const ClusteredDocument& target) {
  using nlohmann::json;
  json pairs = json::array();
  for (const MappedPair& p : m.pairs) {
    if (p.base < 0 || p.base >= static_cast<int>(base.clusters.size()) || p.target < 0 ||
        p.target >= static_cast<int>(target.clusters.size()))
      throw ValidationError("mapping references a cluster that does not exist");
    json matches = json::array();
    for (const QuestionMatch& q : p.matches)
      matches.push_back({{"base_question", q.base_question},
                         {"target_question", q.target_question},
                         {"score", q.score}});
    pairs.push_back({{"base", {{"id", p.base}, {"spans", base.clusters[p.base].spans}}},
                     {"target", {{"id", p.target}, {"spans", target.clusters[p.target].spans}}},
                     {"total", p.total},
                     {"bonus", p.bonus},
                     {"matches", std::move(matches)}});
  }
  return json{{"score", m.score}, {"pairs", std::move(pairs)}};
}

MappingGraph render_mapping(const Mapping& m, const ClusteredDocument& base,
                            const ClusteredDocument& target, int limit_spans) {
  auto label = [limit_spans](const EntityCluster& c) {
    std::vector<std::string> shown{c.representative};
    for (const std::string& s : c.spans) {
      if (static_cast<int>(shown.size()) >= limit_spans) break;
      if (s != c.representative) shown.push_back(s);
    }
    if (limit_spans < 1) shown.clear();
    std::string out;
    for (std::size_t i = 0; i < shown.size(); ++i) out += (i ? "\n" : "") + shown[i];
    return out;
  };

  MappingGraph g;
  for (const MappedPair& p : m.pairs) {
    if (p.base < 0 || p.base >= static_cast<int>(base.clusters.size()))
      throw ValidationError("mapping references missing base cluster " + std::to_string(p.base));
    if (p.target < 0 || p.target >= static_cast<int>(target.clusters.size()))
      throw ValidationError("mapping references missing target cluster " +
                            std::to_string(p.target));
    const std::string bid = "b" + std::to_string(p.base);
    const std::string tid = "t" + std::to_string(p.target);
    g.nodes.push_back({bid, label(base.clusters[p.base]), true});
    g.nodes.push_back({tid, label(target.clusters[p.target]), false});
    GraphEdge e{bid, tid, p.total, {}};
    for (const QuestionMatch& q : p.matches)
      e.annotations.push_back(q.base_question + " / " + q.target_question);
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::string to_dot(const MappingGraph& graph) {
  std::string out = "graph mapping {\n  rankdir=LR;\n  node [shape=box];\n";
  for (const GraphNode& n : graph.nodes) {
    std::string escaped;
    for (char c : dot_escape(n.label)) {
      if (c == '\n') escaped += "\\n";
      else escaped.push_back(c);
    }
    out += "  " + n.id + " [label=\"" + escaped + "\", group=" +
           (n.is_base ? "base" : "target") + "];\n";
  }
  for (const GraphEdge& e : graph.edges) {
    std::string label = format_weight(e.weight);
    for (const std::string& a : e.annotations) label += "\\n" + dot_escape(a);
    out += "  " + e.from + " -- " + e.to + " [penwidth=" + format_weight(1.0 + e.weight) +
           ", weight=" + format_weight(e.weight) + ", label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace analogy
