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

// Beam search for consistent (injective) entity mappings, and their rendering.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "analogy/entity_clustering.h"
#include "analogy/similarity.h"

namespace analogy {

struct BeamConfig {
  int beam_width = 7;
  int top_k = 3;

  void validate() const;
};

// Dense base x target matrix of cell totals.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static ScoreMatrix totals_of(const SimilarityMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t b, std::size_t t) const { return v_[b * cols_ + t]; }
  ScoreMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

using PairSet = std::vector<std::pair<int, int>>;  // sorted (base, target)

struct Assignment {
  PairSet pairs;
  double score = 0.0;
};

// Sum of the pairs' totals, accumulated in ascending value order so the
// result does not depend on pair order or on transposition.
double assignment_score(const ScoreMatrix& scores, const PairSet& pairs);

// Beam search over partial injective assignments. Starting from the empty
// assignment, every frontier state is extended by every admissible pair
// (positive total, row and column unused); the beam_width best distinct pair
// sets survive each step. States that admit no extension are complete. The
// top_k complete states are returned by descending score, ties broken by the
// lexicographically smaller pair set.
std::vector<Assignment> beam_search(const ScoreMatrix& scores, const BeamConfig& cfg);

struct MappedPair {
  int base = 0;
  int target = 0;
  double total = 0.0;
  double bonus = 0.0;
  std::vector<QuestionMatch> matches;
  std::vector<RelationPartner> relation_partners;
};

struct Mapping {
  std::vector<MappedPair> pairs;  // sorted by (base, target)
  double score = 0.0;

  PairSet pair_set() const;
};

// beam_search on the cell totals, with each pair's justification attached.
std::vector<Mapping> find_mappings(const SimilarityMatrix& cells, const BeamConfig& cfg);

// {"score", "pairs": [{"base": {"id", "spans"}, "target": {...}, "total",
//   "bonus", "matches": [{"base_question", "target_question", "score"}]}]}
nlohmann::json mapping_to_json(const Mapping& m, const ClusteredDocument& base,
                               const ClusteredDocument& target);

struct GraphNode {
  std::string id;
  std::string label;
  bool is_base = true;
};

struct GraphEdge {
  std::string from;
  std::string to;
  double weight = 0.0;
  std::vector<std::string> annotations;  // "base question / target question"
};

struct MappingGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

// Bipartite graph of a mapping: one node per mapped cluster labeled with up
// to `limit_spans` spans, one edge per pair weighted by the cell total.
// Throws ValidationError for a pair naming a cluster that does not exist.
MappingGraph render_mapping(const Mapping& m, const ClusteredDocument& base,
                            const ClusteredDocument& target, int limit_spans = 2);

std::string to_dot(const MappingGraph& graph);

}  // namespace analogy
