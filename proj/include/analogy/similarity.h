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

// Entity-to-entity similarity from the questions (FMQ) or verbs (FMV) the
// entities answer, plus the complete-relation bonus.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "analogy/entity_clustering.h"
#include "analogy/interchange.h"

namespace analogy {

enum class SimilarityMode { kFmq, kFmv };

std::string_view to_string(SimilarityMode mode);
// Accepts "fmq" / "fmv", case-insensitively. Throws ConfigError.
SimilarityMode mode_from_string(std::string_view name);

struct SimilarityConfig {
  SimilarityMode mode = SimilarityMode::kFmq;
  double question_cos_threshold = 0.7;
  double verb_cos_threshold = 0.5;
  double relation_bonus_alpha = 1.0;
  // Pair each distinct compared string once per entity.
  bool dedupe_questions = true;
  // Stricter relation test: the base verb must equal the target verb.
  bool require_identical_verbs = false;

  double threshold() const {
    return mode == SimilarityMode::kFmq ? question_cos_threshold : verb_cos_threshold;
  }
  void validate() const;
};

struct QuestionMatch {
  RecordRef base_ref;
  RecordRef target_ref;
  int base_cluster = 0;
  int target_cluster = 0;
  std::string base_question;
  std::string target_question;
  std::string base_verb;
  std::string target_verb;
  double score = 0.0;  // cosine of the compared embeddings
};

struct RelationPartner {
  int partner_base = 0;
  int partner_target = 0;
  int base_sentence = 0;
  int target_sentence = 0;
  std::string base_verb;
  std::string target_verb;
};

struct SimilarityCell {
  int base_cluster = 0;
  int target_cluster = 0;
  double base_score = 0.0;
  double bonus = 0.0;
  std::vector<QuestionMatch> matches;
  std::vector<RelationPartner> relation_partners;

  double total() const { return base_score + bonus; }
};

// Row-major base x target grid of cells.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  SimilarityCell& at(std::size_t b, std::size_t t) { return cells_[b * cols_ + t]; }
  const SimilarityCell& at(std::size_t b, std::size_t t) const {
    return cells_[b * cols_ + t];
  }
  double total(std::size_t b, std::size_t t) const { return at(b, t).total(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SimilarityCell> cells_;
};

// Sums, for every base/target cluster pair, the cosines between their
// associated questions (or verbs in FMV mode) that reach the mode's threshold.
// Throws MissingKeyError if a compared string has no embedding.
SimilarityMatrix score_pairs(const ClusteredDocument& base,
                             const ClusteredDocument& target,
                             const EmbeddingTable& embeddings,
                             const SimilarityConfig& cfg);

// Adds alpha to both cells of every complete relation: two matches that share
// the base sentence, the target sentence, the base verb and the target verb,
// and link distinct base clusters to distinct target clusters. Each relation
// is counted once no matter how many match pairs realize it.
SimilarityMatrix apply_relation_bonus(const SimilarityMatrix& cells,
                                      const ClusteredDocument& base,
                                      const ClusteredDocument& target,
                                      const SimilarityConfig& cfg);

// score_pairs followed by apply_relation_bonus.
SimilarityMatrix similarity_matrix(const ClusteredDocument& base,
                                   const ClusteredDocument& target,
                                   const EmbeddingTable& embeddings,
                                   const SimilarityConfig& cfg);

// Non-empty cells with their match lists, as a JSON document.
std::string similarity_to_json(const SimilarityMatrix& matrix,
                               const ClusteredDocument& base,
                               const ClusteredDocument& target,
                               const SimilarityConfig& cfg);

}  // namespace analogy
