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

// Ranking metrics over analogy labels, and mapping precision/recall against
// gold entity mappings.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "analogy/entity_clustering.h"
#include "analogy/mapper.h"
#include "analogy/miner.h"

namespace analogy {

enum class AnalogyLabel { kNot, kSub, kSelf, kClose, kFar };

// not=0, sub=1, self=2, close=3, far=4.
int gain(AnalogyLabel label);
std::string_view to_string(AnalogyLabel label);
// Throws ParseError.
AnalogyLabel label_from_string(std::string_view name);

// Labels keyed by unordered document pair.
class LabelSet {
 public:
  void add(const std::string& a, const std::string& b, AnalogyLabel label);
  std::optional<AnalogyLabel> find(const std::string& a, const std::string& b) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, AnalogyLabel> labels_;
};

// base_doc,target_doc,label with an optional header row. Throws ParseError.
LabelSet parse_labels_csv(std::string_view text);

// Labels of the first min(k, size) ranked pairs. Throws ValidationError for
// k < 1 or an unlabeled pair in the top k.
std::vector<AnalogyLabel> top_k_labels(const std::vector<RankedPair>& ranking,
                                       const LabelSet& labels, int k);

// The label sequences are in rank order; only the first k entries count.
// Relevance for P and AP is label != not. P@k divides by k. AP@k averages
// precision at each relevant rank over the relevant pairs in the top k (0 if
// none). NDCG@k uses linear gains with 1/log2(rank + 1) discounts,
// normalized by the ideal ordering of the same top-k labels (0 if all gains
// are 0).
double precision_at_k(std::span<const AnalogyLabel> ranked, int k);
double average_precision_at_k(std::span<const AnalogyLabel> ranked, int k);
double ndcg_at_k(std::span<const AnalogyLabel> ranked, int k);

double precision_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels, int k);
double average_precision_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels,
                              int k);
double ndcg_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels, int k);

// One side of an entity pair, identified by its surface spans.
using SpanSet = std::vector<std::string>;

struct EntityPair {
  SpanSet base;
  SpanSet target;
};

struct GoldMapping {
  std::vector<EntityPair> pairs;

  // Throws ValidationError if two pairs share a base or a target entity.
  void validate() const;
};

using PredictedMapping = std::vector<EntityPair>;

// Lowercased, whitespace-collapsed.
std::string resolver_key(std::string_view span);
// True iff the two span sets share a span after resolver_key.
bool spans_match(const SpanSet& a, const SpanSet& b);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// A predicted pair is correct if its base spans overlap a gold pair's base
// and its target spans overlap the same gold pair's target. Each gold pair
// validates at most one prediction (maximum matching). Empty prediction gives
// P = R = F1 = 0.
Prf mapping_prf(const PredictedMapping& pred, const GoldMapping& gold);

// Best-F1 solution among the first k predictions; the earliest wins ties.
Prf mapping_prf_at_k(const std::vector<PredictedMapping>& ranked, const GoldMapping& gold,
                     int k);

PredictedMapping to_predicted(const Mapping& m, const ClusteredDocument& base,
                              const ClusteredDocument& target);

// Accepts a single mapping object ({"pairs": [...]}) or a `map` output file
// ({"mappings": [...]}, first mapping taken). Throws ParseError.
GoldMapping parse_gold_json(std::string_view text);
// Accepts a `map` output file, a single mapping, or a JSON array of mappings.
std::vector<PredictedMapping> parse_predictions_json(std::string_view text);

}  // namespace analogy
