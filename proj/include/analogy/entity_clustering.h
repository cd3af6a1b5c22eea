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

// Agglomerative clustering of answer spans into entities.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "analogy/interchange.h"

namespace analogy {

enum class Linkage { kAverage, kComplete, kSingle };

std::string_view to_string(Linkage linkage);
// Throws ConfigError.
Linkage linkage_from_string(std::string_view name);

struct ClusteringConfig {
  // Merging stops once the closest pair of clusters is farther apart than this.
  double linkage_distance_threshold = 1.0;
  Linkage linkage = Linkage::kAverage;

  void validate() const;
};

// Dense symmetric matrix with a zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double d) {
    d_[i * n_ + j] = d;
    d_[j * n_ + i] = d;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

// Bottom-up clustering of items 0..n-1. Repeatedly merges the two clusters
// with the smallest linkage distance while that distance is <= threshold.
// Equal distances go to the lexicographically smallest (id, id) pair, where a
// cluster's id is its smallest member index. Linkage distances are always
// recomputed from the item distances, never updated incrementally.
//
// Returns one label per item; labels are 0-based and numbered by the smallest
// member index, so item 0 is always in cluster 0.
std::vector<int> agglomerate(const DistanceMatrix& distances, double threshold,
                             Linkage linkage);

struct EntityCluster {
  int cluster_id = 0;
  // Distinct canonical span texts, in order of first appearance.
  std::vector<std::string> spans;
  // Shortest span; ties broken lexicographically.
  std::string representative;
  std::vector<RecordRef> member_records;
};

struct ClusteredDocument {
  DocumentExtraction document;  // already filtered
  std::vector<EntityCluster> clusters;
  // cluster_of[sentence][record] -> cluster_id
  std::vector<std::vector<int>> cluster_of;

  const SrlRecord& record(RecordRef ref) const {
    return document.sentences[ref.sentence].records[ref.record];
  }
  int cluster_for(RecordRef ref) const {
    return cluster_of[ref.sentence][ref.record];
  }
};

// Clusters the distinct answer texts of `filtered` using 1 - cosine of their
// embeddings. Throws MissingKeyError if a span has no embedding.
ClusteredDocument cluster_entities(const DocumentExtraction& filtered,
                                   const EmbeddingTable& embeddings,
                                   const ClusteringConfig& cfg);

// Numbered lists of quoted spans, one cluster per line:
//   1) 'the plasma membrane', 'plasma membrane'.
std::string clusters_to_text(const ClusteredDocument& doc);

}  // namespace analogy
