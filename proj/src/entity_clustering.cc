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

#include "analogy/entity_clustering.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "analogy/errors.h"

namespace analogy {
namespace {

double linkage_distance(const DistanceMatrix& d, const std::vector<int>& a,
                        const std::vector<int>& b, Linkage linkage) {
  switch (linkage) {
    case Linkage::kSingle: {
      double best = std::numeric_limits<double>::infinity();
      for (int i : a)
        for (int j : b) best = std::min(best, d(i, j));
      return best;
    }
    case Linkage::kComplete: {
      double worst = -std::numeric_limits<double>::infinity();
      for (int i : a)
        for (int j : b) worst = std::max(worst, d(i, j));
      return worst;
    }
    case Linkage::kAverage: {
      double sum = 0.0;
      for (int i : a)
        for (int j : b) sum += d(i, j);
      return sum / static_cast<double>(a.size() * b.size());
    }
  }
  return 0.0;
}

bool shorter_span(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::kAverage: return "average";
    case Linkage::kComplete: return "complete";
    case Linkage::kSingle: return "single";
  }
  return "average";
}

Linkage linkage_from_string(std::string_view name) {
  if (name == "average") return Linkage::kAverage;
  if (name == "complete") return Linkage::kComplete;
  if (name == "single") return Linkage::kSingle;
  throw ConfigError("unknown linkage \"" + std::string(name) + "\"");
}

void ClusteringConfig::validate() const {
  if (!(linkage_distance_threshold > 0.0))
    throw ConfigError("clustering.linkage_distance_threshold must be > 0");
}

std::vector<int> agglomerate(const DistanceMatrix& distances, double threshold,
                             Linkage linkage) {
  const std::size_t n = distances.size();
  // members[k] is sorted; a cluster's id is members[k].front().
  std::vector<std::vector<int>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};
  std::vector<int> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = static_cast<int>(i);

  // Cached linkage between active clusters, indexed by cluster id.
  DistanceMatrix link(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) link.set(i, j, distances(i, j));

  while (active.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    // `active` stays sorted by id, so the first minimum found is the
    // lexicographically smallest pair.
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double dist = link(active[a], active[b]);
        if (dist < best) {
          best = dist;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (!(best <= threshold)) break;

    const int keep = active[best_a];
    const int gone = active[best_b];
    auto& merged = members[keep];
    merged.insert(merged.end(), members[gone].begin(), members[gone].end());
    std::sort(merged.begin(), merged.end());
    members[gone].clear();
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    for (int other : active) {
      if (other == keep) continue;
      link.set(keep, other, linkage_distance(distances, merged, members[other], linkage));
    }
  }

  std::vector<int> labels(n, -1);
  for (std::size_t k = 0; k < active.size(); ++k)
    for (int item : members[active[k]]) labels[item] = static_cast<int>(k);
  return labels;
}

ClusteredDocument cluster_entities(const DocumentExtraction& filtered,
                                   const EmbeddingTable& embeddings,
                                   const ClusteringConfig& cfg) {
  cfg.validate();
  ClusteredDocument out;
  out.document = filtered;

  std::vector<std::string> spans;
  std::unordered_map<std::string, int> span_index;
  std::vector<std::vector<int>> span_of(filtered.sentences.size());
  for (std::size_t s = 0; s < filtered.sentences.size(); ++s) {
    for (const SrlRecord& r : filtered.sentences[s].records) {
      std::string key = canonical_key(r.answer.text);
      auto [it, inserted] = span_index.emplace(key, static_cast<int>(spans.size()));
      if (inserted) spans.push_back(std::move(key));
      span_of[s].push_back(it->second);
    }
  }

  std::vector<std::span<const double>> vecs;
  vecs.reserve(spans.size());
  for (const std::string& span : spans) vecs.push_back(embeddings.at(span));

  DistanceMatrix distances(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size(); ++j)
      distances.set(i, j, std::max(0.0, 1.0 - cosine(vecs[i], vecs[j])));

  const std::vector<int> labels =
      agglomerate(distances, cfg.linkage_distance_threshold, cfg.linkage);
  const int num_clusters =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

  out.clusters.resize(num_clusters);
  for (int c = 0; c < num_clusters; ++c) out.clusters[c].cluster_id = c;
  for (std::size_t i = 0; i < spans.size(); ++i)
    out.clusters[labels[i]].spans.push_back(spans[i]);
  for (EntityCluster& c : out.clusters)
    c.representative = *std::min_element(c.spans.begin(), c.spans.end(), shorter_span);

  out.cluster_of.resize(filtered.sentences.size());
  for (std::size_t s = 0; s < filtered.sentences.size(); ++s) {
    for (std::size_t r = 0; r < span_of[s].size(); ++r) {
      const int c = labels[span_of[s][r]];
      out.cluster_of[s].push_back(c);
      out.clusters[c].member_records.push_back(
          {static_cast<int>(s), static_cast<int>(r)});
    }
  }
  return out;
}

std::string clusters_to_text(const ClusteredDocument& doc) {
  std::string out;
  for (const EntityCluster& c : doc.clusters) {
    out += std::to_string(c.cluster_id + 1) + ")";
    for (std::size_t i = 0; i < c.spans.size(); ++i) {
      out += (i == 0 ? " '" : ", '");
      out += c.spans[i];
      out += "'";
    }
    out += ".\n";
  }
  return out;
}

}  // namespace analogy
