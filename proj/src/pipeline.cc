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

#include "analogy/pipeline.h"

namespace analogy {

PreparedDocument prepare_document(const DocumentExtraction& doc,
                                  const EmbeddingTable& embeddings,
                                  const EngineConfig& cfg) {
  FilterResult f = filter_document(doc, cfg.filter);
  return {std::move(f.rejections), cluster_entities(f.document, embeddings, cfg.clustering)};
}

PairAnalysis analyze_pair(const ClusteredDocument& base, const ClusteredDocument& target,
                          const EmbeddingTable& embeddings, const EngineConfig& cfg) {
  PairAnalysis out;
  out.cells = similarity_matrix(base, target, embeddings, cfg.similarity);
  out.mappings = find_mappings(out.cells, cfg.beam);
  return out;
}

std::set<std::string> required_keys_after_filter(const DocumentExtraction& doc,
                                                 const FilterConfig& cfg) {
  return required_keys(filter_document(doc, cfg).document);
}

}  // namespace analogy
