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

// filter -> cluster -> score -> bonus -> beam search, for one document pair.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "analogy/engine_config.h"
#include "analogy/entity_clustering.h"
#include "analogy/interchange.h"
#include "analogy/mapper.h"
#include "analogy/qa_filter.h"
#include "analogy/similarity.h"

namespace analogy {

struct PreparedDocument {
  std::vector<Rejection> rejections;
  ClusteredDocument clustered;
};

PreparedDocument prepare_document(const DocumentExtraction& doc,
                                  const EmbeddingTable& embeddings,
                                  const EngineConfig& cfg);

struct PairAnalysis {
  SimilarityMatrix cells;         // with the relation bonus applied
  std::vector<Mapping> mappings;  // best first
};

PairAnalysis analyze_pair(const ClusteredDocument& base, const ClusteredDocument& target,
                          const EmbeddingTable& embeddings, const EngineConfig& cfg);

// Keys the engine will look up for `doc` once it has been filtered with `cfg`.
std::set<std::string> required_keys_after_filter(const DocumentExtraction& doc,
                                                 const FilterConfig& cfg);

}  // namespace analogy
