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

// Corpus-scale analogy mining: every unordered document pair is mapped and
// ranked by |M| * median(pair totals).

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "analogy/engine_config.h"
#include "analogy/interchange.h"
#include "analogy/mapper.h"

namespace analogy {

struct RankedPair {
  std::string base_doc;
  std::string target_doc;
  double analogy_score = 0.0;
  int mapping_size = 0;
  double median_total = 0.0;

  bool operator==(const RankedPair&) const = default;
};

// Median of the values; the mean of the two middle values for even counts,
// 0 when empty.
double median(std::span<const double> values);
double median_total(const Mapping& m);
// mapping size times median_total.
double analogy_score(const Mapping& m);

struct MineOptions {
  int jobs = 1;
  // Called once per finished pair, serialized. `done` counts from 1.
  std::function<void(std::size_t done, std::size_t total, const RankedPair&)> on_pair;
  // Called for a pair (or document) that failed and was scored 0.
  std::function<void(const std::string& message)> on_error;
};

// Ranks all unordered pairs of `corpus`. Documents are ordered by doc_id and
// the earlier one is the base. Output is sorted by analogy_score descending,
// ties by (base_doc, target_doc). Throws ValidationError for fewer than two
// documents or a duplicate doc_id.
std::vector<RankedPair> mine(std::vector<DocumentExtraction> corpus,
                             const EmbeddingTable& embeddings, const EngineConfig& cfg,
                             const MineOptions& options = {});

// Every *.json file in `dir`, sorted by doc_id.
std::vector<DocumentExtraction> load_corpus(const std::filesystem::path& dir);

// Header line, then base_doc,target_doc,analogy_score,mapping_size,median_total.
// A non-empty `comment` is written first as a '#' line.
std::string ranking_to_csv(const std::vector<RankedPair>& ranking,
                           std::string_view comment = {});
// Skips '#' lines and the header. Throws ParseError.
std::vector<RankedPair> parse_ranking_csv(std::string_view text);

// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);
// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace analogy
