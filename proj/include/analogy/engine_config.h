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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "analogy/entity_clustering.h"
#include "analogy/mapper.h"
#include "analogy/qa_filter.h"
#include "analogy/similarity.h"

namespace analogy {

inline constexpr std::string_view kEngineName = "analogy-engine";
inline constexpr std::string_view kEngineVersion = "0.1.0";

// All tunables. Default-constructed values are the published settings:
// question/answer probability 0.1/0.05, clustering distance 1.0, question and
// verb cosine cutoffs 0.7/0.5, alpha 1.0, beam width 7.
struct EngineConfig {
  FilterConfig filter;
  ClusteringConfig clustering;
  SimilarityConfig similarity;
  BeamConfig beam;

  void validate() const;
};

// Parses a JSON config. Absent sections and fields keep their defaults;
// unknown fields are rejected. Throws ConfigError.
EngineConfig parse_config(std::string_view json_text);
EngineConfig load_config(const std::filesystem::path& path);

// Canonical JSON rendering with every field spelled out.
std::string config_to_json(const EngineConfig& cfg);

// 16 hex digits of FNV-1a over config_to_json().
std::string config_hash(const EngineConfig& cfg);

}  // namespace analogy
