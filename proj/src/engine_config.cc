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

#include "analogy/engine_config.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "analogy/errors.h"

namespace analogy {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(section + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError(section + ": unknown field \"" + key + "\"");
}

template <typename T>
void read(const json& obj, const std::string& section, const char* name, T& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(section + "." + name + ": wrong type");
  }
}

template <>
void read(const json& obj, const std::string& section, const char* name, double& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return;
  if (!it->is_number()) throw ConfigError(section + "." + name + ": expected a number");
  out = it->get<double>();
}

template <>
void read(const json& obj, const std::string& section, const char* name, int& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return;
  if (!it->is_number_integer())
    throw ConfigError(section + "." + name + ": expected an integer");
  out = it->get<int>();
}

}  // namespace

void EngineConfig::validate() const {
  filter.validate();
  clustering.validate();
  similarity.validate();
  beam.validate();
}

EngineConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  check_keys(j, "config", {"filter", "clustering", "similarity", "beam"});
  EngineConfig cfg;

  if (auto it = j.find("filter"); it != j.end()) {
    const json& f = *it;
    check_keys(f, "filter",
               {"min_question_prob", "min_answer_prob", "allowed_wh", "banned_verbs"});
    read(f, "filter", "min_question_prob", cfg.filter.min_question_prob);
    read(f, "filter", "min_answer_prob", cfg.filter.min_answer_prob);
    if (auto w = f.find("allowed_wh"); w != f.end()) {
      std::vector<std::string> names;
      read(f, "filter", "allowed_wh", names);
      cfg.filter.allowed_wh.clear();
      for (const std::string& n : names) {
        try {
          cfg.filter.allowed_wh.insert(wh_from_string(n));
        } catch (const ParseError& e) {
          throw ConfigError(std::string("filter.allowed_wh: ") + e.what());
        }
      }
    }
    if (auto v = f.find("banned_verbs"); v != f.end()) {
      std::vector<std::string> verbs;
      read(f, "filter", "banned_verbs", verbs);
      cfg.filter.banned_verbs = {verbs.begin(), verbs.end()};
    }
  }

  if (auto it = j.find("clustering"); it != j.end()) {
    check_keys(*it, "clustering", {"linkage_distance_threshold", "linkage"});
    read(*it, "clustering", "linkage_distance_threshold",
         cfg.clustering.linkage_distance_threshold);
    std::string linkage(to_string(cfg.clustering.linkage));
    read(*it, "clustering", "linkage", linkage);
    cfg.clustering.linkage = linkage_from_string(linkage);
  }

  if (auto it = j.find("similarity"); it != j.end()) {
    const json& s = *it;
    check_keys(s, "similarity",
               {"mode", "question_cos_threshold", "verb_cos_threshold",
                "relation_bonus_alpha", "dedupe_questions", "require_identical_verbs"});
    std::string mode(to_string(cfg.similarity.mode));
    read(s, "similarity", "mode", mode);
    cfg.similarity.mode = mode_from_string(mode);
    read(s, "similarity", "question_cos_threshold", cfg.similarity.question_cos_threshold);
    read(s, "similarity", "verb_cos_threshold", cfg.similarity.verb_cos_threshold);
    read(s, "similarity", "relation_bonus_alpha", cfg.similarity.relation_bonus_alpha);
    read(s, "similarity", "dedupe_questions", cfg.similarity.dedupe_questions);
    read(s, "similarity", "require_identical_verbs",
         cfg.similarity.require_identical_verbs);
  }

  if (auto it = j.find("beam"); it != j.end()) {
    check_keys(*it, "beam", {"beam_width", "top_k"});
    read(*it, "beam", "beam_width", cfg.beam.beam_width);
    read(*it, "beam", "top_k", cfg.beam.top_k);
  }

  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_to_json(const EngineConfig& cfg) {
  std::vector<std::string> wh;
  for (WhWord w : cfg.filter.allowed_wh) wh.emplace_back(to_string(w));
  json j{
      {"filter",
       {{"min_question_prob", cfg.filter.min_question_prob},
        {"min_answer_prob", cfg.filter.min_answer_prob},
        {"allowed_wh", wh},
        {"banned_verbs", cfg.filter.banned_verbs}}},
      {"clustering",
       {{"linkage_distance_threshold", cfg.clustering.linkage_distance_threshold},
        {"linkage", to_string(cfg.clustering.linkage)}}},
      {"similarity",
       {{"mode", to_string(cfg.similarity.mode)},
        {"question_cos_threshold", cfg.similarity.question_cos_threshold},
        {"verb_cos_threshold", cfg.similarity.verb_cos_threshold},
        {"relation_bonus_alpha", cfg.similarity.relation_bonus_alpha},
        {"dedupe_questions", cfg.similarity.dedupe_questions},
        {"require_identical_verbs", cfg.similarity.require_identical_verbs}}},
      {"beam", {{"beam_width", cfg.beam.beam_width}, {"top_k", cfg.beam.top_k}}}};
  return j.dump();
}

std::string config_hash(const EngineConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_to_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace analogy
