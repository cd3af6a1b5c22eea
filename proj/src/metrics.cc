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

#include "analogy/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "analogy/errors.h"

namespace analogy {
namespace {

using nlohmann::json;

constexpr std::pair<AnalogyLabel, std::string_view> kLabelNames[] = {
    {AnalogyLabel::kNot, "not"},     {AnalogyLabel::kSub, "sub"},
    {AnalogyLabel::kSelf, "self"},   {AnalogyLabel::kClose, "close"},
    {AnalogyLabel::kFar, "far"},
};

void check_k(int k) {
  if (k < 1) throw ValidationError("k must be >= 1 (got " + std::to_string(k) + ")");
}

bool relevant(AnalogyLabel l) { return l != AnalogyLabel::kNot; }

double dcg(std::span<const AnalogyLabel> labels) {
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    sum += gain(labels[i]) / std::log2(static_cast<double>(i) + 2.0);
  return sum;
}

std::span<const AnalogyLabel> head(std::span<const AnalogyLabel> ranked, int k) {
  check_k(k);
  return ranked.first(std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k)));
}

SpanSet spans_from_json(const json& side, const std::string& where) {
  if (!side.is_object() || !side.contains("spans") || !side["spans"].is_array())
    throw ParseError(where + ": expected {\"spans\": [...]}");
  SpanSet out;
  for (const json& s : side["spans"]) {
    if (!s.is_string()) throw ParseError(where + ": spans must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

PredictedMapping pairs_from_json(const json& mapping, const std::string& where) {
  if (!mapping.is_object() || !mapping.contains("pairs") || !mapping["pairs"].is_array())
    throw ParseError(where + ": expected an object with a \"pairs\" array");
  PredictedMapping out;
  const json& pairs = mapping["pairs"];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string pw = where + " pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_object() || !pairs[i].contains("base") || !pairs[i].contains("target"))
      throw ParseError(pw + ": expected \"base\" and \"target\"");
    out.push_back({spans_from_json(pairs[i]["base"], pw + " base"),
                   spans_from_json(pairs[i]["target"], pw + " target")});
  }
  return out;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

int gain(AnalogyLabel label) { return static_cast<int>(label); }

std::string_view to_string(AnalogyLabel label) {
  for (const auto& [l, n] : kLabelNames)
    if (l == label) return n;
  return "not";
}

AnalogyLabel label_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& [l, n] : kLabelNames)
    if (n == lower) return l;
  throw ParseError("unknown analogy label \"" + std::string(name) + "\"");
}

void LabelSet::add(const std::string& a, const std::string& b, AnalogyLabel label) {
  labels_[std::minmax(a, b)] = label;
}

std::optional<AnalogyLabel> LabelSet::find(const std::string& a, const std::string& b) const {
  auto it = labels_.find(std::minmax(a, b));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

LabelSet parse_labels_csv(std::string_view text) {
  LabelSet out;
  std::size_t pos = 0, line_no = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto f = split_csv_line(line);
    if (first) {
      first = false;
      if (!f.empty() && f[0] == "base_doc") continue;
    }
    if (f.size() != 3)
      throw ParseError("labels line " + std::to_string(line_no) + ": expected 3 fields");
    try {
      out.add(f[0], f[1], label_from_string(f[2]));
    } catch (const ParseError& e) {
      throw ParseError("labels line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<AnalogyLabel> top_k_labels(const std::vector<RankedPair>& ranking,
                                       const LabelSet& labels, int k) {
  check_k(k);
  std::vector<AnalogyLabel> out;
  const std::size_t n = std::min<std::size_t>(ranking.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    auto l = labels.find(ranking[i].base_doc, ranking[i].target_doc);
    if (!l)
      throw ValidationError("no label for ranked pair " + std::to_string(i + 1) + " (" +
                            ranking[i].base_doc + ", " + ranking[i].target_doc + ")");
    out.push_back(*l);
  }
  return out;
}

double precision_at_k(std::span<const AnalogyLabel> ranked, int k) {
  const auto top = head(ranked, k);
  const auto hits = std::count_if(top.begin(), top.end(), relevant);
  return static_cast<double>(hits) / k;
}

double average_precision_at_k(std::span<const AnalogyLabel> ranked, int k) {
  const auto top = head(ranked, k);
  double sum = 0.0;
  int hits = 0;
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (!relevant(top[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return hits ? sum / hits : 0.0;
}

double ndcg_at_k(std::span<const AnalogyLabel> ranked, int k) {
  const auto top = head(ranked, k);
  std::vector<AnalogyLabel> ideal(top.begin(), top.end());
  std::sort(ideal.begin(), ideal.end(),
            [](AnalogyLabel a, AnalogyLabel b) { return gain(a) > gain(b); });
  const double idcg = dcg(ideal);
  return idcg > 0.0 ? dcg(top) / idcg : 0.0;
}

double precision_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels, int k) {
  return precision_at_k(top_k_labels(ranking, labels, k), k);
}

double average_precision_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels,
                              int k) {
  return average_precision_at_k(top_k_labels(ranking, labels, k), k);
}

double ndcg_at_k(const std::vector<RankedPair>& ranking, const LabelSet& labels, int k) {
  return ndcg_at_k(top_k_labels(ranking, labels, k), k);
}

std::string resolver_key(std::string_view span) {
  std::string lower;
  for (char c : canonical_key(span))
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower;
}

bool spans_match(const SpanSet& a, const SpanSet& b) {
  for (const std::string& x : a) {
    const std::string kx = resolver_key(x);
    for (const std::string& y : b)
      if (kx == resolver_key(y)) return true;
  }
  return false;
}

void GoldMapping::validate() const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (spans_match(pairs[i].base, pairs[j].base))
        throw ValidationError("gold mapping is not injective: base entity of pairs " +
                              std::to_string(i) + " and " + std::to_string(j) + " coincide");
      if (spans_match(pairs[i].target, pairs[j].target))
        throw ValidationError("gold mapping is not injective: target entity of pairs " +
                              std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
  }
}

Prf mapping_prf(const PredictedMapping& pred, const GoldMapping& gold) {
  // Kuhn's augmenting paths; sizes are tens at most.
  std::vector<int> gold_owner(gold.pairs.size(), -1);
  std::vector<std::vector<int>> edges(pred.size());
  for (std::size_t p = 0; p < pred.size(); ++p)
    for (std::size_t g = 0; g < gold.pairs.size(); ++g)
      if (spans_match(pred[p].base, gold.pairs[g].base) &&
          spans_match(pred[p].target, gold.pairs[g].target))
        edges[p].push_back(static_cast<int>(g));

  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int p) {
    for (int g : edges[p]) {
      if (visited[g]) continue;
      visited[g] = 1;
      if (gold_owner[g] < 0 || augment(gold_owner[g])) {
        gold_owner[g] = p;
        return true;
      }
    }
    return false;
  };
  int correct = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    visited.assign(gold.pairs.size(), 0);
    if (augment(static_cast<int>(p))) ++correct;
  }

  Prf out;
  if (!pred.empty()) out.precision = static_cast<double>(correct) / pred.size();
  if (!gold.pairs.empty()) out.recall = static_cast<double>(correct) / gold.pairs.size();
  if (out.precision + out.recall > 0.0)
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

Prf mapping_prf_at_k(const std::vector<PredictedMapping>& ranked, const GoldMapping& gold,
                     int k) {
  check_k(k);
  if (ranked.empty()) return mapping_prf({}, gold);
  Prf best;
  const std::size_t n = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    const Prf cur = mapping_prf(ranked[i], gold);
    if (i == 0 || cur.f1 > best.f1) best = cur;
  }
  return best;
}

PredictedMapping to_predicted(const Mapping& m, const ClusteredDocument& base,
                              const ClusteredDocument& target) {
  PredictedMapping out;
  for (const MappedPair& p : m.pairs)
    out.push_back({base.clusters.at(p.base).spans, target.clusters.at(p.target).spans});
  return out;
}

GoldMapping parse_gold_json(std::string_view text) {
  const json j = parse_json(text, "gold mapping");
  GoldMapping gold;
  if (j.is_object() && j.contains("mappings")) {
    const json& ms = j["mappings"];
    if (!ms.is_array() || ms.empty())
      throw ParseError("gold mapping: \"mappings\" must be a non-empty array");
    gold.pairs = pairs_from_json(ms[0], "gold mapping");
  } else {
    gold.pairs = pairs_from_json(j, "gold mapping");
  }
  gold.validate();
  return gold;
}

std::vector<PredictedMapping> parse_predictions_json(std::string_view text) {
  const json j = parse_json(text, "prediction");
  std::vector<PredictedMapping> out;
  const json* list = nullptr;
  if (j.is_array()) list = &j;
  else if (j.is_object() && j.contains("mappings")) list = &j["mappings"];
  if (!list) {
    out.push_back(pairs_from_json(j, "prediction"));
    return out;
  }
  if (!list->is_array()) throw ParseError("prediction: \"mappings\" must be an array");
  for (std::size_t i = 0; i < list->size(); ++i)
    out.push_back(pairs_from_json((*list)[i], "prediction mappings[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace analogy
