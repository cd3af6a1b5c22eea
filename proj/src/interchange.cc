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

#include "analogy/interchange.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "analogy/errors.h"

namespace analogy {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<WhWord, std::string_view>, 8> kWhNames = {{
    {WhWord::kWhat, "what"},
    {WhWord::kWho, "who"},
    {WhWord::kWhich, "which"},
    {WhWord::kWhere, "where"},
    {WhWord::kWhen, "when"},
    {WhWord::kWhy, "why"},
    {WhWord::kHow, "how"},
    {WhWord::kOther, "other"},
}};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Field accessors that turn nlohmann type errors into messages naming the
// field and its location.
const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end())
    throw ParseError(where + ": missing field \"" + name + "\"");
  return *it;
}

std::string get_string(const json& obj, const char* name,
                       const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string())
    throw ParseError(where + ": field \"" + name + "\" must be a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number())
    throw ParseError(where + ": field \"" + name + "\" must be a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_boolean())
    throw ParseError(where + ": field \"" + name + "\" must be a boolean");
  return v.get<bool>();
}

std::string sentence_where(std::size_t pos) {
  return "sentences[" + std::to_string(pos) + "]";
}

std::string record_where(int sentence_index, std::size_t pos) {
  return "sentence " + std::to_string(sentence_index) + " records[" +
         std::to_string(pos) + "]";
}

SrlRecord record_from_json(const json& j, const std::string& where) {
  SrlRecord r;
  r.verb = get_string(j, "verb", where);
  r.question = get_string(j, "question", where);
  r.question_prob = get_number(j, "question_prob", where);
  try {
    r.question_wh = wh_from_string(get_string(j, "question_wh", where));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  const json& a = field(j, "answer", where);
  const std::string awhere = where + " answer";
  r.answer.text = get_string(a, "text", awhere);
  r.answer.answer_prob = get_number(a, "answer_prob", awhere);
  r.answer.contains_verb = get_bool(a, "contains_verb", awhere);
  r.answer.contains_noun = get_bool(a, "contains_noun", awhere);
  r.answer.is_pronoun = get_bool(a, "is_pronoun", awhere);
  return r;
}

json record_to_json(const SrlRecord& r) {
  return json{{"verb", r.verb},
              {"question", r.question},
              {"question_prob", r.question_prob},
              {"question_wh", std::string(to_string(r.question_wh))},
              {"answer",
               {{"text", r.answer.text},
                {"answer_prob", r.answer.answer_prob},
                {"contains_verb", r.answer.contains_verb},
                {"contains_noun", r.answer.contains_noun},
                {"is_pronoun", r.answer.is_pronoun}}}};
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view to_string(WhWord wh) {
  for (const auto& [w, name] : kWhNames)
    if (w == wh) return name;
  return "other";
}

WhWord wh_from_string(std::string_view name) {
  for (const auto& [w, n] : kWhNames)
    if (n == name) return w;
  throw ParseError("unknown question_wh \"" + std::string(name) + "\"");
}

WhWord wh_of_question(std::string_view question) {
  std::size_t begin = 0;
  while (begin < question.size() &&
         std::isspace(static_cast<unsigned char>(question[begin])))
    ++begin;
  std::string token;
  for (std::size_t i = begin; i < question.size(); ++i) {
    const auto c = static_cast<unsigned char>(question[i]);
    if (!std::isalpha(c)) break;
    token.push_back(static_cast<char>(std::tolower(c)));
  }
  for (const auto& [w, n] : kWhNames)
    if (w != WhWord::kOther && n == token) return w;
  return WhWord::kOther;
}

std::string canonical_key(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

void validate(const DocumentExtraction& doc) {
  if (doc.doc_id.empty()) throw ValidationError("doc_id: must be non-empty");
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence& sent = doc.sentences[s];
    if (sent.index != static_cast<int>(s))
      throw ValidationError(sentence_where(s) +
                            ": non-contiguous sentence index " +
                            std::to_string(sent.index) + " (expected " +
                            std::to_string(s) + ")");
    if (canonical_key(sent.text).empty())
      throw ValidationError("sentence " + std::to_string(sent.index) +
                            ": text must be non-empty");
    for (std::size_t r = 0; r < sent.records.size(); ++r) {
      const SrlRecord& rec = sent.records[r];
      const std::string where = record_where(sent.index, r);
      if (canonical_key(rec.question).empty())
        throw ValidationError(where + ": question must be non-empty");
      if (canonical_key(rec.verb).empty())
        throw ValidationError(where + ": verb must be non-empty");
      if (canonical_key(rec.answer.text).empty())
        throw ValidationError(where + ": answer.text must be non-empty");
      if (!is_probability(rec.question_prob))
        throw ValidationError(where + ": question_prob must lie in [0, 1]");
      if (!is_probability(rec.answer.answer_prob))
        throw ValidationError(where + ": answer.answer_prob must lie in [0, 1]");
      if (wh_of_question(rec.question) != rec.question_wh)
        throw ValidationError(
            where + ": question_wh \"" + std::string(to_string(rec.question_wh)) +
            "\" inconsistent with question \"" + rec.question + "\"");
    }
  }
}

DocumentExtraction parse_document(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document JSON: ") + e.what());
  }
  DocumentExtraction doc;
  doc.doc_id = get_string(j, "doc_id", "document");
  if (auto it = j.find("prompt"); it != j.end() && !it->is_null()) {
    if (!it->is_string())
      throw ParseError("document: field \"prompt\" must be a string or null");
    doc.prompt = it->get<std::string>();
  }
  const json& sentences = field(j, "sentences", "document");
  if (!sentences.is_array())
    throw ParseError("document: field \"sentences\" must be an array");
  doc.sentences.reserve(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const std::string where = sentence_where(s);
    const json& js = sentences[s];
    Sentence sent;
    const json& idx = field(js, "index", where);
    if (!idx.is_number_integer())
      throw ParseError(where + ": field \"index\" must be an integer");
    sent.index = idx.get<int>();
    sent.text = get_string(js, "text", where);
    const json& records = field(js, "records", where);
    if (!records.is_array())
      throw ParseError(where + ": field \"records\" must be an array");
    for (std::size_t r = 0; r < records.size(); ++r)
      sent.records.push_back(
          record_from_json(records[r], record_where(sent.index, r)));
    doc.sentences.push_back(std::move(sent));
  }
  validate(doc);
  return doc;
}

DocumentExtraction load_document(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string write_document(const DocumentExtraction& doc) {
  json sentences = json::array();
  for (const Sentence& s : doc.sentences) {
    json records = json::array();
    for (const SrlRecord& r : s.records) records.push_back(record_to_json(r));
    sentences.push_back(
        {{"index", s.index}, {"text", s.text}, {"records", std::move(records)}});
  }
  json j{{"doc_id", doc.doc_id},
         {"prompt", doc.prompt ? json(*doc.prompt) : json(nullptr)},
         {"sentences", std::move(sentences)}};
  return j.dump() + "\n";
}

std::set<std::string> required_keys(const DocumentExtraction& doc) {
  std::set<std::string> keys;
  for (const Sentence& s : doc.sentences) {
    for (const SrlRecord& r : s.records) {
      keys.insert(canonical_key(r.question));
      keys.insert(canonical_key(r.verb));
      keys.insert(canonical_key(r.answer.text));
    }
  }
  return keys;
}

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DimensionError("embedding dimension must be positive");
}

void EmbeddingTable::insert(std::string_view key, std::span<const double> vector) {
  std::string k = canonical_key(key);
  if (vector.size() != dimension_)
    throw DimensionError("embedding \"" + k + "\": length " +
                         std::to_string(vector.size()) + " != dimension " +
                         std::to_string(dimension_));
  double sq = 0.0;
  for (double x : vector) {
    if (!std::isfinite(x))
      throw NormError("embedding \"" + k + "\": non-finite component");
    sq += x * x;
  }
  const double norm = std::sqrt(sq);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "embedding \"" << k << "\": norm " << norm << " is not 1";
    throw NormError(msg.str());
  }
  if (index_.contains(k))
    throw ValidationError("embedding \"" + k + "\": duplicate key");
  index_.emplace(k, keys_.size());
  keys_.push_back(std::move(k));
  data_.insert(data_.end(), vector.begin(), vector.end());
}

bool EmbeddingTable::contains(std::string_view key) const {
  return index_.contains(canonical_key(key));
}

std::span<const double> EmbeddingTable::at(std::string_view key) const {
  auto it = index_.find(canonical_key(key));
  if (it == index_.end())
    throw MissingKeyError("missing embedding for \"" + canonical_key(key) + "\"");
  return {data_.data() + it->second * dimension_, dimension_};
}

void EmbeddingTable::require(const std::set<std::string>& keys) const {
  std::vector<std::string> missing;
  for (const std::string& k : keys)
    if (!contains(k)) missing.push_back(canonical_key(k));
  if (missing.empty()) return;
  std::sort(missing.begin(), missing.end());
  std::string msg = "missing embeddings for " + std::to_string(missing.size()) +
                    " key(s):";
  for (const std::string& k : missing) msg += " \"" + k + "\"";
  throw MissingKeyError(msg);
}

EmbeddingTable parse_embeddings(std::string_view text,
                                const std::set<std::string>& required_keys) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::optional<EmbeddingTable> table;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (canonical_key(line).empty()) continue;
    const std::string where = "embeddings line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!table) {
      const json& d = field(j, "dimension", where);
      if (!d.is_number_integer() || d.get<long long>() <= 0)
        throw DimensionError(where + ": dimension must be a positive integer");
      table.emplace(d.get<std::size_t>());
      continue;
    }
    const std::string key = get_string(j, "key", where);
    const json& v = field(j, "vector", where);
    if (!v.is_array()) throw ParseError(where + ": vector must be an array");
    std::vector<double> vec;
    vec.reserve(v.size());
    for (const json& x : v) {
      if (!x.is_number()) throw ParseError(where + ": vector entries must be numbers");
      vec.push_back(x.get<double>());
    }
    try {
      table->insert(key, vec);
    } catch (const DimensionError& e) {
      throw DimensionError(where + ": " + e.what());
    } catch (const NormError& e) {
      throw NormError(where + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!table) throw ParseError("embeddings: missing {\"dimension\": D} header");
  table->require(required_keys);
  return std::move(*table);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const std::set<std::string>& required_keys) {
  const std::string text = read_file(path);
  return parse_embeddings(text, required_keys);
}

std::string write_embeddings(const EmbeddingTable& table) {
  std::string out = json{{"dimension", table.dimension()}}.dump() + "\n";
  for (const std::string& key : table.keys()) {
    const auto v = table.at(key);
    out += json{{"key", key}, {"vector", std::vector<double>(v.begin(), v.end())}}
               .dump();
    out += "\n";
  }
  return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  // Products are accumulated in index order; IEEE multiplication commutes, so
  // cosine(a, b) and cosine(b, a) are bit-identical.
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot;
}

std::vector<double> normalized(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq == 0.0) throw NormError("cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(sq);
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= inv;
  return out;
}

}  // namespace analogy
