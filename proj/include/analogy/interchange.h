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

// Document extraction and embedding table formats. These are the only inputs
// the engine consumes; everything upstream (coreference, QA-SRL, POS tagging,
// sentence embeddings) happens in the extraction pipeline.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace analogy {

enum class WhWord { kWhat, kWho, kWhich, kWhere, kWhen, kWhy, kHow, kOther };

std::string_view to_string(WhWord wh);
// Accepts the lowercase names produced by to_string(). Throws ParseError.
WhWord wh_from_string(std::string_view name);
// Classifies a question by its first token, case-insensitively.
WhWord wh_of_question(std::string_view question);

// Trims and collapses internal whitespace runs to a single space. Embedding
// keys and span comparisons always go through this.
std::string canonical_key(std::string_view text);

struct AnswerSpan {
  std::string text;
  double answer_prob = 0.0;
  bool contains_verb = false;
  bool contains_noun = false;
  bool is_pronoun = false;

  bool operator==(const AnswerSpan&) const = default;
};

struct SrlRecord {
  std::string verb;
  std::string question;
  double question_prob = 0.0;
  WhWord question_wh = WhWord::kOther;
  AnswerSpan answer;

  bool operator==(const SrlRecord&) const = default;
};

struct Sentence {
  int index = 0;
  std::string text;
  std::vector<SrlRecord> records;

  bool operator==(const Sentence&) const = default;
};

struct DocumentExtraction {
  std::string doc_id;
  std::optional<std::string> prompt;
  std::vector<Sentence> sentences;

  bool operator==(const DocumentExtraction&) const = default;
};

// Position of a record inside a document: (sentence index, record position).
struct RecordRef {
  int sentence = 0;
  int record = 0;

  auto operator<=>(const RecordRef&) const = default;
};

// Throws ValidationError naming the field (and sentence index where relevant)
// of the first violated invariant.
void validate(const DocumentExtraction& doc);

DocumentExtraction parse_document(std::string_view json_text);
DocumentExtraction load_document(const std::filesystem::path& path);

// Canonical serialization: compact JSON, sorted keys, trailing newline.
// load_document(write_document(d)) == d, and the bytes round-trip exactly.
std::string write_document(const DocumentExtraction& doc);

// Every string a kept record needs embedded: questions, verbs, answer texts.
// Returned in canonical_key form.
std::set<std::string> required_keys(const DocumentExtraction& doc);

// Unit-norm vectors keyed by canonical surface string. Immutable once built.
class EmbeddingTable {
 public:
  static constexpr double kNormTolerance = 1e-6;

  explicit EmbeddingTable(std::size_t dimension);

  // Adds a vector after checking its length and norm. Throws DimensionError,
  // NormError, or ValidationError on a duplicate key.
  void insert(std::string_view key, std::span<const double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view key) const;

  // Throws MissingKeyError naming the key.
  std::span<const double> at(std::string_view key) const;

  // Keys in insertion order.
  const std::vector<std::string>& keys() const { return keys_; }

  // Throws MissingKeyError listing every absent key, sorted.
  void require(const std::set<std::string>& keys) const;

 private:
  std::size_t dimension_;
  std::vector<double> data_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads the header line {"dimension": D} followed by {"key", "vector"} lines.
// Blank lines are ignored.
EmbeddingTable parse_embeddings(std::string_view text,
                                const std::set<std::string>& required_keys = {});
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const std::set<std::string>& required_keys = {});
std::string write_embeddings(const EmbeddingTable& table);

// Dot product of two unit vectors. Throws DimensionError on length mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

// Returns v / ‖v‖. Throws NormError for the zero vector. Intended for writers
// and fixture builders; the reader never renormalizes.
std::vector<double> normalized(std::span<const double> v);

}  // namespace analogy
