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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "analogy/interchange.h"

namespace analogy {

struct FilterConfig {
  // Records at or below either threshold are dropped.
  double min_question_prob = 0.1;
  double min_answer_prob = 0.05;
  std::set<WhWord> allowed_wh = {WhWord::kWhat, WhWord::kWho, WhWord::kWhich};
  std::set<std::string> banned_verbs = {"be"};

  // Throws ConfigError.
  void validate() const;
};

// Listed in evaluation order: the first failing criterion is reported.
enum class RejectReason {
  kLowQuestionProb,
  kLowAnswerProb,
  kWhNotAllowed,
  kBannedVerb,
  kAnswerHasVerb,
  kAnswerLacksNoun,
  kPronounAnswer,
};

std::string_view to_string(RejectReason reason);

// nullopt means keep.
std::optional<RejectReason> keep_record(const SrlRecord& record,
                                        const FilterConfig& cfg);

struct Rejection {
  int sentence = 0;
  int record = 0;  // position in the unfiltered sentence
  RejectReason reason;

  bool operator==(const Rejection&) const = default;
};

struct FilterResult {
  DocumentExtraction document;
  std::vector<Rejection> rejections;
};

FilterResult filter_document(const DocumentExtraction& doc, const FilterConfig& cfg);

// One JSON object per line: {"doc_id", "sentence", "record", "reason"}.
std::string rejections_to_jsonl(std::string_view doc_id,
                                const std::vector<Rejection>& rejections);

}  // namespace analogy
