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

#include "analogy/qa_filter.h"

#include <nlohmann/json.hpp>

#include "analogy/errors.h"

namespace analogy {

void FilterConfig::validate() const {
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob_ok(min_question_prob))
    throw ConfigError("filter.min_question_prob must lie in [0, 1]");
  if (!prob_ok(min_answer_prob))
    throw ConfigError("filter.min_answer_prob must lie in [0, 1]");
  if (allowed_wh.empty()) throw ConfigError("filter.allowed_wh must be non-empty");
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kLowQuestionProb: return "low-question-prob";
    case RejectReason::kLowAnswerProb: return "low-answer-prob";
    case RejectReason::kWhNotAllowed: return "wh-not-allowed";
    case RejectReason::kBannedVerb: return "banned-verb";
    case RejectReason::kAnswerHasVerb: return "answer-has-verb";
    case RejectReason::kAnswerLacksNoun: return "answer-lacks-noun";
    case RejectReason::kPronounAnswer: return "pronoun-answer";
  }
  return "unknown";
}

std::optional<RejectReason> keep_record(const SrlRecord& r, const FilterConfig& cfg) {
  if (!(r.question_prob > cfg.min_question_prob))
    return RejectReason::kLowQuestionProb;
  if (!(r.answer.answer_prob > cfg.min_answer_prob))
    return RejectReason::kLowAnswerProb;
  if (!cfg.allowed_wh.contains(r.question_wh)) return RejectReason::kWhNotAllowed;
  if (cfg.banned_verbs.contains(r.verb)) return RejectReason::kBannedVerb;
  if (r.answer.contains_verb) return RejectReason::kAnswerHasVerb;
  if (!r.answer.contains_noun) return RejectReason::kAnswerLacksNoun;
  if (r.answer.is_pronoun) return RejectReason::kPronounAnswer;
  return std::nullopt;
}

FilterResult filter_document(const DocumentExtraction& doc, const FilterConfig& cfg) {
  FilterResult out;
  out.document.doc_id = doc.doc_id;
  out.document.prompt = doc.prompt;
  out.document.sentences.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) {
    Sentence kept{s.index, s.text, {}};
    for (std::size_t i = 0; i < s.records.size(); ++i) {
      if (auto reason = keep_record(s.records[i], cfg)) {
        out.rejections.push_back({s.index, static_cast<int>(i), *reason});
      } else {
        kept.records.push_back(s.records[i]);
      }
    }
    out.document.sentences.push_back(std::move(kept));
  }
  return out;
}

std::string rejections_to_jsonl(std::string_view doc_id,
                                const std::vector<Rejection>& rejections) {
  std::string out;
  for (const Rejection& r : rejections) {
    out += nlohmann::json{{"doc_id", doc_id},
                          {"sentence", r.sentence},
                          {"record", r.record},
                          {"reason", to_string(r.reason)}}
               .dump();
    out += '\n';
  }
  return out;
}

}  // namespace analogy
