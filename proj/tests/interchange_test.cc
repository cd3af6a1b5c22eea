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

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "analogy/errors.h"
#include "analogy/pipeline.h"
#include "test_support.h"

namespace analogy {
namespace {

using testing::data_dir;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimalDoc = R"({
  "doc_id": "d",
  "sentences": [
    {"index": 0, "text": "The heart pumps blood.", "records": [
      {"verb": "pump", "question": "what pumps something?", "question_prob": 0.9,
       "question_wh": "what",
       "answer": {"text": "The heart", "answer_prob": 0.8, "contains_verb": false,
                  "contains_noun": true, "is_pronoun": false}}
    ]}
  ]
})";

TEST(Interchange, ParsesMinimalDocument) {
  DocumentExtraction d = parse_document(kMinimalDoc);
  EXPECT_EQ(d.doc_id, "d");
  EXPECT_FALSE(d.prompt.has_value());
  ASSERT_EQ(d.sentences.size(), 1u);
  const SrlRecord& r = d.sentences[0].records.at(0);
  EXPECT_EQ(r.verb, "pump");
  EXPECT_EQ(r.question_wh, WhWord::kWhat);
  EXPECT_DOUBLE_EQ(r.answer.answer_prob, 0.8);
  EXPECT_TRUE(r.answer.contains_noun);
}

TEST(Interchange, FixturesRoundTripByteIdentical) {
  for (const char* name : {"cell.json", "factory.json"}) {
    const auto path = data_dir() / "cell_factory" / name;
    const std::string text = slurp(path);
    EXPECT_EQ(write_document(parse_document(text)), text) << name;
  }
  for (const auto& entry : std::filesystem::directory_iterator(data_dir() / "planted/docs")) {
    const std::string text = slurp(entry.path());
    EXPECT_EQ(write_document(parse_document(text)), text) << entry.path();
  }
}

TEST(Interchange, WriteThenParseIsIdentity) {
  DocumentExtraction d = load_document(data_dir() / "cell_factory/cell.json");
  EXPECT_EQ(parse_document(write_document(d)), d);
  d.prompt = "explain how a cell works";
  EXPECT_EQ(parse_document(write_document(d)), d);
}

TEST(Interchange, WhWordOfQuestion) {
  EXPECT_EQ(wh_of_question("what provides something?"), WhWord::kWhat);
  EXPECT_EQ(wh_of_question("Who sees someone?"), WhWord::kWho);
  EXPECT_EQ(wh_of_question("where does something go?"), WhWord::kWhere);
  EXPECT_EQ(wh_of_question("did something happen?"), WhWord::kOther);
  EXPECT_EQ(wh_from_string("which"), WhWord::kWhich);
  EXPECT_EQ(to_string(WhWord::kHow), "how");
}

TEST(Interchange, CanonicalKeyCollapsesWhitespaceOnly) {
  EXPECT_EQ(canonical_key("  the   plasma\tmembrane "), "the plasma membrane");
  EXPECT_EQ(canonical_key("The Cell"), "The Cell");
}

TEST(Interchange, RejectsNonContiguousSentenceIndex) {
  nlohmann::json j = nlohmann::json::parse(kMinimalDoc);
  j["sentences"][0]["index"] = 1;
  EXPECT_THROW(parse_document(j.dump()), ValidationError);
}

TEST(Interchange, RejectsMissingFieldsAndBadValues) {
  nlohmann::json j = nlohmann::json::parse(kMinimalDoc);
  nlohmann::json missing = j;
  missing["sentences"][0]["records"][0].erase("verb");
  EXPECT_THROW(parse_document(missing.dump()), Error);

  nlohmann::json bad_prob = j;
  bad_prob["sentences"][0]["records"][0]["question_prob"] = 1.5;
  EXPECT_THROW(parse_document(bad_prob.dump()), ValidationError);

  nlohmann::json empty_answer = j;
  empty_answer["sentences"][0]["records"][0]["answer"]["text"] = "   ";
  EXPECT_THROW(parse_document(empty_answer.dump()), ValidationError);

  EXPECT_THROW(parse_document("{not json"), ParseError);
}

TEST(Interchange, RequiredKeysCoverQuestionsVerbsAnswers) {
  DocumentExtraction d = parse_document(kMinimalDoc);
  const std::set<std::string> want = {"The heart", "pump", "what pumps something?"};
  EXPECT_EQ(required_keys(d), want);
}

TEST(Interchange, FixtureEmbeddingsCoverFixtureDocuments) {
  const auto dir = data_dir() / "cell_factory";
  // The table only needs the strings that survive filtering.
  std::set<std::string> keys =
      required_keys_after_filter(load_document(dir / "cell.json"), FilterConfig{});
  keys.merge(required_keys_after_filter(load_document(dir / "factory.json"), FilterConfig{}));
  EmbeddingTable t = load_embeddings(dir / "embeddings.jsonl", keys);
  EXPECT_GE(t.size(), keys.size());
  EXPECT_TRUE(t.contains("what provides something?"));
}

TEST(EmbeddingTable, InsertChecksDimensionAndNorm) {
  EmbeddingTable t(3);
  const std::vector<double> ok = {1.0, 0.0, 0.0};
  t.insert("a", ok);
  EXPECT_THROW(t.insert("a", ok), ValidationError);
  const std::vector<double> short_v = {1.0, 0.0};
  EXPECT_THROW(t.insert("b", short_v), DimensionError);
  const std::vector<double> long_v = {0.6, 0.8, 0.01};
  EXPECT_THROW(t.insert("c", long_v), NormError);
  const std::vector<double> nearly = {0.6, 0.8 + 5e-7, 0.0};
  EXPECT_NO_THROW(t.insert("d", nearly));
}

TEST(EmbeddingTable, MissingKeyNamesTheKey) {
  EmbeddingTable t(2);
  const std::vector<double> v = {0.0, 1.0};
  t.insert("present", v);
  try {
    t.at("absent key");
    FAIL() << "expected MissingKeyError";
  } catch (const MissingKeyError& e) {
    EXPECT_NE(std::string(e.what()).find("absent key"), std::string::npos);
  }
  try {
    t.require({"zeta", "present", "alpha"});
    FAIL() << "expected MissingKeyError";
  } catch (const MissingKeyError& e) {
    const std::string msg = e.what();
    EXPECT_LT(msg.find("alpha"), msg.find("zeta"));
    EXPECT_EQ(msg.find("present"), std::string::npos);
  }
}

TEST(EmbeddingTable, ParseRejectsBadLines) {
  const std::string header = "{\"dimension\": 2}\n";
  EXPECT_THROW(parse_embeddings(header + R"({"key": "a", "vector": [1.0, 0.0]})"
                                         "\n"
                                         R"({"key": "b", "vector": [1.0]})"),
               DimensionError);
  EXPECT_THROW(parse_embeddings(header + R"({"key": "a", "vector": [2.0, 0.0]})"), NormError);
  EXPECT_THROW(parse_embeddings(header + R"({"key": "a", "vector": [1.0, 0.0]})", {"a", "b"}),
               MissingKeyError);
  EXPECT_NO_THROW(parse_embeddings(header + R"({"key": "a", "vector": [1.0, 0.0]})", {"a"}));
  EXPECT_THROW(parse_embeddings(R"({"key": "a", "vector": [1.0, 0.0]})"), ParseError);
  EXPECT_THROW(parse_embeddings("{\"dimension\": 0}\n"), DimensionError);
  EXPECT_THROW(parse_embeddings(header + "[1, 2]"), Error);
}

TEST(EmbeddingTable, WriteParseRoundTrip) {
  const auto path = data_dir() / "cell_factory/embeddings.jsonl";
  EmbeddingTable a = load_embeddings(path);
  EmbeddingTable b = parse_embeddings(write_embeddings(a));
  ASSERT_EQ(a.keys(), b.keys());
  for (const std::string& k : a.keys()) {
    const auto va = a.at(k);
    const auto vb = b.at(k);
    ASSERT_TRUE(std::equal(va.begin(), va.end(), vb.begin(), vb.end())) << k;
  }
}

TEST(Cosine, ReferenceValues) {
  const std::vector<double> e1 = {1.0, 0.0};
  const std::vector<double> e2 = {0.0, 1.0};
  const std::vector<double> u = {0.6, 0.8};
  const std::vector<double> w = {0.8, 0.6};
  EXPECT_DOUBLE_EQ(cosine(e1, e1), 1.0);
  EXPECT_DOUBLE_EQ(cosine(e1, e2), 0.0);
  EXPECT_NEAR(cosine(u, w), 0.96, 1e-12);
  const std::vector<double> three = {1.0, 0.0, 0.0};
  EXPECT_THROW(cosine(e1, three), DimensionError);
}

TEST(Cosine, ExactlySymmetric) {
  testing::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(37), b(37);
    for (double& x : a) x = rng.normal();
    for (double& x : b) x = rng.normal();
    a = normalized(a);
    b = normalized(b);
    EXPECT_EQ(cosine(a, b), cosine(b, a));
  }
}

}  // namespace
}  // namespace analogy
