#include <doctest.h>

#include "emojirec/error.h"
#include "emojirec/knowledge_base.h"
#include "test_util.h"

using namespace emojirec;

namespace {

const char* kThreeRecords = R"({
  "version": "test-1",
  "emojis": [
    {"codepoint": "U+1F618", "name": "face blowing a kiss",
     "senses": [{"word": "love", "pos": "n"}, {"word": "face", "pos": "n"},
                {"word": "beloved", "pos": "adj"}, {"word": "dear", "pos": "adj"},
                {"word": "adorable", "pos": "adj"}],
     "definitions": ["An intense feeling of affection and care towards another person."]},
    {"codepoint": "U+1F30A", "name": "water wave", "senses": [], "definitions": []},
    {"codepoint": "u+2764 u+fe0f", "name": "red heart",
     "senses": [{"word": "love", "pos": "n"}, {"word": "Love", "pos": "v"}],
     "definitions": ["a b a"]}
  ]
})";

}  // namespace

TEST_CASE("inventory with three valid records") {
  InventoryLoadReport report;
  auto inv = ParseInventory(kThreeRecords, &report);
  CHECK(inv.records.size() == 3);
  CHECK(report.loaded == 3);
  CHECK(report.rejected == 0);
  CHECK(inv.source_version == "test-1");
  REQUIRE(inv.Find("U+2764 U+FE0F") != nullptr);
  CHECK(inv.Find("U+2764 U+FE0F")->short_name == "red heart");
}

TEST_CASE("duplicate codepoint is an error naming it") {
  const char* doc = R"({"emojis": [
    {"codepoint": "U+1F618", "name": "a"}, {"codepoint": "U+1f618", "name": "b"}]})";
  try {
    ParseInventory(doc);
    FAIL("expected DuplicateCodepoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateCodepoint);
    CHECK(std::string(e.what()) == "DuplicateCodepoint(U+1F618)");
  }
}

TEST_CASE("invalid records are rejected with diagnostics") {
  const char* doc = R"({"emojis": [
    {"codepoint": "U+1F600", "name": "grinning face"},
    {"name": "no codepoint"},
    {"codepoint": "1F601", "name": "bad codepoint"},
    {"codepoint": "U+1F602", "name": "", "senses": [], "definitions": []},
    {"codepoint": "U+1F603", "senses": "love"}
  ]})";
  InventoryLoadReport report;
  auto inv = ParseInventory(doc, &report);
  CHECK(inv.records.size() == 1);
  CHECK(report.loaded == 1);
  CHECK(report.rejected == 4);
  REQUIRE(report.diagnostics.size() == 4);
  CHECK(report.diagnostics[1].find("malformed codepoint") != std::string::npos);
  CHECK(report.diagnostics[2].find("U+1F602") != std::string::npos);
}

TEST_CASE("unparsable inventory") {
  CHECK_THROWS_AS(ParseInventory("{not json"), Error);
  CHECK_THROWS_AS(ParseInventory(R"({"version": "x"})"), Error);
  CHECK_THROWS_AS(LoadInventory("/nonexistent/inventory.json"), Error);
}

TEST_CASE("codepoint normalization") {
  CHECK(NormalizeCodepoint("U+1F618") == "U+1F618");
  CHECK(NormalizeCodepoint("u+1f618") == "U+1F618");
  CHECK(NormalizeCodepoint("U+2764  U+FE0F") == "U+2764 U+FE0F");
  CHECK_FALSE(NormalizeCodepoint(""));
  CHECK_FALSE(NormalizeCodepoint("U+12"));
  CHECK_FALSE(NormalizeCodepoint("U+1234567"));
  CHECK_FALSE(NormalizeCodepoint("U+12G4"));
  CHECK_FALSE(NormalizeCodepoint("1F618"));
}

TEST_CASE("sense words of face blowing a kiss") {
  auto inv = ParseInventory(kThreeRecords);
  const EmojiRecord* kiss = inv.Find("U+1F618");
  REQUIRE(kiss != nullptr);
  REQUIRE(kiss->senses.size() == 5);
  const char* expected[] = {"love", "face", "beloved", "dear", "adorable"};
  for (size_t i = 0; i < 5; ++i) CHECK(kiss->senses[i].word == expected[i]);
  CHECK(kiss->senses[2].pos == "adj");

  Preprocessor pre;
  auto counts = KnowledgeText(*kiss, Strategy::kSenses, pre);
  CHECK(counts.size() == 5);
  for (const auto& [word, n] : counts) CHECK(n == 1);
}

TEST_CASE("knowledge text per strategy") {
  auto inv = ParseInventory(kThreeRecords);
  Preprocessor pre;
  CHECK(KnowledgeText(*inv.Find("U+1F30A"), Strategy::kNames, pre) ==
        TokenCounts{{"water", 1}, {"wave", 1}});
  CHECK(KnowledgeText(*inv.Find("U+2764 U+FE0F"), Strategy::kDefinitions, pre) ==
        TokenCounts{{"a", 2}, {"b", 1}});
  // Sense words collapse case-insensitively to distinct forms.
  CHECK(KnowledgeText(*inv.Find("U+2764 U+FE0F"), Strategy::kSenses, pre) ==
        TokenCounts{{"love", 1}});
  // No backing data gives an empty bag.
  CHECK(KnowledgeText(*inv.Find("U+1F30A"), Strategy::kSenses, pre).empty());
  CHECK(KnowledgeText(*inv.Find("U+1F30A"), Strategy::kDefinitions, pre).empty());
  CHECK(KnowledgeText(*inv.Find("U+1F618"), Strategy::kProcessedDefinitions, pre) ==
        TokenCounts{{"another", 1}, {"affection", 1}, {"care", 1}, {"feeling", 1},
                    {"intense", 1}, {"person", 1}, {"toward", 1}});
}

TEST_CASE("processed definitions are a lemma image of raw definitions") {
  auto inv = LoadInventory(std::string(EMOJIREC_TEST_DATA) + "/golden/inventory.json");
  Preprocessor pre;
  RuleLemmatizer lem;
  for (const auto& rec : inv.records) {
    auto raw = KnowledgeText(rec, Strategy::kDefinitions, pre);
    auto processed = KnowledgeText(rec, Strategy::kProcessedDefinitions, pre);
    // Each processed token's count is bounded by the counts of its preimages.
    for (const auto& [token, n] : processed) {
      int preimage = 0;
      for (const auto& [word, m] : raw) {
        if (lem.Lemmatize(word) == token) preimage += m;
      }
      CAPTURE(token);
      CHECK(n <= preimage);
    }
    int total = 0;
    for (const auto& [w, n] : raw) {
      CHECK(n >= 1);
      total += n;
    }
    int tokens = 0;
    for (const auto& d : rec.definitions) tokens += static_cast<int>(Tokenize(d).size());
    CHECK(total == tokens);
  }
}

TEST_CASE("strategy names round trip") {
  for (Strategy s : kAllStrategies) CHECK(ParseStrategy(StrategyName(s)) == s);
  CHECK_FALSE(ParseStrategy("descriptions"));
}
