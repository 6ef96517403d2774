#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emojirec/embedding_store.h"

namespace emojirec {

struct SenseWord {
  std::string word;
  std::string pos;  // kept for schema fidelity, unused in scoring
};

struct EmojiRecord {
  std::string codepoint;  // normalized, e.g. "U+1F618" or "U+2764 U+FE0F"
  std::string short_name;
  std::vector<SenseWord> senses;
  std::vector<std::string> definitions;
};

struct EmojiInventory {
  std::string source_version;
  std::vector<EmojiRecord> records;

  const EmojiRecord* Find(std::string_view codepoint) const;
};

struct InventoryLoadReport {
  size_t loaded = 0;
  size_t rejected = 0;
  std::vector<std::string> diagnostics;
};

// Which knowledge concept an emoji vector is built from.
enum class Strategy { kNames, kSenses, kDefinitions, kProcessedDefinitions };

inline constexpr Strategy kAllStrategies[] = {
    Strategy::kNames, Strategy::kSenses, Strategy::kDefinitions,
    Strategy::kProcessedDefinitions};

const char* StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

// Canonical form of a codepoint sequence: "U+" prefixes, uppercase hex with
// 4-6 digits, single spaces. Returns nothing for malformed input.
std::optional<std::string> NormalizeCodepoint(std::string_view text);

// Parses the inventory JSON document. Records that violate the record
// invariants are skipped and described in `report`; a duplicate codepoint or
// an unparsable document throws.
EmojiInventory ParseInventory(std::string_view json_text,
                              InventoryLoadReport* report = nullptr);
EmojiInventory LoadInventory(const std::string& path,
                             InventoryLoadReport* report = nullptr);

// The weighted token bag an emoji contributes under `strategy`:
//   names                 tokens of the short name, count 1 each
//   senses                distinct sense words, count 1 each
//   definitions           unigram counts over all definitions
//   processed_definitions unigram counts after preprocessing
// An emoji without data for the strategy yields an empty bag.
TokenCounts KnowledgeText(const EmojiRecord& record, Strategy strategy,
                          const Preprocessor& preprocessor);

}  // namespace emojirec
