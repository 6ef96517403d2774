#include "emojirec/knowledge_base.h"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "emojirec/error.h"

namespace emojirec {

using nlohmann::json;

const EmojiRecord* EmojiInventory::Find(std::string_view codepoint) const {
  for (const auto& r : records) {
    if (r.codepoint == codepoint) return &r;
  }
  return nullptr;
}

const char* StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kNames: return "names";
    case Strategy::kSenses: return "senses";
    case Strategy::kDefinitions: return "definitions";
    case Strategy::kProcessedDefinitions: return "processed_definitions";
  }
  return "?";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (name == StrategyName(s)) return s;
  }
  return std::nullopt;
}

std::optional<std::string> NormalizeCodepoint(std::string_view text) {
  std::string out;
  size_t i = 0;
  int parts = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i == text.size()) break;
    if (i + 2 > text.size() || (text[i] != 'U' && text[i] != 'u') ||
        text[i + 1] != '+') {
      return std::nullopt;
    }
    i += 2;
    size_t start = i;
    std::string hex;
    while (i < text.size() && text[i] != ' ') {
      char c = text[i];
      if (c >= 'a' && c <= 'f') c = static_cast<char>(c - 'a' + 'A');
      if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'))) return std::nullopt;
      hex.push_back(c);
      ++i;
    }
    if (i - start < 4 || i - start > 6) return std::nullopt;
    if (parts++ > 0) out.push_back(' ');
    out += "U+" + hex;
  }
  if (parts == 0) return std::nullopt;
  return out;
}

namespace {

std::optional<std::string> ValidateRecord(const json& item, EmojiRecord* rec) {
  if (!item.is_object()) return "entry is not an object";
  auto cp = item.find("codepoint");
  if (cp == item.end() || !cp->is_string()) return "missing codepoint";
  auto normalized = NormalizeCodepoint(cp->get<std::string>());
  if (!normalized) return "malformed codepoint '" + cp->get<std::string>() + "'";
  rec->codepoint = *normalized;

  if (auto it = item.find("name"); it != item.end() && !it->is_null()) {
    if (!it->is_string()) return rec->codepoint + ": name is not a string";
    rec->short_name = it->get<std::string>();
  }
  if (auto it = item.find("senses"); it != item.end() && !it->is_null()) {
    if (!it->is_array()) return rec->codepoint + ": senses is not an array";
    for (const auto& s : *it) {
      SenseWord sense;
      if (s.is_string()) {
        sense.word = s.get<std::string>();
      } else if (s.is_object() && s.contains("word") && s["word"].is_string()) {
        sense.word = s["word"].get<std::string>();
        if (s.contains("pos") && s["pos"].is_string()) sense.pos = s["pos"].get<std::string>();
      } else {
        return rec->codepoint + ": malformed sense entry";
      }
      if (!sense.word.empty()) rec->senses.push_back(std::move(sense));
    }
  }
  if (auto it = item.find("definitions"); it != item.end() && !it->is_null()) {
    if (!it->is_array()) return rec->codepoint + ": definitions is not an array";
    for (const auto& d : *it) {
      if (!d.is_string()) return rec->codepoint + ": definition is not a string";
      if (!d.get<std::string>().empty()) rec->definitions.push_back(d.get<std::string>());
    }
  }
  if (rec->short_name.empty() && rec->senses.empty() && rec->definitions.empty()) {
    return rec->codepoint + ": no name, senses or definitions";
  }
  return std::nullopt;
}

}  // namespace

EmojiInventory ParseInventory(std::string_view json_text,
                              InventoryLoadReport* report) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("inventory is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("emojis") || !doc["emojis"].is_array()) {
    throw Error(ErrorCode::kSchema, "inventory must be an object with an \"emojis\" array");
  }

  InventoryLoadReport local;
  InventoryLoadReport& rep = report ? *report : local;
  rep = {};

  EmojiInventory inventory;
  if (doc.contains("version") && doc["version"].is_string()) {
    inventory.source_version = doc["version"].get<std::string>();
  }
  std::unordered_set<std::string> seen;
  size_t index = 0;
  for (const auto& item : doc["emojis"]) {
    EmojiRecord rec;
    if (auto problem = ValidateRecord(item, &rec)) {
      ++rep.rejected;
      rep.diagnostics.push_back("emojis[" + std::to_string(index) + "]: " + *problem);
    } else {
      if (!seen.insert(rec.codepoint).second) {
        throw Error(ErrorCode::kDuplicateCodepoint,
                    "DuplicateCodepoint(" + rec.codepoint + ")");
      }
      inventory.records.push_back(std::move(rec));
      ++rep.loaded;
    }
    ++index;
  }
  return inventory;
}

EmojiInventory LoadInventory(const std::string& path, InventoryLoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open inventory " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseInventory(buffer.str(), report);
}

TokenCounts KnowledgeText(const EmojiRecord& record, Strategy strategy,
                          const Preprocessor& preprocessor) {
  TokenCounts counts;
  switch (strategy) {
    case Strategy::kNames:
      for (auto& t : Tokenize(record.short_name)) counts[t] = 1;
      break;
    case Strategy::kSenses:
      // Multi-word sense forms contribute each of their words once.
      for (const auto& sense : record.senses) {
        for (auto& t : Tokenize(sense.word)) counts[t] = 1;
      }
      break;
    case Strategy::kDefinitions:
      for (const auto& d : record.definitions) {
        for (auto& t : Tokenize(d)) ++counts[t];
      }
      break;
    case Strategy::kProcessedDefinitions:
      for (const auto& d : record.definitions) {
        for (auto& t : preprocessor.Process(Tokenize(d))) ++counts[t];
      }
      break;
  }
  return counts;
}

}  // namespace emojirec
