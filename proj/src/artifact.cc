#include "emojirec/artifact.h"

#include <json.hpp>

#include "emojirec/error.h"

namespace emojirec {

using nlohmann::ordered_json;

namespace {
constexpr const char* kFormat = "emojirec.vectors";
constexpr int kVersion = 1;
}  // namespace

std::string SerializeVectorSets(const std::vector<EmojiVectorSet>& sets) {
  ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["dimension"] = sets.empty() ? 0 : sets.front().dimension;
  doc["sets"] = ordered_json::array();
  for (const auto& set : sets) {
    ordered_json s;
    s["strategy"] = StrategyName(set.strategy);
    s["emojis"] = ordered_json::array();
    for (const auto& [codepoint, vec] : set.vectors) {
      auto flag = set.empty_flags.find(codepoint);
      s["emojis"].push_back({{"codepoint", codepoint},
                             {"empty", flag != set.empty_flags.end() && flag->second},
                             {"vector", vec}});
    }
    doc["sets"].push_back(std::move(s));
  }
  return doc.dump(1) + "\n";
}

std::vector<EmojiVectorSet> ParseVectorSets(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("vector artifact is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != kFormat) throw Error(ErrorCode::kSchema, "not a vector artifact");
    if (doc.at("version") != kVersion) {
      throw Error(ErrorCode::kSchema, "unsupported vector artifact version");
    }
    const int dim = doc.at("dimension").get<int>();
    std::vector<EmojiVectorSet> sets;
    for (const auto& s : doc.at("sets")) {
      EmojiVectorSet set;
      auto strategy = ParseStrategy(s.at("strategy").get<std::string>());
      if (!strategy) throw Error(ErrorCode::kSchema, "unknown strategy in vector artifact");
      set.strategy = *strategy;
      set.dimension = dim;
      for (const auto& e : s.at("emojis")) {
        const auto codepoint = e.at("codepoint").get<std::string>();
        Vector vec = e.at("vector").get<Vector>();
        if (static_cast<int>(vec.size()) != dim) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "vector of " + codepoint + " does not have dimension " + std::to_string(dim));
        }
        set.vectors[codepoint] = std::move(vec);
        set.empty_flags[codepoint] = e.at("empty").get<bool>();
      }
      sets.push_back(std::move(set));
    }
    return sets;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed vector artifact: ") + e.what());
  }
}

}  // namespace emojirec
