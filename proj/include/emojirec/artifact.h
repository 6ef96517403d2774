#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "emojirec/vectorizer.h"

namespace emojirec {

// Versioned JSON file holding one or more emoji vector sets:
//   {"format": "emojirec.vectors", "version": 1, "dimension": D,
//    "sets": [{"strategy": str, "emojis": [{"codepoint": str, "empty": bool,
//                                           "vector": [D numbers]}]}]}
// Emojis appear in codepoint order, so equal inputs serialize identically.
std::string SerializeVectorSets(const std::vector<EmojiVectorSet>& sets);
std::vector<EmojiVectorSet> ParseVectorSets(std::string_view text);

}  // namespace emojirec
