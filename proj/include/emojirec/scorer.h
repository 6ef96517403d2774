#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "emojirec/vectorizer.h"

namespace emojirec {

// Cosine similarity clamped to [-1, 1] and rounded to a multiple of 2^-40.
// Returns nothing when either vector has zero norm. Throws Error(kDimensionMismatch) on unequal lengths.
std::optional<double> Cosine(std::span<const double> a, std::span<const double> b);

struct RankedEmoji {
  std::string codepoint;
  std::optional<double> score;  // nothing sorts after every defined score

  bool operator==(const RankedEmoji&) const = default;
};

using CodepointSet = std::set<std::string>;

struct Ranking {
  std::vector<RankedEmoji> entries;
  int k = 0;
  std::optional<CodepointSet> restriction;
};

// Strict total order used by Rank(): defined scores first, higher score first,
// then ascending codepoint.
bool RanksBefore(const RankedEmoji& a, const RankedEmoji& b);

// Scores every candidate emoji and returns the first min(k, |candidates|).
// Candidates are the non-flagged emojis of `emojis`, intersected with
// `restriction` when one is given. Throws Error(kNoCandidates) when nothing
// is left to rank and Error(kInvalidArgument) when k < 1.
Ranking Rank(std::span<const double> query, const EmojiVectorSet& emojis, int k,
             const CodepointSet* restriction = nullptr);

inline Ranking Rank(const QueryVector& query, const EmojiVectorSet& emojis, int k,
                    const CodepointSet* restriction = nullptr) {
  return Rank(query.vector, emojis, k, restriction);
}

}  // namespace emojirec
