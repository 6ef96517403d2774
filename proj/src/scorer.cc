#include "emojirec/scorer.h"

#include <algorithm>
#include <cmath>

#include "emojirec/error.h"

namespace emojirec {

std::optional<double> Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of vectors with " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()) + " components");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  // Snap to a 2^-40 grid: cosines that are equal in exact arithmetic but
  // differ in the last bits (collinear vectors of different length, scaled
  // queries) then compare equal and fall through to the codepoint tie-break.
  const double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(std::nearbyint(cosine * 0x1p40) * 0x1p-40, -1.0, 1.0);
}

bool RanksBefore(const RankedEmoji& a, const RankedEmoji& b) {
  if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
  if (a.score && *a.score != *b.score) return *a.score > *b.score;
  return a.codepoint < b.codepoint;
}

Ranking Rank(std::span<const double> query, const EmojiVectorSet& emojis, int k,
             const CodepointSet* restriction) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");

  std::vector<RankedEmoji> scored;
  scored.reserve(emojis.vectors.size());
  for (const auto& [codepoint, vec] : emojis.vectors) {
    if (restriction && !restriction->count(codepoint)) continue;
    if (auto f = emojis.empty_flags.find(codepoint);
        f != emojis.empty_flags.end() && f->second) {
      continue;
    }
    scored.push_back({codepoint, Cosine(query, vec)});
  }
  if (scored.empty()) throw Error(ErrorCode::kNoCandidates, "NoCandidates");

  const size_t n = std::min(scored.size(), static_cast<size_t>(k));
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n),
                    scored.end(), RanksBefore);
  scored.resize(n);

  Ranking ranking;
  ranking.entries = std::move(scored);
  ranking.k = k;
  if (restriction) ranking.restriction = *restriction;
  return ranking;
}

}  // namespace emojirec
