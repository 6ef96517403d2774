#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emojirec/embedding_store.h"
#include "emojirec/knowledge_base.h"

namespace emojirec {

// Emoji vectors for one knowledge strategy, keyed by codepoint.
struct EmojiVectorSet {
  Strategy strategy = Strategy::kSenses;
  int dimension = 0;
  std::map<std::string, Vector> vectors;
  // True exactly when the emoji's knowledge text had no in-vocabulary token.
  std::map<std::string, bool> empty_flags;

  size_t FlaggedCount() const;
};

EmojiVectorSet BuildEmojiVectors(const EmbeddingStore& store,
                                 const EmojiInventory& inventory,
                                 Strategy strategy,
                                 const Preprocessor& preprocessor);

struct ClassProbability {
  std::string label;
  double prob = 0.0;
};

// Classifier output for one image, typically the top-N of a softmax.
struct ClassProbabilities {
  std::vector<ClassProbability> entries;

  // Describes the first violated invariant, if any.
  std::optional<std::string> Validate() const;
};

// Word vector standing in for a classifier label. Comma-separated synonyms
// ("tabby, tabby cat") are flattened into one bag; words inside the bag are
// averaged with their occurrence counts as weights.
BowResult ClassLabelVector(const EmbeddingStore& store, std::string_view label);

// Probability-weighted sum of class label vectors. Labels without coverage
// are dropped along with their probability mass; the remaining sum is not
// renormalized. `coverage` is the probability mass that contributed.
BowResult ImageVector(const EmbeddingStore& store, const ClassProbabilities& probs);

// Bag-of-words vector of a caption after preprocessing.
BowResult CaptionVector(const EmbeddingStore& store, std::string_view caption,
                        const Preprocessor& preprocessor);

enum class QueryMode { kV, kVT };
enum class Fusion { kNormalizeAdd, kRawAdd };

const char* QueryModeName(QueryMode m);
std::optional<QueryMode> ParseQueryMode(std::string_view name);
const char* FusionName(Fusion f);
std::optional<Fusion> ParseFusion(std::string_view name);

struct QueryVector {
  Vector vector;
  QueryMode mode = QueryMode::kV;
  double image_coverage = 0.0;
  std::optional<double> caption_coverage;  // unset in V mode
  // VT was requested but the caption had no coverage, so V was used.
  bool degraded = false;
};

// V:  the image vector as is.
// VT: image + caption. With kNormalizeAdd each part is scaled to unit length
//     before the sum; kRawAdd adds them unchanged.
// Throws Error(kEmptyQuery) when no usable component remains.
QueryVector ComposeQuery(const BowResult& image, const BowResult* caption,
                         QueryMode mode, Fusion fusion = Fusion::kNormalizeAdd);

double L2Norm(std::span<const double> v);

}  // namespace emojirec
