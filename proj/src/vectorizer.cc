#include "emojirec/vectorizer.h"

#include <cmath>
#include <unordered_set>

#include "emojirec/error.h"

namespace emojirec {

size_t EmojiVectorSet::FlaggedCount() const {
  size_t n = 0;
  for (const auto& [cp, flagged] : empty_flags) n += flagged ? 1 : 0;
  return n;
}

EmojiVectorSet BuildEmojiVectors(const EmbeddingStore& store,
                                 const EmojiInventory& inventory,
                                 Strategy strategy,
                                 const Preprocessor& preprocessor) {
  EmojiVectorSet set;
  set.strategy = strategy;
  set.dimension = store.dimension();
  for (const auto& record : inventory.records) {
    BowResult bow = BowEmbedding(store, KnowledgeText(record, strategy, preprocessor));
    set.empty_flags[record.codepoint] = bow.empty();
    set.vectors[record.codepoint] = std::move(bow.vector);
  }
  return set;
}

std::optional<std::string> ClassProbabilities::Validate() const {
  std::unordered_set<std::string> labels;
  double sum = 0.0;
  for (const auto& e : entries) {
    if (e.label.empty()) return "empty class label";
    if (!labels.insert(e.label).second) return "duplicate class label '" + e.label + "'";
    if (!std::isfinite(e.prob) || e.prob < 0.0 || e.prob > 1.0) {
      return "probability of '" + e.label + "' outside [0, 1]";
    }
    sum += e.prob;
  }
  if (sum > 1.0 + 1e-6) {
    return "class probabilities sum to " + std::to_string(sum) + " (> 1)";
  }
  return std::nullopt;
}

BowResult ClassLabelVector(const EmbeddingStore& store, std::string_view label) {
  // Tokenize() already treats commas as separators, so flattening synonym
  // groups is the same as tokenizing the whole label.
  return BowEmbedding(store, CountTokens(Tokenize(label)));
}

BowResult ImageVector(const EmbeddingStore& store, const ClassProbabilities& probs) {
  BowResult result;
  result.vector.assign(static_cast<size_t>(store.dimension()), 0.0);
  result.tokens_total = static_cast<int>(probs.entries.size());
  for (const auto& [label, p] : probs.entries) {
    BowResult cls = ClassLabelVector(store, label);
    if (cls.empty()) continue;
    ++result.tokens_found;
    result.coverage += p;
    for (size_t j = 0; j < result.vector.size(); ++j) {
      result.vector[j] += cls.vector[j] * p;
    }
  }
  return result;
}

BowResult CaptionVector(const EmbeddingStore& store, std::string_view caption,
                        const Preprocessor& preprocessor) {
  return BowEmbedding(store, CountTokens(preprocessor.Process(Tokenize(caption))));
}

const char* QueryModeName(QueryMode m) { return m == QueryMode::kV ? "V" : "VT"; }

std::optional<QueryMode> ParseQueryMode(std::string_view name) {
  if (name == "v" || name == "V") return QueryMode::kV;
  if (name == "vt" || name == "VT" || name == "v+t" || name == "V+T") return QueryMode::kVT;
  return std::nullopt;
}

const char* FusionName(Fusion f) {
  return f == Fusion::kNormalizeAdd ? "normalize-add" : "raw-add";
}

std::optional<Fusion> ParseFusion(std::string_view name) {
  if (name == "normalize-add") return Fusion::kNormalizeAdd;
  if (name == "raw-add") return Fusion::kRawAdd;
  return std::nullopt;
}

double L2Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

namespace {

void AddScaled(const Vector& part, Fusion fusion, Vector* out) {
  double scale = 1.0;
  if (fusion == Fusion::kNormalizeAdd) {
    const double norm = L2Norm(part);
    if (norm > 0.0) scale = 1.0 / norm;
  }
  for (size_t j = 0; j < out->size(); ++j) (*out)[j] += part[j] * scale;
}

}  // namespace

QueryVector ComposeQuery(const BowResult& image, const BowResult* caption,
                         QueryMode mode, Fusion fusion) {
  QueryVector q;
  q.mode = mode;
  q.image_coverage = image.coverage;

  const bool use_caption = mode == QueryMode::kVT && caption && !caption->empty();
  if (mode == QueryMode::kVT && !use_caption) q.degraded = true;

  if (!use_caption) {
    if (image.empty()) throw Error(ErrorCode::kEmptyQuery, "EmptyQuery: image has no coverage");
    q.vector = image.vector;
    if (mode == QueryMode::kVT) q.caption_coverage = 0.0;
    return q;
  }

  if (!image.empty() && image.vector.size() != caption->vector.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "image and caption dimensions differ");
  }
  q.caption_coverage = caption->coverage;
  q.vector.assign(caption->vector.size(), 0.0);
  if (!image.empty()) AddScaled(image.vector, fusion, &q.vector);
  AddScaled(caption->vector, fusion, &q.vector);
  return q;
}

}  // namespace emojirec
