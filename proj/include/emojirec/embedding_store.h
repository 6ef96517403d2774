#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace emojirec {

using Vector = std::vector<double>;

// Token -> occurrence count. Ordered so that every sum over a bag is taken in
// the same order regardless of how the bag was filled.
using TokenCounts = std::map<std::string, int>;

// Immutable word-vector table. Keys are case-normalized (ASCII lowercase);
// when a file contains two tokens that collide after normalization the first
// one wins and duplicate_count() is incremented.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  int dimension() const { return dimension_; }
  size_t token_count() const { return index_.size(); }
  size_t duplicate_count() const { return duplicates_; }

  // Returns the vector for `token`, or nothing when the token is unknown.
  std::optional<std::span<const double>> Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token).has_value(); }

  // Tokens in load order.
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Builds a store from in-memory rows; used by the loader and by tests.
  // Throws Error(kDimensionMismatch) when rows disagree on length.
  static EmbeddingStore FromRows(
      const std::vector<std::pair<std::string, Vector>>& rows);

 private:
  friend class EmbeddingStoreBuilder;

  int dimension_ = 0;
  size_t duplicates_ = 0;
  std::vector<std::string> tokens_;
  std::vector<double> data_;  // row-major, tokens_.size() x dimension_
  std::unordered_map<std::string, size_t> index_;
};

// Reads the plain-text word2vec / fastText .vec format:
//
//   [<count> <dim>]          optional header
//   <token> <f1> ... <fD>    one row per token
//
// The dimension is taken from the header, or from the first row when there is
// no header. Any malformed row aborts the load with the offending line number.
EmbeddingStore LoadWordEmbeddings(const std::string& path,
                                  std::optional<int> expected_dim = {});

// Same as LoadWordEmbeddings() but reads from an in-memory buffer. `source`
// is only used in diagnostics.
EmbeddingStore ParseWordEmbeddings(std::string_view text,
                                   std::optional<int> expected_dim = {},
                                   const std::string& source = "<memory>");

// Lowercases ASCII, splits on whitespace and punctuation (ASCII and the common
// Unicode ranges) and drops emoji codepoints. Other non-ASCII letters are kept
// as part of tokens.
std::vector<std::string> Tokenize(std::string_view text);

// Maps an inflected English word to its base form.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string Lemmatize(std::string_view word) const = 0;
};

// Suffix-stripping lemmatizer for English: plural nouns, third person -s,
// -ed and -ing forms, plus an exception table for irregular forms. Every rule
// strictly shortens the word, and rules are applied until nothing changes, so
// Lemmatize(Lemmatize(w)) == Lemmatize(w) for every w.
class RuleLemmatizer : public Lemmatizer {
 public:
  std::string Lemmatize(std::string_view word) const override;
};

class StopwordSet {
 public:
  StopwordSet() = default;
  StopwordSet(std::unordered_set<std::string> words, std::string version)
      : words_(std::move(words)), version_(std::move(version)) {}

  // The built-in English list (includes all articles).
  static StopwordSet Default();
  // One word per line; blank lines and lines starting with '#' are ignored.
  static StopwordSet FromFile(const std::string& path);

  bool Contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
  }
  size_t size() const { return words_.size(); }
  const std::string& version() const { return version_; }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

// Stopword removal followed by lemmatization. A lemma that is itself a
// stopword is dropped as well, which keeps Process() idempotent.
class Preprocessor {
 public:
  Preprocessor();
  Preprocessor(StopwordSet stopwords, std::shared_ptr<const Lemmatizer> lemmatizer);

  std::vector<std::string> Process(const std::vector<std::string>& tokens) const;

  const StopwordSet& stopwords() const { return stopwords_; }

 private:
  StopwordSet stopwords_;
  std::shared_ptr<const Lemmatizer> lemmatizer_;
};

struct BowResult {
  Vector vector;
  int tokens_total = 0;  // distinct tokens (or labels) offered
  int tokens_found = 0;  // distinct tokens (or labels) found in the store
  // Fraction of the offered weight that contributed: count mass for text,
  // probability mass for images.
  double coverage = 0.0;

  bool empty() const { return tokens_found == 0; }
};

TokenCounts CountTokens(const std::vector<std::string>& tokens);

// Count-weighted mean of the vectors of the tokens present in the store.
// Unknown tokens are left out of both the weighted sum and the total weight.
// With no known token the result is the zero vector and empty() is true.
BowResult BowEmbedding(const EmbeddingStore& store, const TokenCounts& counts);

}  // namespace emojirec
