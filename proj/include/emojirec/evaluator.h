#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "emojirec/embedding_store.h"
#include "emojirec/knowledge_base.h"
#include "emojirec/scorer.h"
#include "emojirec/vectorizer.h"

namespace emojirec {

struct LabeledQuery {
  std::string id;
  ClassProbabilities classes;
  std::string caption;
  std::string gold;  // normalized codepoint; empty only when gold is optional
};

struct RejectedLine {
  size_t line = 0;
  std::string reason;
};

struct QueryLoadOptions {
  // Annotation-driven runs take gold labels from a separate file.
  bool require_gold = true;
};

struct QueryLoadResult {
  std::vector<LabeledQuery> queries;
  std::vector<RejectedLine> rejected;
};

// Reads query JSONL, one object per line:
//   {"id": str, "classes": [{"label": str, "prob": num}], "caption": str,
//    "gold": "U+XXXX[ U+YYYY...]"}
// Unknown fields are ignored. Invalid lines (and repeated ids) are rejected
// with their line number. Throws Error(kNoValidQueries) when nothing is left.
QueryLoadResult ParseQueries(std::string_view text, const QueryLoadOptions& options = {},
                             const std::string& source = "<memory>");
QueryLoadResult LoadQueries(const std::string& path, const QueryLoadOptions& options = {});

// True iff `gold` is among the first min(k, size) ranked entries.
bool HitAtK(const Ranking& ranking, std::string_view gold, int k);

// Running hit count for one grid cell.
class AccuracyTally {
 public:
  void Add(bool hit) {
    ++total_;
    if (hit) ++hits_;
  }
  long hits() const { return hits_; }
  long total() const { return total_; }
  double accuracy() const {
    return total_ == 0 ? 0.0 : static_cast<double>(hits_) / static_cast<double>(total_);
  }

 private:
  long hits_ = 0;
  long total_ = 0;
};

// Candidate restriction: every emoji, or the top_n most frequent gold labels
// of the evaluated dataset (ties broken by codepoint).
struct Restriction {
  std::string name = "all";
  std::optional<int> top_n;

  static Restriction All() { return {}; }
  static Restriction TopN(int n) { return {"top" + std::to_string(n), n}; }
};

struct GridConfig {
  std::vector<Strategy> strategies;
  std::vector<QueryMode> modes;
  std::vector<int> ks;
  std::vector<Restriction> restrictions = {Restriction::All()};
  Fusion fusion = Fusion::kNormalizeAdd;
  bool record_queries = false;  // keep per-query outcomes in the report
};

struct CellKey {
  Strategy strategy;
  QueryMode mode;
  std::string restriction;
  int k;

  auto operator<=>(const CellKey&) const = default;
};

struct CellResult {
  AccuracyTally tally;
  long skipped = 0;   // no usable query vector or no candidates
  long excluded = 0;  // gold outside the candidate restriction
};

struct QueryOutcome {
  std::string id;
  Strategy strategy;
  QueryMode mode;
  std::string restriction;
  std::string gold;
  int gold_rank = 0;  // 1-based position within the top max(k); 0 if absent
  std::vector<RankedEmoji> top;
};

struct StrategyCoverage {
  size_t emojis = 0;
  size_t flagged = 0;
};

struct EvalReport {
  GridConfig config;
  std::map<CellKey, CellResult> cells;
  std::map<std::string, CodepointSet> restriction_sets;
  std::map<Strategy, StrategyCoverage> emoji_coverage;
  std::map<std::string, long> skip_reasons;  // "<strategy>/<mode>: <reason>"

  size_t query_count = 0;
  size_t max_classes = 0;  // largest class list seen in a query
  double mean_image_coverage = 0.0;
  double mean_caption_coverage = 0.0;
  size_t empty_images = 0;
  size_t empty_captions = 0;

  int embedding_dimension = 0;
  size_t embedding_tokens = 0;
  std::string inventory_version;
  size_t inventory_size = 0;
  std::string stopwords_version;

  std::vector<QueryOutcome> outcomes;  // only with config.record_queries

  nlohmann::ordered_json ToJson() const;
  // One row per cell: strategy,mode,k,restriction,hits,total,accuracy
  std::string ToCsv() const;
};

// Runs every (strategy, mode, restriction, k) cell over `queries`. The
// result does not depend on the order of `queries`.
EvalReport Evaluate(const std::vector<LabeledQuery>& queries,
                    const EmbeddingStore& store, const EmojiInventory& inventory,
                    const Preprocessor& preprocessor, const GridConfig& config);

// Top-n gold labels by frequency, ties broken by ascending codepoint.
CodepointSet MostFrequentGold(const std::vector<LabeledQuery>& queries, int n);

// Strict plurality winner, or nothing on a tie for first place.
std::optional<std::string> MajorityLabel(std::span<const std::string> labels);

// Cohen's kappa over the union of categories. When chance agreement is 1
// (both raters always use the same single category) kappa is defined as 1.
// Throws Error(kLengthMismatch) for unequal or empty inputs.
double CohenKappa(std::span<const std::string> a, std::span<const std::string> b);

// Per-item labels from several annotators in a fixed order.
struct AnnotationSet {
  std::vector<std::string> item_ids;
  std::vector<std::vector<std::string>> labels;  // labels[item][annotator]

  size_t annotators() const { return labels.empty() ? 0 : labels.front().size(); }
  std::vector<std::string> AnnotatorColumn(size_t annotator) const;
};

// Annotation JSONL: {"id": str, "labels": [str, ...]} per line. Throws
// Error(kSchema) naming the line on any malformed entry.
AnnotationSet ParseAnnotations(std::string_view text, const std::string& source = "<memory>");
AnnotationSet LoadAnnotations(const std::string& path);

struct PairKappa {
  size_t first = 0;
  size_t second = 0;
  double kappa = 0.0;
};

struct PairwiseKappaResult {
  std::vector<PairKappa> pairs;
  double mean = 0.0;
};

// Kappa for every annotator pair plus the unweighted mean. Throws
// Error(kInvalidArgument) with fewer than two annotators.
PairwiseKappaResult PairwiseKappa(const AnnotationSet& annotations);

struct MajorityGoldResult {
  std::vector<LabeledQuery> queries;
  std::vector<std::string> no_majority;  // item ids dropped for ties
  std::vector<std::string> unmatched;    // query ids with no annotation
};

// Replaces each query's gold with the annotators' majority label.
MajorityGoldResult ApplyMajorityGold(const std::vector<LabeledQuery>& queries,
                                     const AnnotationSet& annotations);

}  // namespace emojirec
