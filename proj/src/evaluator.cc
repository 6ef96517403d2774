#include "emojirec/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "emojirec/error.h"

namespace emojirec {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string ReadFile(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open ") + what + " " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line_no, line);
  }
}

std::optional<std::string> ParseQuery(const json& obj, const QueryLoadOptions& options,
                                      LabeledQuery* q) {
  if (!obj.is_object()) return "line is not a JSON object";
  if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty()) {
    return "missing \"id\"";
  }
  q->id = obj["id"].get<std::string>();

  if (!obj.contains("classes") || !obj["classes"].is_array()) return "missing \"classes\" array";
  for (const auto& c : obj["classes"]) {
    if (!c.is_object() || !c.contains("label") || !c["label"].is_string() ||
        !c.contains("prob") || !c["prob"].is_number()) {
      return "class entries need a string \"label\" and a numeric \"prob\"";
    }
    q->classes.entries.push_back({c["label"].get<std::string>(), c["prob"].get<double>()});
  }
  if (auto problem = q->classes.Validate()) return *problem;

  if (obj.contains("caption") && !obj["caption"].is_null()) {
    if (!obj["caption"].is_string()) return "\"caption\" is not a string";
    q->caption = obj["caption"].get<std::string>();
  }

  if (obj.contains("gold") && !obj["gold"].is_null()) {
    if (!obj["gold"].is_string()) return "\"gold\" is not a string";
    auto gold = NormalizeCodepoint(obj["gold"].get<std::string>());
    if (!gold) return "malformed \"gold\" codepoint '" + obj["gold"].get<std::string>() + "'";
    q->gold = *gold;
  } else if (options.require_gold) {
    return "missing \"gold\"";
  }
  return std::nullopt;
}

}  // namespace

QueryLoadResult ParseQueries(std::string_view text, const QueryLoadOptions& options,
                             const std::string& source) {
  QueryLoadResult result;
  std::unordered_set<std::string> ids;
  ForEachLine(text, [&](size_t line_no, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      result.rejected.push_back({line_no, "invalid JSON"});
      return;
    }
    LabeledQuery q;
    if (auto problem = ParseQuery(obj, options, &q)) {
      result.rejected.push_back({line_no, *problem});
      return;
    }
    if (!ids.insert(q.id).second) {
      result.rejected.push_back({line_no, "duplicate id '" + q.id + "'"});
      return;
    }
    result.queries.push_back(std::move(q));
  });
  if (result.queries.empty()) {
    throw Error(ErrorCode::kNoValidQueries, source + ": no valid queries (" +
                                                std::to_string(result.rejected.size()) +
                                                " rejected)");
  }
  return result;
}

QueryLoadResult LoadQueries(const std::string& path, const QueryLoadOptions& options) {
  return ParseQueries(ReadFile(path, "query file"), options, path);
}

bool HitAtK(const Ranking& ranking, std::string_view gold, int k) {
  const size_t n = std::min(ranking.entries.size(), static_cast<size_t>(std::max(k, 0)));
  for (size_t i = 0; i < n; ++i) {
    if (ranking.entries[i].codepoint == gold) return true;
  }
  return false;
}

CodepointSet MostFrequentGold(const std::vector<LabeledQuery>& queries, int n) {
  std::map<std::string, long> freq;
  for (const auto& q : queries) {
    if (!q.gold.empty()) ++freq[q.gold];
  }
  std::vector<std::pair<std::string, long>> ordered(freq.begin(), freq.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  CodepointSet top;
  for (size_t i = 0; i < ordered.size() && static_cast<int>(i) < n; ++i) {
    top.insert(ordered[i].first);
  }
  return top;
}

EvalReport Evaluate(const std::vector<LabeledQuery>& input, const EmbeddingStore& store,
                    const EmojiInventory& inventory, const Preprocessor& preprocessor,
                    const GridConfig& config) {
  if (config.strategies.empty() || config.modes.empty() || config.ks.empty() ||
      config.restrictions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation grid is empty");
  }
  for (int k : config.ks) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  }

  // Canonical order makes every sum below independent of input order.
  std::vector<const LabeledQuery*> queries;
  for (const auto& q : input) queries.push_back(&q);
  std::sort(queries.begin(), queries.end(), [](const LabeledQuery* a, const LabeledQuery* b) {
    if (a->id != b->id) return a->id < b->id;
    if (a->gold != b->gold) return a->gold < b->gold;
    return a->caption < b->caption;
  });

  EvalReport report;
  report.config = config;
  report.query_count = queries.size();
  report.embedding_dimension = store.dimension();
  report.embedding_tokens = store.token_count();
  report.inventory_version = inventory.source_version;
  report.inventory_size = inventory.records.size();
  report.stopwords_version = preprocessor.stopwords().version();

  for (const auto& r : config.restrictions) {
    if (r.top_n) report.restriction_sets[r.name] = MostFrequentGold(input, *r.top_n);
  }

  std::vector<BowResult> images, captions;
  images.reserve(queries.size());
  captions.reserve(queries.size());
  for (const LabeledQuery* q : queries) {
    images.push_back(ImageVector(store, q->classes));
    captions.push_back(CaptionVector(store, q->caption, preprocessor));
    report.max_classes = std::max(report.max_classes, q->classes.entries.size());
    report.mean_image_coverage += images.back().coverage;
    report.mean_caption_coverage += captions.back().coverage;
    if (images.back().empty()) ++report.empty_images;
    if (captions.back().empty()) ++report.empty_captions;
  }
  if (!queries.empty()) {
    report.mean_image_coverage /= static_cast<double>(queries.size());
    report.mean_caption_coverage /= static_cast<double>(queries.size());
  }

  const int max_k = *std::max_element(config.ks.begin(), config.ks.end());

  for (Strategy strategy : config.strategies) {
    if (report.emoji_coverage.count(strategy)) continue;  // repeated strategy
    const EmojiVectorSet vectors = BuildEmojiVectors(store, inventory, strategy, preprocessor);
    report.emoji_coverage[strategy] = {vectors.vectors.size(), vectors.FlaggedCount()};

    for (QueryMode mode : config.modes) {
      const std::string skip_prefix =
          std::string(StrategyName(strategy)) + "/" + QueryModeName(mode) + ": ";
      for (size_t qi = 0; qi < queries.size(); ++qi) {
        const LabeledQuery& q = *queries[qi];
        std::optional<QueryVector> query;
        std::string skip_reason;
        try {
          query = ComposeQuery(images[qi], &captions[qi], mode, config.fusion);
        } catch (const Error& e) {
          skip_reason = ErrorCodeName(e.code());
        }

        for (const auto& restriction : config.restrictions) {
          const CodepointSet* allowed = nullptr;
          if (restriction.top_n) allowed = &report.restriction_sets[restriction.name];

          auto cell = [&](int k) -> CellResult& {
            return report.cells[CellKey{strategy, mode, restriction.name, k}];
          };
          if (allowed && !allowed->count(q.gold)) {
            for (int k : config.ks) ++cell(k).excluded;
            continue;
          }
          std::optional<Ranking> ranking;
          std::string reason = skip_reason;
          if (query) {
            try {
              ranking = Rank(*query, vectors, max_k, allowed);
            } catch (const Error& e) {
              reason = ErrorCodeName(e.code());
            }
          }
          if (!ranking) {
            for (int k : config.ks) ++cell(k).skipped;
            ++report.skip_reasons[skip_prefix + reason];
            continue;
          }
          for (int k : config.ks) cell(k).tally.Add(HitAtK(*ranking, q.gold, k));

          if (config.record_queries) {
            QueryOutcome outcome{q.id, strategy, mode, restriction.name, q.gold, 0,
                                 ranking->entries};
            for (size_t i = 0; i < ranking->entries.size(); ++i) {
              if (ranking->entries[i].codepoint == q.gold) {
                outcome.gold_rank = static_cast<int>(i) + 1;
                break;
              }
            }
            report.outcomes.push_back(std::move(outcome));
          }
        }
      }
    }
  }
  return report;
}

namespace {

std::string FormatAccuracy(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace

ordered_json EvalReport::ToJson() const {
  ordered_json out;
  out["format"] = "emojirec.report";
  out["version"] = 1;

  ordered_json cfg;
  cfg["strategies"] = ordered_json::array();
  for (Strategy s : config.strategies) cfg["strategies"].push_back(StrategyName(s));
  cfg["modes"] = ordered_json::array();
  for (QueryMode m : config.modes) cfg["modes"].push_back(QueryModeName(m));
  cfg["k"] = config.ks;
  cfg["restrictions"] = ordered_json::array();
  for (const auto& r : config.restrictions) {
    ordered_json rj;
    rj["name"] = r.name;
    if (r.top_n) {
      rj["top_n"] = *r.top_n;
      auto it = restriction_sets.find(r.name);
      rj["codepoints"] = it == restriction_sets.end() ? ordered_json::array()
                                                      : ordered_json(it->second);
    } else {
      rj["top_n"] = nullptr;
    }
    cfg["restrictions"].push_back(std::move(rj));
  }
  cfg["fusion"] = FusionName(config.fusion);
  cfg["stopwords"] = stopwords_version;
  cfg["embedding_dimension"] = embedding_dimension;
  cfg["embedding_tokens"] = embedding_tokens;
  cfg["inventory_version"] = inventory_version;
  cfg["inventory_size"] = inventory_size;
  cfg["queries"] = query_count;
  cfg["max_classes_per_query"] = max_classes;
  out["config"] = std::move(cfg);

  ordered_json cov;
  for (const auto& [strategy, c] : emoji_coverage) {
    cov["emoji_vectors"][StrategyName(strategy)] = {{"emojis", c.emojis},
                                                    {"flagged", c.flagged}};
  }
  cov["image"] = {{"mean_coverage", mean_image_coverage}, {"empty", empty_images}};
  cov["caption"] = {{"mean_coverage", mean_caption_coverage}, {"empty", empty_captions}};
  out["coverage"] = std::move(cov);

  out["cells"] = ordered_json::array();
  for (const auto& [key, cell] : cells) {
    ordered_json c;
    c["strategy"] = StrategyName(key.strategy);
    c["mode"] = QueryModeName(key.mode);
    c["k"] = key.k;
    c["restriction"] = key.restriction;
    c["hits"] = cell.tally.hits();
    c["total"] = cell.tally.total();
    c["accuracy"] = cell.tally.accuracy();
    c["skipped"] = cell.skipped;
    c["excluded"] = cell.excluded;
    out["cells"].push_back(std::move(c));
  }
  out["skips"] = ordered_json::object();
  for (const auto& [reason, n] : skip_reasons) out["skips"][reason] = n;

  if (config.record_queries) {
    out["queries"] = ordered_json::array();
    for (const auto& o : outcomes) {
      ordered_json q;
      q["id"] = o.id;
      q["strategy"] = StrategyName(o.strategy);
      q["mode"] = QueryModeName(o.mode);
      q["restriction"] = o.restriction;
      q["gold"] = o.gold;
      q["gold_rank"] = o.gold_rank;
      q["top"] = ordered_json::array();
      for (const auto& e : o.top) {
        q["top"].push_back({{"codepoint", e.codepoint},
                            {"score", e.score ? ordered_json(*e.score) : ordered_json()}});
      }
      out["queries"].push_back(std::move(q));
    }
  }
  return out;
}

std::string EvalReport::ToCsv() const {
  std::string out = "strategy,mode,k,restriction,hits,total,accuracy\n";
  for (const auto& [key, cell] : cells) {
    out += StrategyName(key.strategy);
    out += ',';
    out += QueryModeName(key.mode);
    out += ',' + std::to_string(key.k) + ',' + key.restriction + ',' +
           std::to_string(cell.tally.hits()) + ',' + std::to_string(cell.tally.total()) + ',' +
           FormatAccuracy(cell.tally.accuracy()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annotator agreement

std::optional<std::string> MajorityLabel(std::span<const std::string> labels) {
  std::map<std::string, int> votes;
  for (const auto& l : labels) ++votes[l];
  const std::string* best = nullptr;
  int best_votes = 0;
  bool tied = false;
  for (const auto& [label, n] : votes) {
    if (n > best_votes) {
      best = &label;
      best_votes = n;
      tied = false;
    } else if (n == best_votes) {
      tied = true;
    }
  }
  if (!best || tied) return std::nullopt;
  return *best;
}

double CohenKappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "kappa over label lists of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  if (a.empty()) throw Error(ErrorCode::kLengthMismatch, "kappa over empty label lists");

  std::unordered_map<std::string, long> count_a, count_b;
  long agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    if (a[i] == b[i]) ++agree;
  }
  // With n items: p_o = agree / n and p_e = sum(ca * cb) / n^2, so
  // kappa = (agree * n - sum) / (n^2 - sum) in exact integer arithmetic.
  const long n = static_cast<long>(a.size());
  long chance = 0;
  for (const auto& [label, ca] : count_a) {
    if (auto it = count_b.find(label); it != count_b.end()) chance += ca * it->second;
  }
  const long denominator = n * n - chance;
  if (denominator == 0) return 1.0;
  return static_cast<double>(agree * n - chance) / static_cast<double>(denominator);
}

std::vector<std::string> AnnotationSet::AnnotatorColumn(size_t annotator) const {
  std::vector<std::string> column;
  column.reserve(labels.size());
  for (const auto& row : labels) column.push_back(row.at(annotator));
  return column;
}

AnnotationSet ParseAnnotations(std::string_view text, const std::string& source) {
  AnnotationSet set;
  std::unordered_set<std::string> ids;
  ForEachLine(text, [&](size_t line_no, std::string_view line) {
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      throw Error(ErrorCode::kSchema, where + "invalid JSON");
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string()) {
      throw Error(ErrorCode::kSchema, where + "missing \"id\"");
    }
    if (!obj.contains("labels") || !obj["labels"].is_array() || obj["labels"].empty()) {
      throw Error(ErrorCode::kSchema, where + "missing \"labels\" array");
    }
    std::vector<std::string> row;
    for (const auto& l : obj["labels"]) {
      if (!l.is_string()) throw Error(ErrorCode::kSchema, where + "labels must be strings");
      auto normalized = NormalizeCodepoint(l.get<std::string>());
      row.push_back(normalized ? *normalized : l.get<std::string>());
    }
    if (!set.labels.empty() && row.size() != set.annotators()) {
      throw Error(ErrorCode::kSchema, where + "expected " + std::to_string(set.annotators()) +
                                          " labels, found " + std::to_string(row.size()));
    }
    const std::string id = obj["id"].get<std::string>();
    if (!ids.insert(id).second) {
      throw Error(ErrorCode::kSchema, where + "duplicate id '" + id + "'");
    }
    set.item_ids.push_back(id);
    set.labels.push_back(std::move(row));
  });
  if (set.labels.empty()) throw Error(ErrorCode::kSchema, source + ": no annotations");
  return set;
}

AnnotationSet LoadAnnotations(const std::string& path) {
  return ParseAnnotations(ReadFile(path, "annotation file"), path);
}

PairwiseKappaResult PairwiseKappa(const AnnotationSet& annotations) {
  const size_t raters = annotations.annotators();
  if (raters < 2) throw Error(ErrorCode::kInvalidArgument, "need ≥ 2 annotators");
  PairwiseKappaResult result;
  std::vector<std::vector<std::string>> columns;
  for (size_t r = 0; r < raters; ++r) columns.push_back(annotations.AnnotatorColumn(r));
  double sum = 0.0;
  for (size_t i = 0; i < raters; ++i) {
    for (size_t j = i + 1; j < raters; ++j) {
      const double kappa = CohenKappa(columns[i], columns[j]);
      result.pairs.push_back({i, j, kappa});
      sum += kappa;
    }
  }
  result.mean = sum / static_cast<double>(result.pairs.size());
  return result;
}

MajorityGoldResult ApplyMajorityGold(const std::vector<LabeledQuery>& queries,
                                     const AnnotationSet& annotations) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < annotations.item_ids.size(); ++i) {
    index.emplace(annotations.item_ids[i], i);
  }
  MajorityGoldResult result;
  for (const auto& q : queries) {
    auto it = index.find(q.id);
    if (it == index.end()) {
      result.unmatched.push_back(q.id);
      continue;
    }
    auto majority = MajorityLabel(annotations.labels[it->second]);
    if (!majority) {
      result.no_majority.push_back(q.id);
      continue;
    }
    LabeledQuery labeled = q;
    labeled.gold = *majority;
    result.queries.push_back(std::move(labeled));
  }
  return result;
}

}  // namespace emojirec
