// Command-line front end: build emoji vector artifacts, recommend emojis for
// image queries, run evaluation grids and compute annotator agreement.
//
// Exit codes: 0 success, 2 usage or IO error, 3 empty query, 4 empty dataset.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emojirec/artifact.h"
#include "emojirec/embedding_store.h"
#include "emojirec/error.h"
#include "emojirec/evaluator.h"
#include "emojirec/knowledge_base.h"
#include "emojirec/scorer.h"
#include "emojirec/vectorizer.h"

namespace {

using namespace emojirec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitEmptyQuery = 3;
constexpr int kExitEmptyDataset = 4;

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kEmptyQuery: return kExitEmptyQuery;
    case ErrorCode::kNoValidQueries: return kExitEmptyDataset;
    default: return kExitUsage;
  }
}

// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string embeddings;
  std::string inventory;
  std::string stopwords;
  std::string fusion = "normalize-add";
  std::vector<std::string> strategies;
};

std::vector<Strategy> ParseStrategies(const std::vector<std::string>& names) {
  std::vector<Strategy> out;
  for (const auto& n : names) {
    auto s = ParseStrategy(n);
    if (!s) throw UsageError("--strategy: unknown strategy '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

std::vector<QueryMode> ParseModes(const std::vector<std::string>& names) {
  std::vector<QueryMode> out;
  for (const auto& n : names) {
    auto m = ParseQueryMode(n);
    if (!m) throw UsageError("--mode: unknown mode '" + n + "' (expected v or vt)");
    out.push_back(*m);
  }
  return out;
}

Fusion ParseFusionFlag(const std::string& name) {
  auto f = ParseFusion(name);
  if (!f) throw UsageError("--fusion: expected normalize-add or raw-add, got '" + name + "'");
  return *f;
}

Preprocessor MakePreprocessor(const CommonFlags& flags) {
  if (flags.stopwords.empty()) return Preprocessor();
  return Preprocessor(StopwordSet::FromFile(flags.stopwords),
                      std::make_shared<RuleLemmatizer>());
}

EmojiInventory LoadInventoryVerbose(const std::string& path) {
  InventoryLoadReport report;
  EmojiInventory inventory = LoadInventory(path, &report);
  for (const auto& d : report.diagnostics) std::cerr << "warning: inventory: " << d << "\n";
  if (report.rejected > 0) {
    std::cerr << "inventory: loaded " << report.loaded << ", rejected " << report.rejected
              << "\n";
  }
  return inventory;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

std::string FormatScore(const std::optional<double>& score) {
  if (!score) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *score);
  return buf;
}

// --- build ------------------------------------------------------------------

struct BuildFlags {
  CommonFlags common;
  std::string out;
};

int RunBuild(const BuildFlags& flags) {
  const EmbeddingStore store = LoadWordEmbeddings(flags.common.embeddings);
  const EmojiInventory inventory = LoadInventoryVerbose(flags.common.inventory);
  const Preprocessor preprocessor = MakePreprocessor(flags.common);

  std::vector<EmojiVectorSet> sets;
  for (Strategy s : ParseStrategies(flags.common.strategies)) {
    sets.push_back(BuildEmojiVectors(store, inventory, s, preprocessor));
    std::cerr << StrategyName(s) << ": " << sets.back().vectors.size() << " emojis, "
              << sets.back().FlaggedCount() << " without coverage\n";
  }
  const std::string artifact = SerializeVectorSets(sets);
  if (flags.out.empty() || flags.out == "-") {
    std::cout << artifact;
  } else {
    WriteFile(flags.out, artifact);
  }
  return kExitOk;
}

// --- recommend --------------------------------------------------------------

struct RecommendFlags {
  CommonFlags common;
  std::string vectors;
  std::string query_file;
  std::vector<std::string> classes;  // label=prob
  std::string caption;
  std::string mode = "vt";
  int k = 5;
  bool json = false;
};

ClassProbabilities ParseInlineClasses(const std::vector<std::string>& specs) {
  ClassProbabilities probs;
  for (const auto& spec : specs) {
    const size_t eq = spec.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--class: expected LABEL=PROB, got '" + spec + "'");
    }
    double p = 0.0;
    try {
      size_t used = 0;
      p = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--class: cannot parse probability in '" + spec + "'");
    }
    probs.entries.push_back({spec.substr(0, eq), p});
  }
  if (auto problem = probs.Validate()) throw UsageError("--class: " + *problem);
  return probs;
}

int RunRecommend(const RecommendFlags& flags) {
  if (flags.vectors.empty() && flags.common.inventory.empty()) {
    throw UsageError("recommend needs --inventory or --vectors");
  }
  if (flags.query_file.empty() && flags.classes.empty()) {
    throw UsageError("recommend needs --query or at least one --class");
  }
  const auto modes = ParseModes({flags.mode});
  const Fusion fusion = ParseFusionFlag(flags.common.fusion);
  auto strategies = ParseStrategies(flags.common.strategies);
  if (strategies.size() != 1) throw UsageError("recommend takes exactly one --strategy");

  const EmbeddingStore store = LoadWordEmbeddings(flags.common.embeddings);
  const Preprocessor preprocessor = MakePreprocessor(flags.common);

  EmojiVectorSet vectors;
  if (!flags.vectors.empty()) {
    std::ifstream in(flags.vectors, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + flags.vectors);
    std::ostringstream text;
    text << in.rdbuf();
    bool found = false;
    for (auto& set : ParseVectorSets(text.str())) {
      if (set.strategy == strategies.front()) {
        vectors = std::move(set);
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kSchema, flags.vectors + " has no '" +
                                          StrategyName(strategies.front()) + "' vectors");
    }
    if (vectors.dimension != store.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector artifact and embeddings differ in dimension");
    }
  } else {
    vectors = BuildEmojiVectors(store, LoadInventoryVerbose(flags.common.inventory),
                                strategies.front(), preprocessor);
  }

  std::vector<LabeledQuery> queries;
  if (!flags.query_file.empty()) {
    QueryLoadResult loaded = LoadQueries(flags.query_file, {.require_gold = false});
    for (const auto& r : loaded.rejected) {
      std::cerr << "warning: " << flags.query_file << ":" << r.line << ": " << r.reason << "\n";
    }
    queries = std::move(loaded.queries);
  } else {
    queries.push_back({"inline", ParseInlineClasses(flags.classes), flags.caption, ""});
  }

  for (const auto& q : queries) {
    const BowResult image = ImageVector(store, q.classes);
    const BowResult caption = CaptionVector(store, q.caption, preprocessor);
    const QueryVector query = ComposeQuery(image, &caption, modes.front(), fusion);
    if (query.degraded) {
      std::cerr << "warning: " << q.id
                << ": caption has no in-vocabulary words, using visual features only\n";
    }
    const Ranking ranking = Rank(query, vectors, flags.k);
    if (flags.json) {
      nlohmann::ordered_json out;
      out["id"] = q.id;
      out["mode"] = QueryModeName(query.mode);
      out["degraded"] = query.degraded;
      out["image_coverage"] = query.image_coverage;
      out["ranking"] = nlohmann::ordered_json::array();
      for (const auto& e : ranking.entries) {
        out["ranking"].push_back(
            {{"codepoint", e.codepoint},
             {"score", e.score ? nlohmann::ordered_json(*e.score) : nlohmann::ordered_json()}});
      }
      std::cout << out.dump() << "\n";
    } else {
      if (queries.size() > 1) std::cout << "# " << q.id << "\n";
      for (size_t i = 0; i < ranking.entries.size(); ++i) {
        std::cout << i + 1 << "\t" << ranking.entries[i].codepoint << "\t"
                  << FormatScore(ranking.entries[i].score) << "\n";
      }
    }
  }
  return kExitOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateFlags {
  CommonFlags common;
  std::string queries;
  std::string annotations;
  std::vector<std::string> modes = {"v", "vt"};
  std::vector<int> ks = {1, 3};
  int restrict_top = 0;
  std::string out;
  bool per_query = false;
};

int RunEvaluate(const EvaluateFlags& flags) {
  GridConfig config;
  config.strategies = ParseStrategies(flags.common.strategies);
  config.modes = ParseModes(flags.modes);
  config.ks = flags.ks;
  for (int k : config.ks) {
    if (k < 1) throw UsageError("--k: values must be >= 1");
  }
  config.fusion = ParseFusionFlag(flags.common.fusion);
  config.record_queries = flags.per_query;
  if (flags.restrict_top > 0) config.restrictions = {Restriction::TopN(flags.restrict_top)};

  const EmbeddingStore store = LoadWordEmbeddings(flags.common.embeddings);
  const EmojiInventory inventory = LoadInventoryVerbose(flags.common.inventory);
  const Preprocessor preprocessor = MakePreprocessor(flags.common);

  QueryLoadResult loaded = LoadQueries(flags.queries, {.require_gold = flags.annotations.empty()});
  for (const auto& r : loaded.rejected) {
    std::cerr << "warning: " << flags.queries << ":" << r.line << ": " << r.reason << "\n";
  }
  std::vector<LabeledQuery> queries = std::move(loaded.queries);
  if (!flags.annotations.empty()) {
    MajorityGoldResult majority = ApplyMajorityGold(queries, LoadAnnotations(flags.annotations));
    std::cerr << "annotations: " << majority.queries.size() << " items with a majority label, "
              << majority.no_majority.size() << " without, " << majority.unmatched.size()
              << " queries unannotated\n";
    if (majority.queries.empty()) {
      throw Error(ErrorCode::kNoValidQueries, "no query has a majority label");
    }
    queries = std::move(majority.queries);
  }

  const EvalReport report = Evaluate(queries, store, inventory, preprocessor, config);

  if (!flags.out.empty()) {
    WriteFile(flags.out + ".json", report.ToJson().dump(2) + "\n");
    WriteFile(flags.out + ".csv", report.ToCsv());
  }

  std::printf("%-22s %-3s %-8s %3s %7s %7s %9s\n", "strategy", "mode", "restrict", "k",
              "hits", "total", "accuracy");
  for (const auto& [key, cell] : report.cells) {
    std::printf("%-22s %-4s %-8s %3d %7ld %7ld %8.2f%%\n", StrategyName(key.strategy),
                QueryModeName(key.mode), key.restriction.c_str(), key.k, cell.tally.hits(),
                cell.tally.total(), 100.0 * cell.tally.accuracy());
  }
  return kExitOk;
}

// --- kappa ------------------------------------------------------------------

struct KappaFlags {
  std::string annotations;
  bool json = false;
};

int RunKappa(const KappaFlags& flags) {
  const AnnotationSet annotations = LoadAnnotations(flags.annotations);
  const PairwiseKappaResult result = PairwiseKappa(annotations);
  if (flags.json) {
    nlohmann::ordered_json out;
    out["items"] = annotations.labels.size();
    out["annotators"] = annotations.annotators();
    out["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : result.pairs) {
      out["pairs"].push_back({{"a", p.first}, {"b", p.second}, {"kappa", p.kappa}});
    }
    out["mean"] = result.mean;
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  std::printf("items=%zu annotators=%zu\n", annotations.labels.size(), annotations.annotators());
  for (const auto& p : result.pairs) {
    std::printf("%zu-%zu\t%.6f\n", p.first, p.second, p.kappa);
  }
  std::printf("mean\t%.6f\n", result.mean);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-enabled emoji recommendation for images"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* cmd, CommonFlags* flags, bool require_inventory,
                       std::vector<std::string> default_strategies) {
    cmd->add_option("--embeddings", flags->embeddings, "Word embeddings in text .vec format")
        ->required();
    auto* inv = cmd->add_option("--inventory", flags->inventory, "Emoji inventory JSON");
    if (require_inventory) inv->required();
    cmd->add_option("--stopwords", flags->stopwords, "Stopword list overriding the built-in one");
    cmd->add_option("--fusion", flags->fusion, "normalize-add (default) or raw-add");
    flags->strategies = std::move(default_strategies);
    cmd->add_option("--strategy", flags->strategies,
                    "names, senses, definitions, processed_definitions")
        ->delimiter(',');
  };

  BuildFlags build;
  auto* build_cmd = app.add_subcommand("build", "Build emoji vector sets and write an artifact");
  add_common(build_cmd, &build.common, true,
             {"names", "senses", "definitions", "processed_definitions"});
  build_cmd->add_option("--out", build.out, "Output artifact path ('-' for stdout)");

  RecommendFlags rec;
  auto* rec_cmd = app.add_subcommand("recommend", "Rank emojis for image queries");
  add_common(rec_cmd, &rec.common, false, {"processed_definitions"});
  rec_cmd->add_option("--vectors", rec.vectors, "Prebuilt vector artifact");
  rec_cmd->add_option("--query", rec.query_file, "Query JSONL (gold optional)");
  rec_cmd->add_option("--class", rec.classes, "Inline class probability LABEL=PROB");
  rec_cmd->add_option("--caption", rec.caption, "Inline caption");
  rec_cmd->add_option("--mode", rec.mode, "v or vt");
  rec_cmd->add_option("--k", rec.k, "Number of emojis to print")->check(CLI::PositiveNumber);
  rec_cmd->add_flag("--json", rec.json, "One JSON object per query");

  EvaluateFlags eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run the evaluation grid over a dataset");
  add_common(eval_cmd, &eval.common, true,
             {"names", "senses", "definitions", "processed_definitions"});
  eval_cmd->add_option("--queries", eval.queries, "Labeled query JSONL")->required();
  eval_cmd->add_option("--annotations", eval.annotations,
                       "Annotation JSONL; majority labels replace gold");
  eval_cmd->add_option("--mode", eval.modes, "v and/or vt")->delimiter(',');
  eval_cmd->add_option("--k", eval.ks, "Cutoffs for hit@k")->delimiter(',');
  eval_cmd->add_option("--restrict-top", eval.restrict_top,
                       "Score only the N most frequent gold emojis");
  eval_cmd->add_option("--out", eval.out, "Report path prefix (writes .json and .csv)");
  eval_cmd->add_flag("--per-query", eval.per_query, "Include per-query rankings in the JSON");

  KappaFlags kappa;
  auto* kappa_cmd = app.add_subcommand("kappa", "Pairwise Cohen's kappa between annotators");
  kappa_cmd->add_option("--annotations", kappa.annotations, "Annotation JSONL")->required();
  kappa_cmd->add_flag("--json", kappa.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build_cmd) return RunBuild(build);
    if (*rec_cmd) return RunRecommend(rec);
    if (*eval_cmd) return RunEvaluate(eval);
    if (*kappa_cmd) return RunKappa(kappa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitUsage;
}
