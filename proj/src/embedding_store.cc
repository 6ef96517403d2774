#include "emojirec/embedding_store.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "emojirec/error.h"

namespace emojirec {

namespace {

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !IsSpace(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool ParseDouble(std::string_view s, double* out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(*out);
}

bool ParseInt(std::string_view s, long* out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string At(const std::string& source, size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace

class EmbeddingStoreBuilder {
 public:
  explicit EmbeddingStoreBuilder(int dimension) { store_.dimension_ = dimension; }

  // `values` must already have length == dimension.
  void Add(std::string_view token, std::span<const double> values) {
    std::string key = AsciiLower(token);
    if (store_.index_.count(key)) {
      ++store_.duplicates_;
      return;
    }
    store_.index_.emplace(key, store_.tokens_.size());
    store_.tokens_.push_back(std::move(key));
    store_.data_.insert(store_.data_.end(), values.begin(), values.end());
  }

  EmbeddingStore Finish() { return std::move(store_); }

 private:
  EmbeddingStore store_;
};

std::optional<std::span<const double>> EmbeddingStore::Find(
    std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    it = index_.find(AsciiLower(token));
    if (it == index_.end()) return std::nullopt;
  }
  const size_t dim = static_cast<size_t>(dimension_);
  return std::span<const double>(data_.data() + it->second * dim, dim);
}

EmbeddingStore EmbeddingStore::FromRows(
    const std::vector<std::pair<std::string, Vector>>& rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyEmbeddingFile, "no embedding rows");
  }
  const size_t dim = rows.front().second.size();
  if (dim == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimension must be >= 1");
  }
  EmbeddingStoreBuilder builder(static_cast<int>(dim));
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& [token, values] = rows[i];
    if (values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i + 1) + " (" + token + ") has " +
                      std::to_string(values.size()) + " components, expected " +
                      std::to_string(dim));
    }
    if (token.empty()) {
      throw Error(ErrorCode::kMalformedRow,
                  "row " + std::to_string(i + 1) + " has an empty token");
    }
    builder.Add(token, values);
  }
  return builder.Finish();
}

EmbeddingStore ParseWordEmbeddings(std::string_view text,
                                   std::optional<int> expected_dim,
                                   const std::string& source) {
  std::optional<EmbeddingStoreBuilder> builder;
  int dim = 0;
  bool saw_content = false;
  Vector row;

  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto fields = SplitFields(line);
    if (fields.empty()) continue;

    if (!saw_content) {
      saw_content = true;
      long count = 0, header_dim = 0;
      if (fields.size() == 2 && ParseInt(fields[0], &count) &&
          ParseInt(fields[1], &header_dim)) {
        if (header_dim < 1) {
          throw Error(ErrorCode::kMalformedRow,
                      At(source, line_no) + "header dimension must be >= 1");
        }
        dim = static_cast<int>(header_dim);
        if (expected_dim && *expected_dim != dim) {
          throw Error(ErrorCode::kDimensionMismatch,
                      At(source, line_no) + "header declares dimension " +
                          std::to_string(dim) + ", expected " +
                          std::to_string(*expected_dim));
        }
        builder.emplace(dim);
        continue;
      }
    }

    if (fields.size() < 2) {
      throw Error(ErrorCode::kMalformedRow,
                  At(source, line_no) + "expected a token followed by numbers");
    }
    const int row_dim = static_cast<int>(fields.size() - 1);
    if (!builder) {
      dim = row_dim;
      if (expected_dim && *expected_dim != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    At(source, line_no) + "row has dimension " +
                        std::to_string(dim) + ", expected " +
                        std::to_string(*expected_dim));
      }
      builder.emplace(dim);
    }
    if (row_dim != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  At(source, line_no) + "row has " + std::to_string(row_dim) +
                      " components, expected " + std::to_string(dim));
    }
    row.resize(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      if (!ParseDouble(fields[static_cast<size_t>(i) + 1], &row[static_cast<size_t>(i)])) {
        throw Error(ErrorCode::kMalformedRow,
                    At(source, line_no) + "cannot parse component " +
                        std::to_string(i + 1) + " ('" +
                        std::string(fields[static_cast<size_t>(i) + 1]) + "')");
      }
    }
    builder->Add(fields[0], row);
  }

  if (!builder) {
    throw Error(ErrorCode::kEmptyEmbeddingFile, source + ": empty embedding file");
  }
  EmbeddingStore store = builder->Finish();
  if (store.token_count() == 0) {
    throw Error(ErrorCode::kEmptyEmbeddingFile,
                source + ": embedding file has a header but no rows");
  }
  return store;
}

EmbeddingStore LoadWordEmbeddings(const std::string& path,
                                  std::optional<int> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseWordEmbeddings(buffer.str(), expected_dim, path);
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

// Decodes one UTF-8 sequence at `i`. Invalid bytes decode to U+FFFD and
// consume one byte.
char32_t DecodeUtf8(std::string_view s, size_t* i) {
  const auto b0 = static_cast<unsigned char>(s[*i]);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++*i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++*i;
    return 0xFFFD;
  }
  if (*i + static_cast<size_t>(len) > s.size()) {
    ++*i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[*i + static_cast<size_t>(k)]);
    if ((b & 0xC0) != 0x80) {
      ++*i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *i += static_cast<size_t>(len);
  return cp;
}

bool IsUnicodeSpace(char32_t cp) {
  return cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

bool IsUnicodePunct(char32_t cp) {
  return (cp >= 0xA1 && cp <= 0xBF && cp != 0xAA && cp != 0xB5 && cp != 0xBA) ||
         cp == 0xD7 || cp == 0xF7 ||
         (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011) ||
         cp == 0xFFFD;
}

// Pictographs, dingbats, regional indicators, skin tone modifiers, variation
// selectors, the zero width joiner, keycap and tag characters.
bool IsEmoji(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF) ||
         (cp >= 0x2190 && cp <= 0x21FF) || (cp >= 0x2300 && cp <= 0x23FF) ||
         (cp >= 0x2B00 && cp <= 0x2BFF) || (cp >= 0x25A0 && cp <= 0x25FF) ||
         (cp >= 0xFE00 && cp <= 0xFE0F) || cp == 0x200D || cp == 0x20E3 ||
         cp == 0x3030 || cp == 0x303D || cp == 0x3297 || cp == 0x3299 ||
         (cp >= 0xE0020 && cp <= 0xE007F) || cp == 0x00A9 || cp == 0x00AE ||
         cp == 0x2122;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };

  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(text, &i);
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
        current.push_back(c);
      } else if (c >= 'A' && c <= 'Z') {
        current.push_back(static_cast<char>(c - 'A' + 'a'));
      } else {
        flush();  // whitespace, ASCII punctuation, control characters
      }
    } else if (IsUnicodeSpace(cp) || IsUnicodePunct(cp) || IsEmoji(cp)) {
      flush();
    } else {
      current.append(text.substr(start, i - start));
    }
  }
  flush();
  return tokens;
}

// ---------------------------------------------------------------------------
// Lemmatizer

namespace {

const std::unordered_map<std::string, std::string>& IrregularForms() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"am", "be"},          {"are", "be"},           {"is", "be"},
      {"was", "be"},         {"were", "be"},          {"been", "be"},
      {"being", "be"},       {"has", "have"},         {"had", "have"},
      {"having", "have"},    {"does", "do"},          {"did", "do"},
      {"done", "do"},        {"doing", "do"},         {"goes", "go"},
      {"went", "go"},        {"gone", "go"},          {"going", "go"},
      {"men", "man"},        {"women", "woman"},      {"children", "child"},
      {"feet", "foot"},      {"teeth", "tooth"},      {"mice", "mouse"},
      {"geese", "goose"},    {"oxen", "ox"},
      {"lives", "life"},     {"wives", "wife"},       {"knives", "knife"},
      {"leaves", "leaf"},    {"wolves", "wolf"},      {"halves", "half"},
      {"shelves", "shelf"},  {"calves", "calf"},      {"loaves", "loaf"},
      {"thieves", "thief"},  {"heroes", "hero"},      {"potatoes", "potato"},
      {"tomatoes", "tomato"}, {"echoes", "echo"},     {"ran", "run"},
      {"ate", "eat"},        {"eaten", "eat"},        {"saw", "see"},
      {"seen", "see"},       {"made", "make"},        {"took", "take"},
      {"taken", "take"},     {"gave", "give"},        {"given", "give"},
      {"felt", "feel"},      {"thought", "think"},    {"brought", "bring"},
      {"bought", "buy"},     {"caught", "catch"},     {"taught", "teach"},
      {"told", "tell"},      {"said", "say"},         {"found", "find"},
      {"got", "get"},        {"gotten", "get"},       {"kept", "keep"},
      {"slept", "sleep"},    {"held", "hold"},        {"stood", "stand"},
      {"wrote", "write"},    {"written", "write"},    {"spoke", "speak"},
      {"spoken", "speak"},   {"drove", "drive"},      {"driven", "drive"},
      {"rode", "ride"},      {"ridden", "ride"},      {"swam", "swim"},
      {"sang", "sing"},      {"sung", "sing"},        {"began", "begin"},
      {"begun", "begin"},    {"drank", "drink"},      {"drunk", "drink"},
      {"fell", "fall"},      {"fallen", "fall"},      {"flew", "fly"},
      {"flown", "fly"},      {"grew", "grow"},        {"grown", "grow"},
      {"knew", "know"},      {"known", "know"},       {"threw", "throw"},
      {"thrown", "throw"},   {"wore", "wear"},        {"worn", "wear"},
      {"won", "win"},        {"sat", "sit"},          {"met", "meet"},
      {"led", "lead"},       {"broke", "break"},      {"broken", "break"},
      {"chose", "choose"},   {"chosen", "choose"},    {"forgot", "forget"},
      {"forgotten", "forget"}, {"hid", "hide"},       {"hidden", "hide"},
      {"bit", "bite"},       {"bitten", "bite"},      {"shook", "shake"},
      {"shaken", "shake"},   {"woke", "wake"},        {"woken", "wake"},
      {"built", "build"},    {"sent", "send"},        {"spent", "spend"},
      {"lost", "lose"},      {"paid", "pay"},         {"laid", "lay"},
      {"meant", "mean"},     {"heard", "hear"},       {"sold", "sell"},
      {"understood", "understand"}, {"fought", "fight"}, {"sought", "seek"},
      {"dying", "die"},      {"lying", "lie"},        {"tying", "tie"},
      {"used", "use"},       {"using", "use"},        {"better", "good"},
      {"best", "good"},      {"worse", "bad"},        {"worst", "bad"},
      {"excited", "excite"},  {"clothes", "clothes"}, {"news", "news"},
  };
  return *table;
}

// Words that look inflected but are base forms.
const std::unordered_set<std::string>& ProtectedWords() {
  static const auto* words = new std::unordered_set<std::string>{
      "always",   "perhaps",  "series",   "species",  "physics",  "mathematics",
      "lens",     "chaos",    "gas",      "bus",      "plus",     "yes",
      "this",     "thus",     "his",      "hers",     "its",      "ours",
      "yours",    "theirs",   "whereas",  "besides",  "sometimes", "nowadays",
      "hundred",  "sacred",   "naked",    "wicked",   "kindred",  "shred",
      "sled",     "bed",      "red",      "wed",      "bleed",    "breed",
      "during",   "nothing",  "something", "anything", "everything",
      "morning",  "evening",  "ceiling",  "wedding",  "pudding",  "spring",
      "string",   "thing",    "king",     "ring",     "wing",     "sing",
      "bring",    "swing",    "sting",    "ping",     "cling",    "fling",
      "sling",    "darling",  "ding",     "ceiling",  "pudding",  "building",
      "painting", "feeling",  "meeting",  "clothing", "icing",    "stuffing",
      "dumpling", "sibling",  "seedling", "duckling", "earring",  "lightning",
      "interesting", "amazing", "boring", "exciting", "charming",
      "news",     "lens",     "mess",     "kiss",     "boss",
  };
  return *words;
}

bool IsVowelAt(const std::string& w, size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      return i > 0 && !IsVowelAt(w, i - 1);
    default:
      return false;
  }
}

bool IsConsonantAt(const std::string& w, size_t i) {
  const char c = w[i];
  return c >= 'a' && c <= 'z' && !IsVowelAt(w, i);
}

bool HasVowel(const std::string& w) {
  for (size_t i = 0; i < w.size(); ++i) {
    if (IsVowelAt(w, i)) return true;
  }
  return false;
}

bool EndsWith(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Number of vowel->consonant transitions, the "measure" of a stem.
int Measure(const std::string& w) {
  int m = 0;
  bool prev_vowel = false;
  for (size_t i = 0; i < w.size(); ++i) {
    const bool v = IsVowelAt(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

// consonant-vowel-consonant ending where the last consonant is not w, x or y.
bool EndsCvc(const std::string& w) {
  const size_t n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return IsConsonantAt(w, n - 3) && IsVowelAt(w, n - 2) &&
         IsConsonantAt(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

// Repairs a stem left by removing -ed or -ing.
std::string RepairStem(std::string stem) {
  const size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && IsConsonantAt(stem, n - 1) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if ((EndsWith(stem, "at") && n > 3) || EndsWith(stem, "bl") || EndsWith(stem, "iz") ||
      EndsWith(stem, "v") || EndsWith(stem, "nc") || EndsWith(stem, "rc") ||
      EndsWith(stem, "dg") || EndsWith(stem, "rg")) {
    return stem + "e";
  }
  if (Measure(stem) == 1 && EndsCvc(stem)) return stem + "e";
  return stem;
}

// One rewriting step; returns the input unchanged when no rule applies.
std::string LemmaStep(const std::string& w) {
  if (auto it = IrregularForms().find(w); it != IrregularForms().end()) {
    return it->second;
  }
  if (ProtectedWords().count(w) || w.size() <= 3) return w;

  // Plurals and third person singular.
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses")) return w.substr(0, w.size() - 2);
  if (EndsWith(w, "shes") || EndsWith(w, "ches") || EndsWith(w, "xes") ||
      EndsWith(w, "zzes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && !EndsWith(w, "us") &&
      !EndsWith(w, "is") && !EndsWith(w, "ous")) {
    return w.substr(0, w.size() - 1);
  }

  // Past tense and participles.
  if (EndsWith(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "eed")) return w;
  if (EndsWith(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 3 && HasVowel(stem)) {
      std::string repaired = RepairStem(stem);
      // RepairStem may append 'e'; the result must still be shorter than w.
      if (repaired.size() < w.size()) return repaired;
    }
    return w;
  }
  if (EndsWith(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 3 && HasVowel(stem)) return RepairStem(stem);
    return w;
  }
  return w;
}

}  // namespace

std::string RuleLemmatizer::Lemmatize(std::string_view word) const {
  std::string current(word);
  // Every rewrite except the irregular table shortens the word, and table
  // targets are fixed points of the table, so this loop terminates quickly.
  for (int step = 0; step < 16; ++step) {
    std::string next = LemmaStep(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Stopwords and preprocessing

StopwordSet StopwordSet::Default() {
  // English stopword list of the NLTK corpus (179 words), version-pinned.
  static const char* const kWords[] = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
      "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
      "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
      "hers", "herself", "it", "it's", "its", "itself", "they", "them",
      "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
      "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
      "be", "been", "being", "have", "has", "had", "having", "do", "does",
      "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
      "as", "until", "while", "of", "at", "by", "for", "with", "about",
      "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
      "over", "under", "again", "further", "then", "once", "here", "there",
      "when", "where", "why", "how", "all", "any", "both", "each", "few",
      "more", "most", "other", "some", "such", "no", "nor", "not", "only",
      "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
      "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
      "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
      "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
      "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
      "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
      "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
      "won't", "wouldn", "wouldn't",
  };
  std::unordered_set<std::string> words(std::begin(kWords), std::end(kWords));
  return StopwordSet(std::move(words), "builtin-en-v1");
}

StopwordSet StopwordSet::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open stopword file " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto fields = SplitFields(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    words.insert(AsciiLower(fields[0]));
  }
  return StopwordSet(std::move(words), "file:" + path);
}

Preprocessor::Preprocessor()
    : Preprocessor(StopwordSet::Default(), std::make_shared<RuleLemmatizer>()) {}

Preprocessor::Preprocessor(StopwordSet stopwords,
                           std::shared_ptr<const Lemmatizer> lemmatizer)
    : stopwords_(std::move(stopwords)), lemmatizer_(std::move(lemmatizer)) {}

std::vector<std::string> Preprocessor::Process(
    const std::vector<std::string>& tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (stopwords_.Contains(token)) continue;
    std::string lemma = lemmatizer_ ? lemmatizer_->Lemmatize(token) : token;
    if (lemma.empty() || stopwords_.Contains(lemma)) continue;
    out.push_back(std::move(lemma));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bag of words

TokenCounts CountTokens(const std::vector<std::string>& tokens) {
  TokenCounts counts;
  for (const auto& t : tokens) ++counts[t];
  return counts;
}

BowResult BowEmbedding(const EmbeddingStore& store, const TokenCounts& counts) {
  const size_t dim = static_cast<size_t>(store.dimension());
  BowResult result;
  result.vector.assign(dim, 0.0);
  result.tokens_total = static_cast<int>(counts.size());

  double found_weight = 0.0;
  double total_weight = 0.0;
  for (const auto& [token, count] : counts) {
    if (count <= 0) continue;
    total_weight += count;
    auto v = store.Find(token);
    if (!v) continue;
    ++result.tokens_found;
    found_weight += count;
    for (size_t j = 0; j < dim; ++j) result.vector[j] += (*v)[j] * count;
  }
  if (found_weight > 0) {
    for (double& x : result.vector) x /= found_weight;
    result.coverage = found_weight / total_weight;
  }
  return result;
}

}  // namespace emojirec
