#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "test_util.h"

namespace {

const std::string kData = EMOJIREC_TEST_DATA;
const std::string kGolden = kData + "/golden";
const std::string kFixtureFlags = " --embeddings " + kGolden + "/embeddings.vec --inventory " +
                                  kGolden + "/inventory.json";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult Run(const std::string& args) {
  testutil::TempFile err_file("");
  const std::string cmd = std::string(EMOJIREC_CLI) + " " + args + " 2>" + err_file.path();
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = testutil::ReadFile(err_file.path());
  return result;
}

std::vector<std::string> Lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("build writes one vector per emoji and is reproducible") {
  testutil::TempFile out1("", ".json"), out2("", ".json");
  auto r = Run("build" + kFixtureFlags + " --strategy senses --out " + out1.path());
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(testutil::ReadFile(out1.path()));
  CHECK(doc["format"] == "emojirec.vectors");
  CHECK(doc["dimension"] == 6);
  REQUIRE(doc["sets"].size() == 1);
  CHECK(doc["sets"][0]["strategy"] == "senses");
  CHECK(doc["sets"][0]["emojis"].size() == 10);

  REQUIRE(Run("build" + kFixtureFlags + " --strategy senses --out " + out2.path()).exit_code == 0);
  CHECK(testutil::ReadFile(out1.path()) == testutil::ReadFile(out2.path()));
}

TEST_CASE("build on a three emoji inventory") {
  testutil::TempFile inv(R"({"version": "t", "emojis": [
    {"codepoint": "U+1F436", "name": "dog face", "senses": [{"word": "dog", "pos": "n"}]},
    {"codepoint": "U+1F431", "name": "cat face", "senses": [{"word": "cat", "pos": "n"}]},
    {"codepoint": "U+1F30A", "name": "water wave", "senses": [{"word": "wave", "pos": "n"}]}]})");
  auto r = Run("build --embeddings " + kGolden + "/embeddings.vec --inventory " + inv.path() +
               " --strategy senses --out -");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["sets"][0]["emojis"].size() == 3);
}

TEST_CASE("missing inventory flag is a usage error") {
  auto r = Run("build --embeddings " + kGolden + "/embeddings.vec --out /dev/null");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--inventory") != std::string::npos);
}

TEST_CASE("unreadable input files exit 2") {
  CHECK(Run("build --embeddings /nonexistent.vec --inventory " + kGolden +
            "/inventory.json --out -")
            .exit_code == 2);
  CHECK(Run("build --embeddings " + kGolden + "/embeddings.vec --inventory /nonexistent.json")
            .exit_code == 2);
  CHECK(Run("build" + kFixtureFlags + " --strategy bogus").exit_code == 2);
}

TEST_CASE("recommend prints k ranked lines") {
  auto r = Run("recommend" + kFixtureFlags +
               " --strategy senses --mode v --k 5 --class 'golden retriever=0.9'");
  REQUIRE(r.exit_code == 0);
  auto lines = Lines(r.out);
  REQUIRE(lines.size() == 5);
  double prev = 2.0;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    int rank;
    std::string cp;
    double score;
    row >> rank >> cp >> score;
    CHECK(rank == static_cast<int>(i) + 1);
    CHECK(score <= prev);
    prev = score;
  }
  // The dog emoji is the hand-picked best match for a retriever.
  CHECK(lines[0].find("U+1F436") != std::string::npos);
}

TEST_CASE("recommend uses the caption in vt mode") {
  const std::string q = " --strategy processed_definitions --k 1 --class 'candle=0.5'"
                        " --caption 'a sweet cake for dessert'";
  auto v = Run("recommend" + kFixtureFlags + q + " --mode v");
  auto vt = Run("recommend" + kFixtureFlags + q + " --mode vt");
  REQUIRE(v.exit_code == 0);
  REQUIRE(vt.exit_code == 0);
  // A candle alone reads as a party; the caption tips it to the cake.
  CHECK(v.out.find("U+1F389") != std::string::npos);
  CHECK(vt.out.find("U+1F382") != std::string::npos);
}

TEST_CASE("v and vt agree on a caption-less query") {
  const std::string q = " --strategy senses --k 5 --class 'volleyball=0.6'"
                        " --class 'seashore, coast, seacoast=0.3'";
  auto v = Run("recommend" + kFixtureFlags + q + " --mode v");
  auto vt = Run("recommend" + kFixtureFlags + q + " --mode vt");
  REQUIRE(v.exit_code == 0);
  REQUIRE(vt.exit_code == 0);
  CHECK(v.out == vt.out);
  CHECK(vt.err.find("warning") != std::string::npos);
  CHECK(v.err.find("warning") == std::string::npos);
}

TEST_CASE("recommend json output and prebuilt vectors") {
  testutil::TempFile vectors("", ".json");
  REQUIRE(Run("build" + kFixtureFlags + " --out " + vectors.path()).exit_code == 0);
  auto built = Run("recommend --embeddings " + kGolden + "/embeddings.vec --vectors " +
                   vectors.path() + " --strategy names --k 3 --json --query " + kGolden +
                   "/queries.jsonl");
  auto direct = Run("recommend" + kFixtureFlags + " --strategy names --k 3 --json --query " +
                    kGolden + "/queries.jsonl");
  REQUIRE(built.exit_code == 0);
  CHECK(built.out == direct.out);
  auto lines = Lines(built.out);
  REQUIRE(lines.size() == 12);
  auto first = nlohmann::json::parse(lines[0]);
  CHECK(first["id"] == "q01");
  CHECK(first["ranking"].size() == 3);
}

TEST_CASE("empty query exits 3") {
  auto r = Run("recommend" + kFixtureFlags + " --mode v --class 'zzz unknown=0.9'");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("EmptyQuery") != std::string::npos);
}

TEST_CASE("evaluate writes an eight row csv") {
  testutil::TempFile prefix("");
  auto r = Run("evaluate" + kFixtureFlags + " --queries " + kGolden +
               "/queries.jsonl --strategy senses,processed_definitions --mode v,vt --k 1,3 --out " +
               prefix.path());
  REQUIRE(r.exit_code == 0);
  auto csv = Lines(testutil::ReadFile(prefix.path() + ".csv"));
  CHECK(csv.size() == 9);
  CHECK(csv[0] == "strategy,mode,k,restriction,hits,total,accuracy");
  auto json = nlohmann::json::parse(testutil::ReadFile(prefix.path() + ".json"));
  CHECK(json["cells"].size() == 8);
  CHECK(r.out.find("processed_definitions") != std::string::npos);
  std::filesystem::remove(prefix.path() + ".csv");
  std::filesystem::remove(prefix.path() + ".json");
}

TEST_CASE("evaluate with a top-n restriction echoes the set") {
  testutil::TempFile prefix("");
  auto r = Run("evaluate" + kFixtureFlags + " --queries " + kGolden +
               "/queries.jsonl --restrict-top 20 --out " + prefix.path());
  REQUIRE(r.exit_code == 0);
  auto json = nlohmann::json::parse(testutil::ReadFile(prefix.path() + ".json"));
  const auto& restriction = json["config"]["restrictions"][0];
  CHECK(restriction["name"] == "top20");
  CHECK(restriction["codepoints"].size() <= 20);
  CHECK(restriction["codepoints"].size() == 10);
  std::filesystem::remove(prefix.path() + ".csv");
  std::filesystem::remove(prefix.path() + ".json");
}

TEST_CASE("evaluate csv matches the reference accuracies") {
  testutil::TempFile prefix("");
  REQUIRE(Run("evaluate" + kFixtureFlags + " --queries " + kGolden + "/queries.jsonl --out " +
              prefix.path())
              .exit_code == 0);
  const std::string csv = testutil::ReadFile(prefix.path() + ".csv");
  // Frozen from tests/oracle/golden_oracle.py.
  CHECK(csv.find("processed_definitions,VT,1,all,8,12,0.666667\n") != std::string::npos);
  CHECK(csv.find("processed_definitions,VT,3,all,11,12,0.916667\n") != std::string::npos);
  CHECK(csv.find("definitions,V,1,all,6,11,0.545455\n") != std::string::npos);
  CHECK(csv.find("names,VT,3,all,12,12,1.000000\n") != std::string::npos);
  std::filesystem::remove(prefix.path() + ".csv");
  std::filesystem::remove(prefix.path() + ".json");
}

TEST_CASE("evaluate with no valid queries exits 4") {
  testutil::TempFile bad("{\"id\": \"x\"}\nnot json\n");
  auto r = Run("evaluate" + kFixtureFlags + " --queries " + bad.path());
  CHECK(r.exit_code == 4);
}

TEST_CASE("evaluate with annotation majority labels") {
  auto r = Run("evaluate" + kFixtureFlags + " --queries " + kGolden +
               "/queries.jsonl --annotations " + kData + "/annotations_3.jsonl --strategy senses"
               " --mode vt --k 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("1 without") != std::string::npos);
}

TEST_CASE("kappa command") {
  auto same = Run("kappa --annotations " + kData + "/annotations_identical.jsonl");
  REQUIRE(same.exit_code == 0);
  auto lines = Lines(same.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1] == "0-1\t1.000000");
  CHECK(lines[2] == "0-2\t1.000000");
  CHECK(lines[3] == "1-2\t1.000000");
  CHECK(lines[4] == "mean\t1.000000");

  // Two raters over the 2x2 table [[2, 1], [1, 2]]: p_o = 2/3, p_e = 1/2, kappa = 1/3.
  auto two = Run("kappa --json --annotations " + kData + "/annotations_2.jsonl");
  REQUIRE(two.exit_code == 0);
  auto doc = nlohmann::json::parse(two.out);
  CHECK(doc["pairs"].size() == 1);
  CHECK(doc["pairs"][0]["kappa"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  testutil::TempFile single("{\"id\": \"1\", \"labels\": [\"U+1F600\"]}\n");
  auto one = Run("kappa --annotations " + single.path());
  CHECK(one.exit_code == 2);
  CHECK(one.err.find("need ≥ 2 annotators") != std::string::npos);

  testutil::TempFile broken("{\"id\": \"1\", \"labels\": [\"A\", \"B\"]}\n{oops\n");
  CHECK(Run("kappa --annotations " + broken.path()).exit_code == 2);
}

TEST_CASE("probe-style queries are accepted by recommend and evaluate") {
  const std::string probe = kData + "/probe_queries.jsonl";
  auto rec = Run("recommend" + kFixtureFlags + " --k 2 --json --query " + probe);
  REQUIRE(rec.exit_code == 0);
  CHECK(Lines(rec.out).size() == 3);
  CHECK(rec.err.find(":1:") == std::string::npos);

  // Without annotations every line lacks gold and is rejected.
  CHECK(Run("evaluate" + kFixtureFlags + " --queries " + probe).exit_code == 4);

  testutil::TempFile prefix("");
  auto ev = Run("evaluate" + kFixtureFlags + " --queries " + probe + " --annotations " + kData +
                "/annotations_3.jsonl --out " + prefix.path());
  REQUIRE(ev.exit_code == 0);
  CHECK(ev.err.find("0 queries unannotated") != std::string::npos);
  CHECK(ev.err.find("warning") == std::string::npos);
  std::filesystem::remove(prefix.path() + ".csv");
  std::filesystem::remove(prefix.path() + ".json");
}
