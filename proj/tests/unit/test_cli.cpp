#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "richness/error.hpp"

using namespace richness;
using namespace richness::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("richness_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path / name, std::ios::binary) << content;
    return (path / name).string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "richness");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kTarget =
    "1\tLos\tel\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tpresidentes\tpresidente\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tmiran\tmirar\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n"
    "\n"
    "1\tEl\tel\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tpresidente\tpresidente\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tbusca\tbuscar\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\tcasas\tcasa\tNOUN\t_\t_\t3\tobj\t_\t_\n"
    "\n"
    "1\tLa\tel\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tpresidenta\tpresidente\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tmira\tmirar\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\tla\tel\tDET\t_\t_\t5\tdet\t_\t_\n"
    "5\tcasa\tcasa\tNOUN\t_\t_\t3\tobj\t_\t_\n";

const char* kSource =
    "The\tthe\tDET\npresidents\tpresident\tNOUN\nlook\tlook\tVERB\n.\t.\tPUNCT\n\n"
    "The\tthe\tDET\npresident\tpresident\tNOUN\nlooks\tlook\tVERB\nhouses\thouse\tNOUN\n\n"
    "The\tthe\tDET\npresident\tpresident\tNOUN\nlooks\tlook\tVERB\nthe\tthe\tDET\nhouse\thouse\tNOUN\n";

const char* kLexicon =
    "#source_language=en\n#target_language=es\n"
    "look\tVERB\tmirar\nlook\tVERB\tbuscar\nlook\tVERB\tparecer\n"
    "president\tNOUN\tpresidente\nhouse\tNOUN\tcasa\nhouse\tNOUN\thogar\n";

}  // namespace

TEST_SUITE("run config") {
  TEST_CASE("defaults") {
    RunConfig c;
    CHECK(c.lowercase);
    CHECK_FALSE(c.exclude_unk);
    CHECK(c.band_edges == std::pair<std::size_t, std::size_t>{1000, 2000});
    CHECK(c.mtld_threshold == 0.72);
    CHECK(c.min_wordforms == 2);
    CHECK(c.scaling() == Scaling{});
  }

  TEST_CASE("parsing") {
    std::istringstream in("# comment\n\nband_edges = 500,1500\nmtld_threshold=0.8\npos_filter=NOUN,VERB\n"
                          "simpson=reciprocal\nlemma_weighting=token\nexclude_unk=yes\nunk_tokens=<unk>,UNK\n");
    auto c = load_config(in);
    CHECK(c.band_edges == std::pair<std::size_t, std::size_t>{500, 1500});
    CHECK(c.mtld_threshold == 0.8);
    CHECK(c.pos_filter == std::set<Upos>{Upos::NOUN, Upos::VERB});
    CHECK(c.simpson == SimpsonVariant::Reciprocal);
    CHECK(c.lemma_weighting == LemmaWeighting::TokenWeighted);
    CHECK(c.exclude_unk);
    CHECK(c.unk_tokens == std::set<std::string>{"<unk>", "UNK"});
  }

  TEST_CASE("validation") {
    for (const char* bad : {"band_edges=2000,1000\n", "mtld_threshold=1\n", "mtld_threshold=0\n",
                            "min_wordforms=1\n", "nonsense=1\n", "lowercase=maybe\n", "pos_filter=NOUNS\n",
                            "synttr_scale=-1\n", "no equals sign\n"}) {
      std::istringstream in(bad);
      CHECK_THROWS_AS(load_config(in), ConfigError);
    }
  }

  TEST_CASE("digest tracks every value-affecting knob") {
    RunConfig base;
    const std::vector<std::pair<std::string, std::string>> changes = {
        {"lowercase", "false"},     {"exclude_unk", "true"},  {"unk_tokens", "X"},
        {"band_edges", "10,20"},    {"mtld_threshold", "0.7"}, {"pos_filter", "NOUN"},
        {"min_wordforms", "3"},     {"synttr_scale", "1000"}, {"ptf_scale", "100"},
        {"cdu_scale", "100"},       {"paradigm_pos_excluded", "PUNCT"},
        {"simpson", "reciprocal"},  {"lemma_weighting", "token"}};
    std::set<std::string> digests{base.digest()};
    for (const auto& [k, v] : changes) {
      RunConfig c;
      c.set(k, v);
      CHECK(c.digest() != base.digest());
      digests.insert(c.digest());
    }
    CHECK(digests.size() == changes.size() + 1);
    RunConfig same;
    CHECK(same.digest() == base.digest());
    CHECK(same.canonical() == base.canonical());
  }

  TEST_CASE("tokenization digest ignores metric-only knobs") {
    RunConfig a, b;
    b.set("mtld_threshold", "0.6");
    CHECK(a.tokenization_digest() == b.tokenization_digest());
    b.set("lowercase", "false");
    CHECK(a.tokenization_digest() != b.tokenization_digest());
  }

  TEST_CASE("fnv1a") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }
}

TEST_SUITE("commands") {
  TEST_CASE("freq writes a ranked TSV") {
    TempDir dir;
    auto corpus = dir.write("c.txt", "The cat. The dog.\n");
    auto r = run_cli({"freq", corpus});
    CHECK(r.code == kSuccess);
    CHECK(r.out.rfind("#total_tokens=6\n#config_digest=", 0) == 0);
    CHECK(r.out.find("\nthe\t2\n") != std::string::npos);
  }

  TEST_CASE("analyze plain text computes the lexical trio and skips the rest") {
    TempDir dir;
    auto corpus = dir.write("c.txt", "a b c a b\nd e a\n");
    auto r = run_cli({"analyze", corpus, "--label", "ORIG", "--language", "en"});
    REQUIRE(r.code == kSuccess);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["label"] == "ORIG");
    CHECK(j["metrics"]["ttr"]["raw"] == 5.0 / 8.0);
    CHECK_FALSE(j["metrics"].contains("h"));
    CHECK(j["provenance"]["skipped"].size() == 3);
    CHECK(r.err.find("warning: skipped lfp") != std::string::npos);
  }

  TEST_CASE("analyze with every input computes all nine metrics") {
    TempDir dir;
    auto target = dir.write("t.conllu", kTarget);
    auto source = dir.write("s.tsv", kSource);
    auto lexicon = dir.write("lex.tsv", kLexicon);
    auto freq = run_cli({"freq", target, "--format", "conllu", "--out", dir.file("ref.tsv")});
    REQUIRE(freq.code == kSuccess);
    auto r = run_cli({"analyze", target, "--format", "conllu", "--reference", dir.file("ref.tsv"), "--lexicon",
                      lexicon, "--source", source, "--source-format", "tsv3", "--language", "es",
                      "--source-language", "en", "--label", "TRANS", "--require", "lexical", "--require", "lfp",
                      "--require", "synonyms", "--require", "morphology"});
    INFO(r.err);
    REQUIRE(r.code == kSuccess);
    auto j = nlohmann::json::parse(r.out);
    for (const char* m : {"ttr", "yules_i", "mtld", "lfp_b1", "lfp_b2", "lfp_b3", "ptf", "cdu", "syn_ttr", "h", "d"}) {
      CHECK_MESSAGE(j["metrics"].contains(m), m);
    }
    // look -> mirar 2, buscar 1, parecer 0; president -> presidente 3; house -> casa 2, hogar 0.
    CHECK(j["metrics"]["ptf"]["raw"].get<double>() == doctest::Approx((2.0 / 3 + 1 + 1) / 3));
    CHECK(j["metrics"]["syn_ttr"]["raw"].get<double>() == doctest::Approx(4.0 / 8.0));
    CHECK(j["metrics"]["lfp_b1"]["raw"].get<double>() == 100.0);
    CHECK(j["provenance"]["inputs"].size() == 4);
  }

  TEST_CASE("exit codes") {
    TempDir dir;
    CHECK(run_cli({}).code == kUsageError);
    CHECK(run_cli({"analyze"}).code == kUsageError);
    CHECK(run_cli({"analyze", dir.file("missing.txt")}).code == kInputError);
    auto bad = dir.write("bad.txt", "ok\n\xFF\n");
    auto r = run_cli({"analyze", bad});
    CHECK(r.code == kInputError);
    CHECK(r.err.find("offset 3") != std::string::npos);
    auto unk = dir.write("unk.txt", "UNK UNK\n");
    CHECK(run_cli({"analyze", unk, "--exclude-token", "UNK"}).code == kNoComputableMetric);
    auto plain = dir.write("p.txt", "a b\n");
    CHECK(run_cli({"analyze", plain, "--require", "morphology"}).code == kNoComputableMetric);
    CHECK(run_cli({"analyze", plain, "--require", "bogus"}).code == kUsageError);
    CHECK(run_cli({"analyze", plain, "--format", "xml"}).code == kUsageError);
    auto conf = dir.write("bad.conf", "mtld_threshold=2\n");
    CHECK(run_cli({"analyze", plain, "--config", conf}).code != kSuccess);
  }

  TEST_CASE("lowercase flags") {
    TempDir dir;
    auto corpus = dir.write("c.txt", "A a\n");
    auto folded = nlohmann::json::parse(run_cli({"analyze", corpus}).out);
    auto kept = nlohmann::json::parse(run_cli({"analyze", corpus, "--no-lowercase"}).out);
    CHECK(folded["metrics"]["types"]["raw"] == 1);
    CHECK(kept["metrics"]["types"]["raw"] == 2);
    CHECK(folded["provenance"]["config_digest"] != kept["provenance"]["config_digest"]);
  }

  TEST_CASE("reference built under another tokenization warns") {
    TempDir dir;
    auto corpus = dir.write("c.txt", "A b c\n");
    REQUIRE(run_cli({"freq", corpus, "--no-lowercase", "--out", dir.file("ref.tsv")}).code == kSuccess);
    auto r = run_cli({"analyze", corpus, "--reference", dir.file("ref.tsv")});
    CHECK(r.code == kSuccess);
    CHECK(r.err.find("tokenization digest") != std::string::npos);
  }

  TEST_CASE("analyze is byte-identical across runs and compare is order-stable") {
    TempDir dir;
    auto a = dir.write("a.txt", "the cat sat on the mat\nthe dog sat\n");
    auto b = dir.write("b.txt", "the cat sat on the cat\nthe cat sat\n");
    auto c = dir.write("c.txt", "a cat sat on a mat\nsome dog ran\n");
    REQUIRE(run_cli({"analyze", a, "--label", "ORIG", "--out", dir.file("a.json")}).code == kSuccess);
    REQUIRE(run_cli({"analyze", a, "--label", "ORIG", "--out", dir.file("a2.json")}).code == kSuccess);
    CHECK(slurp(dir.file("a.json")) == slurp(dir.file("a2.json")));
    REQUIRE(run_cli({"analyze", b, "--label", "LSTM", "--out", dir.file("b.json")}).code == kSuccess);
    REQUIRE(run_cli({"analyze", c, "--label", "TRANS", "--out", dir.file("c.json")}).code == kSuccess);

    for (const char* fmt : {"markdown", "csv", "json"}) {
      auto first = run_cli({"compare", dir.file("a.json"), dir.file("b.json"), dir.file("c.json"), "--baseline",
                            "ORIG", "--format", fmt});
      auto second = run_cli({"compare", dir.file("c.json"), dir.file("a.json"), dir.file("b.json"), "--baseline",
                             "ORIG", "--format", fmt});
      REQUIRE(first.code == kSuccess);
      CHECK(first.out == second.out);
    }

    auto json = run_cli({"compare", dir.file("a.json"), dir.file("b.json"), "--baseline", "ORIG", "--format", "json"});
    auto table_path = dir.write("table.json", json.out);
    auto again = run_cli({"compare", table_path, "--baseline", "ORIG", "--format", "json"});
    CHECK(again.code == kSuccess);
    CHECK(again.out == json.out);

    CHECK(run_cli({"compare", dir.file("a.json"), dir.file("b.json"), "--baseline", "NOPE"}).code == kUsageError);
    CHECK(run_cli({"compare", dir.file("a.json"), "--baseline", "ORIG"}).code == kUsageError);
    auto garbage = dir.write("g.json", "{not json");
    CHECK(run_cli({"compare", dir.file("a.json"), garbage, "--baseline", "ORIG"}).code == kInputError);
  }

  TEST_CASE("config digest mismatch surfaces as a compare warning") {
    TempDir dir;
    auto a = dir.write("a.txt", "the cat sat\n");
    REQUIRE(run_cli({"analyze", a, "--label", "A", "--out", dir.file("a.json")}).code == kSuccess);
    REQUIRE(run_cli({"analyze", a, "--label", "B", "--no-lowercase", "--out", dir.file("b.json")}).code == kSuccess);
    auto r = run_cli({"compare", dir.file("a.json"), dir.file("b.json"), "--baseline", "A"});
    CHECK(r.code == kSuccess);
    CHECK(r.err.find("warning:") != std::string::npos);
    CHECK(r.out.find("> warning:") != std::string::npos);
  }
}
