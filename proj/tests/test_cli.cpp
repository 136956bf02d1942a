#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "twfo/io.hpp"

namespace {

std::string data(const char* file) { return std::string(TWFO_DATA_DIR) + "/" + file; }

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = twfo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("simulate prints the output word") {
  auto r = run({"simulate", data("fig1.2wt"), "--input", "aababb"});
  CHECK(r.code == 0);
  CHECK(r.out == "aabbab\n");
  CHECK(run({"simulate", data("example4.fot"), "--input", "aababb"}).out == "aabbab\n");
  CHECK(run({"simulate", data("erase-b.seq"), "--input", "abba"}).out == "aa\n");
}

TEST_CASE("an undefined run exits with 1") {
  auto r = run({"simulate", data("example4.fot"), "--input", ""});
  CHECK(r.code == 1);
  CHECK(r.out == "undefined\n");
}

TEST_CASE("errors exit with 2") {
  CHECK(run({"simulate", data("missing.2wt"), "--input", "a"}).code == 2);
  CHECK(run({"simulate", data("fig1.2wt"), "--input", "c"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"simulate", data("fig1.2wt")}).code == 2);
  CHECK(run({"behaviors", data("example4.fot"), "--input", "a"}).code == 2);
}

TEST_CASE("aperiodicity verdicts") {
  auto r = run({"aperiodic", data("fig1.2wt")});
  CHECK(r.code == 0);
  CHECK(r.out == "aperiodic (9 elements, index 2)\n");
  r = run({"aperiodic", data("parity.2wt")});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("not aperiodic", 0) == 0);
}

TEST_CASE("check-equiv verdicts") {
  auto r = run({"check-equiv", data("fig1.2wt"), data("example4.fot"), "--max-len", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent-up-to-5\n");
  r = run({"check-equiv", data("fig1.2wt"), data("example4.fot"), "--max-len", "3", "--min-len", "0"});
  CHECK(r.code == 1);
  CHECK(r.out == "counterexample \"\": \"\" vs undefined\n");
}

TEST_CASE("json output has a stable field order") {
  auto r = run({"--json", "check-equiv", data("fig1.2wt"), data("identity.2wt"), "--max-len", "2"});
  CHECK(r.code == 1);
  auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "verdict", "min_len", "max_len", "words_tested", "counterexample", "left",
                                         "right"});
  CHECK(j["counterexample"] == "a");
  CHECK(run({"--json", "check-equiv", data("fig1.2wt"), data("identity.2wt"), "--max-len", "2"}).out == r.out);
}

TEST_CASE("monoid class checks") {
  auto r = run({"monoid", data("fig1.2wt"), "--same", "aa=a", "--same", "bab=bb"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9 elements") != std::string::npos);
  CHECK(run({"monoid", data("fig1.2wt"), "--same", "a=b"}).code == 1);
}

TEST_CASE("transformations print artifacts that load again") {
  const auto dir = std::filesystem::temp_directory_path() / "twfo_cli_test";
  std::filesystem::create_directories(dir);
  const std::string composed = (dir / "composed.2wt").string(), mirrored = (dir / "mirror.2wt").string();
  CHECK(run({"compose", data("erase-b.seq"), data("fig1.2wt"), "-o", composed}).code == 0);
  CHECK(run({"check-equiv", composed, composed, "--max-len", "3"}).code == 0);
  CHECK(run({"mirror", data("fig1.2wt"), "-o", mirrored}).code == 0);
  CHECK(run({"simulate", mirrored, "--input", "bbabaa"}).out == "aabbab\n");
  auto r = run({"normalize", data("fig1.2wt")});
  CHECK(r.code == 0);
  CHECK(twfo::parse_artifact(r.out).value.index() == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("eval-formula") {
  const auto dir = std::filesystem::temp_directory_path() / "twfo_cli_eval";
  std::filesystem::create_directories(dir);
  const std::string file = (dir / "f.formula").string();
  std::ofstream(file) << "type: formula\ninput: a b\nformula: (exists y (and (le x y) (letter b y)))\n";
  CHECK(run({"eval-formula", file, "--input", "aab", "--assign", "x=1"}).out == "true\n");
  CHECK(run({"eval-formula", file, "--input", "aba", "--assign", "x=3"}).code == 1);
  std::filesystem::remove_all(dir);
}
