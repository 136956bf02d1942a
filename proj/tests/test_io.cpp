#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "twfo/error.hpp"
#include "twfo/io.hpp"
#include "twfo/translate.hpp"

using namespace twfo;

namespace {

std::string data(const char* file) { return std::string(TWFO_DATA_DIR) + "/" + file; }

// Text is canonical after one pass, and a second pass changes nothing.
void check_round_trip(const ArtifactValue& v) {
  const std::string text = serialize(v, "x");
  const Artifact back = parse_artifact(text);
  CHECK(back.name == "x");
  CHECK(back.value.index() == v.index());
  CHECK(serialize(back) == text);
}

ErrorCode code_of(std::string_view text) {
  try {
    parse_artifact(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::SyntaxError;
}

}  // namespace

TEST_CASE("the block swap machine file") {
  auto a = load_artifact(data("fig1.2wt"));
  CHECK(a.name == "fig1");
  const auto& t = std::get<TwoWayTransducer>(a.value);
  CHECK(t.num_states() == 3);
  CHECK(t.transition_count() == 9);
  CHECK(t == fixtures::block_swap());
}

TEST_CASE("the two-copy transduction file") {
  auto a = load_artifact(data("example4.fot"));
  const auto& t = std::get<FoTransduction>(a.value);
  CHECK(t.copies == std::vector<std::string>{"1", "2"});
  int nontrivial = 0;
  for (const auto& f : t.order) nontrivial += f && to_string(f) != "(le x y)";
  CHECK(nontrivial == 2);
  for (const Word& w : enumerate_words(2, 1, 5)) CHECK(fot_eval(t, w) == fixtures::block_swap_reference(w));
}

TEST_CASE("other fixture files load") {
  CHECK(std::get<SequentialTransducer>(load_artifact(data("erase-b.seq")).value) == fixtures::erase_b());
  CHECK(std::get<TwoWayTransducer>(load_artifact(data("parity.2wt")).value) == fixtures::parity_2w());
  CHECK(std::get<TwoWayTransducer>(load_artifact(data("identity.2wt")).value) == fixtures::identity_2w(Alphabet{"a", "b"}));
}

TEST_CASE("moving left from the left endmarker is rejected") {
  const char* text =
      "type: 2wt\ninput: a\noutput: a\nstates: p\ninitial: p\nfinal: p\n"
      "p ^ -> p / - -1\n";
  CHECK(code_of(text) == ErrorCode::SemanticError);
}

TEST_CASE("syntax errors name the line and column") {
  const char* text =
      "type: 2wt\ninput: a\noutput: a\nstates: p\ninitial: p\nfinal: p\n"
      "# comment\n"
      "p a -> p / a +2\n";
  try {
    parse_artifact(text);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.detail().find("line 8, column 14") != std::string::npos);
  }
  CHECK(code_of("type: wat\n") == ErrorCode::SyntaxError);
  CHECK(code_of("input: a\n") == ErrorCode::SyntaxError);
  CHECK(code_of("type: 2wt\ninput: a\noutput: a\nstates: p\ninitial: q\nfinal: p\n") == ErrorCode::SemanticError);
  CHECK(code_of("type: 2wt\ninput: a\noutput: a\nstates: p\nfinal: p\n") == ErrorCode::SyntaxError);
  CHECK(code_of("type: 2wt\ninput: a\noutput: a\nstates: p\ninitial: p\nfinal: p\np c -> p / a +1\n") ==
        ErrorCode::SymbolNotInAlphabet);
}

TEST_CASE("formula syntax errors point into the line") {
  const char* text = "type: formula\ninput: a b\nformula: (and (letter a x) (lee x y))\n";
  try {
    parse_artifact(text);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.detail().rfind("line 3, column ", 0) == 0);
  }
}

TEST_CASE("random machines survive serialization") {
  std::mt19937 rng(11);
  const Alphabet ab{"a", "b"}, xyz{"x", "yy", "z"};
  for (int i = 0; i < 200; ++i) {
    auto t = fixtures::random_2w(rng, ab, i % 2 ? ab : xyz, 1 + i % 4);
    auto back = parse_artifact(serialize(t));
    CHECK(std::get<TwoWayTransducer>(back.value) == t);
    auto s = fixtures::random_seq(rng, ab, xyz, 1 + i % 3, 2);
    CHECK(std::get<SequentialTransducer>(parse_artifact(serialize(s)).value) == s);
  }
}

TEST_CASE("every artifact kind round-trips") {
  const Alphabet ab{"a", "b"};
  check_round_trip(fixtures::block_swap());
  check_round_trip(fixtures::erase_b());
  check_round_trip(fixtures::block_swap_fot());
  check_round_trip(twoway_to_fot(fixtures::block_swap()));
  const auto la = fot_to_fo_lookaround(fixtures::block_swap_fot());
  check_round_trip(la);
  check_round_trip(fo_la_to_sf_la(la));
  check_round_trip(make_monoid_artifact(fixtures::parity_2w()));
  const Dfa d = compile_to_dfa(fo::lt("x", "y"), {"x", "y"}, ab, Positions::Marked);
  check_round_trip(d);
  CHECK(std::get<Dfa>(parse_artifact(serialize(d)).value) == d);
  auto f = twoway_to_fot(fixtures::block_swap());
  check_round_trip(FormulaArtifact{ab, f.le(0, 1)});
}

TEST_CASE("parsed look-around machines behave like the originals") {
  const auto la = fot_to_fo_lookaround(fixtures::block_swap_fot());
  const auto sf = fo_la_to_sf_la(la);
  const auto la2 = std::get<FoLookAroundTransducer>(parse_artifact(serialize(la)).value);
  const auto sf2 = std::get<SfLookAroundTransducer>(parse_artifact(serialize(sf)).value);
  for (const Word& w : enumerate_words(2, 0, 4)) {
    CHECK(simulate_fo_la(la2, w).output == simulate_fo_la(la, w).output);
    CHECK(simulate_sf_la(sf2, w).output == simulate_sf_la(sf, w).output);
  }
}

TEST_CASE("monoid files compute the monoid") {
  const auto a = parse_artifact(serialize(make_monoid_artifact(fixtures::block_swap())));
  CHECK(std::get<MonoidArtifact>(a.value).monoid.size() == 9);
}
