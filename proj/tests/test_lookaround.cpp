#include <doctest.h>

#include "fixtures.hpp"
#include "twfo/error.hpp"
#include "twfo/lookaround.hpp"

using namespace twfo;

namespace {
const Alphabet kAB{"a", "b"};

/// Moves right everywhere, emitting `mark` at letters whose strict prefix ends with b.
SfLookAroundTransducer marker() {
  SfLookAroundTransducer t;
  t.input = kAB;
  t.output = Alphabet{"#"};
  t.states = {"q"};
  t.finals = {true};
  // A*b
  const int ends_b = t.add_language(Dfa(kAB, 0, 2, 0, {false, true}, {0, 1, 0, 1}));
  const int other = t.add_language(dfa_complement(t.languages[static_cast<std::size_t>(ends_b)]));
  const int all = t.add_language(dfa_universal(kAB));
  t.transitions.push_back({0, {all, Tape::left(kAB), all}, 0, {}, +1});
  for (Symbol a = 0; a < 2; ++a) {
    t.transitions.push_back({0, {ends_b, a, all}, 0, {0}, +1});
    t.transitions.push_back({0, {other, a, all}, 0, {}, +1});
  }
  return t;
}

FoLookAroundTransducer fo_copier() {
  using namespace fo;
  FoLookAroundTransducer t;
  t.input = kAB;
  t.output = kAB;
  t.states = {"q"};
  t.finals = {true};
  auto right = succ("x", "y");
  t.transitions.push_back({0, letter("^", "x"), 0, {}, right});
  t.transitions.push_back({0, letter("a", "x"), 0, {0}, right});
  t.transitions.push_back({0, letter("b", "x"), 0, {1}, right});
  return t;
}
}  // namespace

TEST_CASE("star-free copier") {
  SfLookAroundTransducer t;
  t.input = kAB;
  t.output = kAB;
  t.states = {"q"};
  t.finals = {true};
  const int all = t.add_language(dfa_universal(kAB));
  CHECK(t.add_language(dfa_minimize(dfa_universal(kAB))) == all);
  t.transitions.push_back({0, {all, Tape::left(kAB), all}, 0, {}, +1});
  t.transitions.push_back({0, {all, 0, all}, 0, {0}, +1});
  t.transitions.push_back({0, {all, 1, all}, 0, {1}, +1});
  t.validate();
  t.certify_star_free();
  CHECK(simulate_sf_la(t, kAB.parse_word("aab")).output == kAB.parse_word("aab"));
  check_determinism(t, 5);
}

TEST_CASE("prefix test marks the letter after a b") {
  auto t = marker();
  t.validate();
  auto r = simulate_sf_la(t, kAB.parse_word("aba"));
  REQUIRE(r.output.has_value());
  CHECK(r.output->size() == 1);
  // The mark is emitted while standing on position 3.
  for (std::size_t i = 0; i < r.run.productions.size(); ++i)
    CHECK(r.run.productions[i].empty() == (r.run.configs[i].pos != 3));
  CHECK(sf_test_holds(t, t.transitions[1].test, kAB.parse_word("aba"), 3));
  CHECK_FALSE(sf_test_holds(t, t.transitions[1].test, kAB.parse_word("aba"), 2));
}

TEST_CASE("strict factors around endmarkers") {
  auto t = marker();
  const int empty_only = t.add_language(dfa_epsilon_only(kAB));
  const int all = t.add_language(dfa_universal(kAB));
  Word u = kAB.parse_word("ab");
  CHECK(sf_test_holds(t, {empty_only, Tape::left(kAB), all}, u, 0));
  CHECK_FALSE(sf_test_holds(t, {all, Tape::left(kAB), empty_only}, u, 0));
  CHECK(sf_test_holds(t, {all, Tape::right(kAB), empty_only}, u, 3));
  CHECK(sf_test_holds(t, {empty_only, Tape::left(kAB), empty_only}, {}, 0));
}

TEST_CASE("nondeterministic star-free machine") {
  auto t = marker();
  const int all = t.add_language(dfa_universal(kAB));
  t.transitions.push_back({0, {all, 0, all}, 0, {}, +1});
  CHECK_THROWS_AS(simulate_sf_la(t, kAB.parse_word("a")), Error);
  CHECK_THROWS_AS(check_determinism(t, 2), Error);
}

TEST_CASE("first-order copier") {
  auto t = fo_copier();
  t.validate();
  for (const Word& w : enumerate_words(2, 0, 5)) CHECK(simulate_fo_la(t, w).output == w);
  check_determinism(t, 4);
}

TEST_CASE("first-order nondeterminism") {
  auto t = fo_copier();
  t.transitions.push_back({0, fo::top(), 0, {}, fo::succ("x", "y")});
  try {
    simulate_fo_la(t, kAB.parse_word("ab"));
    FAIL("expected determinism-violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeterminismViolation);
  }
  auto multi = fo_copier();
  multi.transitions[1].move = fo::lt("x", "y");
  CHECK_THROWS_AS(simulate_fo_la(multi, kAB.parse_word("ab")), Error);
}

TEST_CASE("look-around halting") {
  auto t = fo_copier();
  t.transitions.pop_back();
  CHECK(simulate_fo_la(t, kAB.parse_word("ab")).halt == Halt::Blocked);
  t.finals = {false};
  CHECK(simulate_fo_la(t, kAB.parse_word("a")).halt == Halt::Rejected);
  auto loop = fo_copier();
  loop.transitions[1].move = fo::eq("x", "y");
  CHECK(simulate_fo_la(loop, kAB.parse_word("a")).halt == Halt::Loop);
}
