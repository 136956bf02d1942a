#include <doctest.h>

#include "fixtures.hpp"

using namespace twfo;

TEST_CASE("sequential erase") {
  auto s = fixtures::erase_b();
  CHECK(seq_run(s, s.input.parse_word("abab")) == s.output.parse_word("aa"));
  CHECK(seq_run_right(s, s.input.parse_word("abba")) == s.output.parse_word("aa"));
}

TEST_CASE("right-sequential keeps productions in place") {
  Alphabet ab{"a", "b"};
  // Marks each letter by whether a b occurs later (reading right to left).
  SequentialTransducer s(ab, ab, {"none", "seen"}, 0, {true, true});
  s.set(0, 0, 0, {0});
  s.set(0, 1, 1, {1});
  s.set(1, 0, 1, {1});
  s.set(1, 1, 1, {1});
  CHECK(ab.format(*seq_run_right(s, ab.parse_word("aaba"))) == "bbba");
}

TEST_CASE("partial sequential domain") {
  Alphabet ab{"a", "b"};
  SequentialTransducer s(ab, ab, {"q", "r"}, 0, {true, false});
  s.set(0, 0, 1, {});
  s.set(1, 0, 0, {});
  CHECK(seq_run(s, ab.parse_word("aa")).has_value());
  CHECK_FALSE(seq_run(s, ab.parse_word("a")).has_value());
  CHECK_FALSE(seq_run(s, ab.parse_word("ab")).has_value());
}
