#include <doctest.h>

#include "fixtures.hpp"
#include "twfo/equiv.hpp"
#include "twfo/error.hpp"

using namespace twfo;

TEST_CASE("the machine and the two-copy transduction agree") {
  auto r = check_equiv(fixtures::block_swap(), fixtures::block_swap_fot(), 5, 1);
  CHECK(r.equivalent);
  CHECK(r.words_tested == 62);
  CHECK(describe(r, Alphabet{"a", "b"}) == "equivalent-up-to-5");
}

TEST_CASE("the least counterexample is reported") {
  auto r = check_equiv(fixtures::block_swap(), fixtures::identity_2w(Alphabet{"a", "b"}), 2, 1);
  REQUIRE_FALSE(r.equivalent);
  CHECK(*r.counterexample == Word{0});
  CHECK(describe(r, Alphabet{"a", "b"}) == "counterexample \"a\": \"ab\" vs \"a\"");
  auto f = word_function(fixtures::block_swap()), id = word_function(fixtures::identity_2w(Alphabet{"a", "b"}));
  CHECK(render(f.apply(Word{1})) == "\"\"");
  CHECK(render(id.apply(Word{1})) == "\"b\"");
}

TEST_CASE("the empty word is where the two models part") {
  auto r = check_equiv(fixtures::block_swap(), fixtures::block_swap_fot(), 3);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.counterexample->empty());
  CHECK(render(r.left) == "\"\"");
  CHECK(render(r.right) == "undefined");
}

TEST_CASE("an artifact is equivalent to itself") {
  CHECK(check_equiv(fixtures::erase_b(), fixtures::erase_b(), 4).equivalent);
  CHECK(check_equiv(fixtures::parity_2w(), fixtures::parity_2w(), 4).equivalent);
}

TEST_CASE("alphabets must match") {
  auto other = fixtures::identity_2w(Alphabet{"a", "b", "c"});
  CHECK_THROWS_AS(check_equiv(fixtures::block_swap(), other, 2), Error);
  try {
    check_equiv(fixtures::block_swap(), other, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleAlphabets);
  }
  CHECK_THROWS_AS(word_function(Dfa(dfa_universal(Alphabet{"a"}))), Error);
}
