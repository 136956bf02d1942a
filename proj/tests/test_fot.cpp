#include <doctest.h>

#include "fixtures.hpp"
#include "twfo/error.hpp"

using namespace twfo;

namespace {
const Alphabet kAB{"a", "b"};
}

TEST_CASE("reference block swap") {
  CHECK(kAB.format(fixtures::block_swap_reference(kAB.parse_word("aababb"))) == "aabbab");
  CHECK(fixtures::block_swap_reference(kAB.parse_word("b")).empty());
}

TEST_CASE("domain check") {
  auto t = fixtures::block_swap_fot();
  CHECK(fot_domain_check(t, kAB.parse_word("aababb")));
  CHECK(fot_domain_check(t, kAB.parse_word("aab")));
  CHECK_FALSE(fot_domain_check(t, {}));
  t.domain = fo::bottom();
  CHECK_FALSE(fot_domain_check(t, kAB.parse_word("ab")));
}

TEST_CASE("two-copy transduction output") {
  auto t = fixtures::block_swap_fot();
  t.validate();
  CHECK(fot_eval(t, kAB.parse_word("aababb")) == kAB.parse_word("aabbab"));
  CHECK(fot_eval(t, kAB.parse_word("b")) == Word{});
  auto s = output_structure(t, kAB.parse_word("aababb"));
  CHECK(s.nodes.size() == 6);
  for (const Word& w : enumerate_words(2, 1, 6)) CHECK(fot_eval(t, w) == fixtures::block_swap_reference(w));
}

TEST_CASE("non-total order is undefined") {
  auto t = fixtures::block_swap_fot();
  t.set_le(0, 1, fo::bottom());
  t.set_le(1, 0, fo::bottom());
  CHECK_FALSE(fot_eval(t, kAB.parse_word("a")).has_value());
  CHECK(fot_eval(t, kAB.parse_word("b")) == Word{});
}

TEST_CASE("label conflicts are reported") {
  auto t = fixtures::block_swap_fot();
  t.set_pos(0, 1, fo::top());
  try {
    fot_eval(t, kAB.parse_word("a"));
    FAIL("expected label-conflict");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LabelConflict);
  }
}

TEST_CASE("validation of free variables") {
  auto t = fixtures::block_swap_fot();
  t.set_pos(0, 0, fo::letter("a", "y"));
  CHECK_THROWS_AS(t.validate(), Error);
}
