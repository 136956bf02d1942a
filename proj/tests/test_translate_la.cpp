#include <doctest.h>

#include "fixtures.hpp"
#include "twfo/translate.hpp"

using namespace twfo;

TEST_CASE("look-around machine of the two-copy transduction") {
  auto t = fixtures::block_swap_fot();
  auto la = fot_to_fo_lookaround(t);
  la.validate();
  CHECK(la.num_states() == t.num_copies() + 2);
  auto r = simulate_fo_la(la, t.input.parse_word("aababb"));
  REQUIRE(r.output);
  CHECK(t.output.format(*r.output) == "aabbab");
  for (const Word& w : enumerate_words(2, 0, 5)) CHECK(simulate_fo_la(la, w).output == fot_eval(t, w));
  check_determinism(la, 4);
}

TEST_CASE("star-free look-around machine of the two-copy transduction") {
  auto t = fixtures::block_swap_fot();
  auto sf = fo_la_to_sf_la(fot_to_fo_lookaround(t));
  sf.validate();
  sf.certify_star_free();
  auto r = simulate_sf_la(sf, t.input.parse_word("aababb"));
  REQUIRE(r.output);
  CHECK(t.output.format(*r.output) == "aabbab");
  for (const Word& w : enumerate_words(2, 0, 5)) CHECK(simulate_sf_la(sf, w).output == fot_eval(t, w));
  check_determinism(sf, 4);
  MESSAGE(sf.num_states() << " states, " << sf.transitions.size() << " transitions, " << sf.languages.size()
                          << " languages");
}

TEST_CASE("plain machine of the two-copy transduction") {
  auto t = fixtures::block_swap_fot();
  auto plain = fot_to_twoway(t);
  auto r = simulate(plain, t.input.parse_word("aababb"));
  REQUIRE(r.output);
  CHECK(t.output.format(*r.output) == "aabbab");
  for (const Word& w : enumerate_words(2, 0, 5)) CHECK(simulate(plain, w).output == fot_eval(t, w));
  auto m = transition_monoid(plain);
  CHECK(is_aperiodic(m).aperiodic);
  MESSAGE(plain.num_states() << " states, monoid " << m.size());
}

TEST_CASE("reverse round trip of the two-copy transduction") {
  auto t = fixtures::block_swap_fot();
  auto back = twoway_to_fot(fot_to_twoway(t));
  for (const Word& w : enumerate_words(2, 1, 4)) CHECK(fot_eval(back, w) == fot_eval(t, w));
}

TEST_CASE("round trip of the block swap machine") {
  auto t = fixtures::block_swap();
  auto f = twoway_to_fot(t);
  CHECK(f.num_copies() == 3);
  auto plain = fot_to_twoway(f);
  for (const Word& w : enumerate_words(2, 1, 4)) CHECK(simulate(plain, w).output == simulate(t, w).output);
  CHECK(is_aperiodic(transition_monoid(plain)).aperiodic);
}

TEST_CASE("round trip of small crafted machines") {
  for (const auto& t : {fixtures::identity_2w(Alphabet{"a", "b"}), fixtures::copy_reverse(), fixtures::erase_b_2w()}) {
    auto plain = fot_to_twoway(twoway_to_fot(t));
    for (const Word& w : enumerate_words(2, 1, 4)) CHECK(simulate(plain, w).output == simulate(t, w).output);
    CHECK(is_aperiodic(transition_monoid(plain)).aperiodic);
  }
}

TEST_CASE("the look-around machine of the block swap machine is deterministic") {
  auto la = fot_to_fo_lookaround(twoway_to_fot(fixtures::block_swap()));
  check_determinism(la, 4);
  for (const Word& w : enumerate_words(2, 1, 4)) CHECK(simulate_fo_la(la, w).output == simulate(fixtures::block_swap(), w).output);
}
