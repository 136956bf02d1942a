#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "twfo/error.hpp"
#include "twfo/monoid.hpp"

using namespace twfo;

namespace {
using Pairs = std::vector<std::pair<int, int>>;
const Alphabet kAB{"a", "b"};

int cls(const TransitionMonoid& m, const char* w) { return class_of(m, kAB.parse_word(w)); }
}  // namespace

TEST_CASE("behaviors of aab on the block swap machine") {
  auto p = behaviors(fixtures::block_swap(), kAB.parse_word("aab"));
  // States 1,2,3 are indices 0,1,2.
  CHECK(p.behavior(kLeft, kLeft) == Pairs{{0, 1}, {1, 1}});
  CHECK(p.behavior(kLeft, kRight) == Pairs{{2, 0}});
  CHECK(p.behavior(kRight, kLeft) == Pairs{{0, 1}});
  CHECK(p.behavior(kRight, kRight) == Pairs{{1, 2}, {2, 0}});
}

TEST_CASE("glue agrees with direct behaviors") {
  for (const auto& t : {fixtures::block_swap(), fixtures::parity_2w(), mirror(fixtures::block_swap())}) {
    auto id = behaviors(t, {});
    CHECK(glue(id, behaviors(t, {0})) == behaviors(t, {0}));
    CHECK(glue(behaviors(t, {1}), id) == behaviors(t, {1}));
    for (const Word& w : enumerate_words(2, 0, 6)) {
      auto folded = id;
      for (Symbol a : w) folded = glue(folded, behaviors(t, {a}));
      CHECK(folded == behaviors(t, w));
    }
  }
}

TEST_CASE("glue detects loops across the boundary") {
  Alphabet ab{"a", "b"};
  // On a: bounce right; on b: bounce left. "ab" traps the head.
  TwoWayTransducer t(ab, ab, {"p"}, 0, {false});
  t.set(0, Tape::left(ab), {0, +1, {}});
  t.set(0, 0, {0, +1, {}});
  t.set(0, 1, {0, -1, {}});
  auto g = glue(behaviors(t, {0}), behaviors(t, {1}));
  CHECK(g.exit(0, kLeft) == -1);
  CHECK(simulate(t, ab.parse_word("ab")).halt == Halt::Loop);
}

TEST_CASE("transition monoid of the block swap machine") {
  auto m = transition_monoid(fixtures::block_swap());
  CHECK(m.size() == 9);
  CHECK(cls(m, "bab") == cls(m, "bb"));
  CHECK(cls(m, "aa") == cls(m, "a"));
  CHECK(cls(m, "") == TransitionMonoid::identity());
  std::vector<int> named;
  for (const char* w : {"", "a", "b", "ab", "ba", "aba", "abb", "bba", "bb"}) named.push_back(cls(m, w));
  std::sort(named.begin(), named.end());
  CHECK(std::unique(named.begin(), named.end()) == named.end());
  CHECK(m.element(cls(m, "aab")) == behaviors(fixtures::block_swap(), kAB.parse_word("aab")));
  auto ap = is_aperiodic(m);
  CHECK(ap.aperiodic);
  CHECK(ap.index.has_value());
}

TEST_CASE("monoid laws") {
  for (const auto& t : {fixtures::block_swap(), fixtures::parity_2w()}) {
    auto m = transition_monoid(t);
    const int n = static_cast<int>(m.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) CHECK(m.product(m.product(x, y), z) == m.product(x, m.product(y, z)));
    for (const Word& w : enumerate_words(2, 0, 5)) CHECK(m.element(class_of(m, w)) == behaviors(t, w));
    auto words = enumerate_words(2, 0, 3);
    for (const Word& u : words)
      for (const Word& v : words)
        CHECK(class_of(m, concat(u, v)) == m.product(class_of(m, u), class_of(m, v)));
  }
}

TEST_CASE("congruence property") {
  auto m = transition_monoid(fixtures::block_swap());
  auto words = enumerate_words(2, 0, 3);
  for (const Word& u : words)
    for (const Word& v : words) {
      if (class_of(m, u) != class_of(m, v)) continue;
      for (const Word& x : enumerate_words(2, 0, 2))
        for (const Word& y : enumerate_words(2, 0, 1))
          CHECK(class_of(m, concat(concat(x, u), y)) == class_of(m, concat(concat(x, v), y)));
    }
}

TEST_CASE("parity machine is not aperiodic") {
  auto m = transition_monoid(fixtures::parity_2w());
  auto ap = is_aperiodic(m);
  CHECK_FALSE(ap.aperiodic);
  CHECK_FALSE(ap.index.has_value());
  REQUIRE(ap.witness.has_value());
  CHECK(*ap.witness == cls(m, "a"));
  CHECK(power_data(m, *ap.witness).period == 2);
}

TEST_CASE("trivial always-right machine") {
  // Its only letter is idempotent but differs from the identity, so x^1 = x^2 is the first fixpoint.
  auto m = transition_monoid(fixtures::identity_2w(Alphabet{"a"}));
  CHECK(m.size() == 2);
  auto ap = is_aperiodic(m);
  CHECK(ap.aperiodic);
  CHECK(ap.index == 1);
  CHECK(power_data(m, TransitionMonoid::identity()).threshold == 0);
}

TEST_CASE("class languages") {
  auto m = transition_monoid(fixtures::block_swap());
  auto a = class_language_dfa(m, cls(m, "a"));
  auto ab = class_language_dfa(m, cls(m, "ab"));
  auto bb = class_language_dfa(m, cls(m, "bb"));
  auto eps = class_language_dfa(m, TransitionMonoid::identity());
  for (const Word& w : enumerate_words(2, 0, 6)) {
    const std::string s = kAB.format(w);
    const bool all_a = !s.empty() && s.find('b') == std::string::npos;
    const bool a_plus_b = s.size() >= 2 && s.back() == 'b' && s.find('b') == s.size() - 1;
    CHECK(a.accepts_word(w) == all_a);
    CHECK(ab.accepts_word(w) == a_plus_b);
    CHECK(bb.accepts_word(w) == (s.size() >= 2 && s.front() == 'b' && s.back() == 'b'));
    CHECK(eps.accepts_word(w) == s.empty());
  }
  CHECK(dfa_is_counter_free(a).aperiodic);
  CHECK_THROWS_AS(class_language_dfa(m, 99), Error);
}

TEST_CASE("acceptance from classes") {
  for (const auto& t : {fixtures::block_swap(), fixtures::parity_2w(), mirror(fixtures::parity_2w())}) {
    auto m = transition_monoid(t);
    for (const Word& w : enumerate_words(2, 0, 6))
      CHECK(class_accepts(m, class_of(m, w)) == simulate(t, w).output.has_value());
  }
}

TEST_CASE("monoid dump") {
  auto m = transition_monoid(fixtures::block_swap());
  auto text = dump_monoid(m, fixtures::block_swap().state_names());
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(text.find("e0 [eps]") == 0);
}
