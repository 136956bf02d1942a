#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "twfo/error.hpp"

using namespace twfo;
using namespace twfo::fo;

namespace {
const Alphabet kAB{"a", "b"};

Word w(const char* s) { return kAB.parse_word(s); }

/// Every assignment of `vars` to positions, checked against the compiled automaton.
void check_agreement(const Formula& f, const std::vector<std::string>& vars, std::size_t max_len,
                     Positions ctx = Positions::Plain) {
  Dfa d = compile_to_dfa(f, vars, kAB, ctx);
  for (const Word& u : enumerate_words(2, 0, max_len)) {
    const int n = static_cast<int>(u.size());
    const int lo = ctx == Positions::Marked ? 0 : 1, hi = ctx == Positions::Marked ? n + 1 : n;
    std::vector<int> pos(vars.size(), lo);
    if (hi < lo && !vars.empty()) continue;
    while (true) {
      Assignment s;
      for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = pos[i];
      bool expected;
      try {
        expected = eval(f, kAB, u, s, ctx);
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::MalformedClassAtom);
        expected = false;
      }
      CHECK(d.accepts(marked_letters(d, u, pos, ctx)) == expected);
      std::size_t i = 0;
      while (i < pos.size() && pos[i] == hi) pos[i++] = lo;
      if (i == pos.size()) break;
      ++pos[i];
    }
  }
}

}  // namespace

TEST_CASE("order formulas of the two-copy transduction") {
  CHECK(eval(fixtures::order_21(), kAB, w("aababb"), {{"x", 1}, {"y", 3}}));
  CHECK(eval(fixtures::order_12(), kAB, w("aababb"), {{"x", 2}, {"y", 1}}));
  CHECK_FALSE(eval(fixtures::order_12(), kAB, w("aababb"), {{"x", 4}, {"y", 1}}));
  CHECK_FALSE(eval(letter("a", "x"), kAB, w("aab"), {{"x", 3}}));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval(letter("a", "x"), kAB, w("a"), {}), Error);
  auto m = certify_monoid("M", transition_monoid(fixtures::block_swap()));
  try {
    eval(factor_class(m, 0, "x", "y"), kAB, w("ab"), {{"x", 2}, {"y", 1}});
    FAIL("expected malformed-class-atom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedClassAtom);
  }
  CHECK_THROWS_AS(certify_monoid("P", transition_monoid(fixtures::parity_2w())), Error);
  CHECK_THROWS_AS(eval(letter("c", "x"), kAB, w("a"), {{"x", 1}}), Error);
}

TEST_CASE("quantifiers on the empty word") {
  CHECK_FALSE(eval(exists("x", top()), kAB, {}, {}));
  CHECK(eval(forall("x", letter("a", "x")), kAB, {}, {}));
  CHECK(eval(exists("x", letter("^", "x")), kAB, {}, {}, Positions::Marked));
}

TEST_CASE("class atoms fold the designated factor") {
  auto m = certify_monoid("M", transition_monoid(fixtures::block_swap()));
  for (const Word& u : enumerate_words(2, 1, 5)) {
    const int n = static_cast<int>(u.size());
    for (int x = 1; x <= n; ++x)
      for (int y = x; y <= n; ++y) {
        Word f(u.begin() + x - 1, u.begin() + y);
        int e = class_of(m->monoid, f);
        CHECK(eval(factor_class(m, e, "x", "y"), kAB, u, {{"x", x}, {"y", y}}));
        Word pre(u.begin(), u.begin() + x - 1), suf(u.begin() + y, u.end());
        CHECK(eval(prefix_class(m, class_of(m->monoid, pre), "x"), kAB, u, {{"x", x}}));
        CHECK(eval(suffix_class(m, class_of(m->monoid, suf), "x"), kAB, u, {{"x", y}}));
      }
  }
}

TEST_CASE("compiled automata agree with evaluation") {
  check_agreement(exists("x", letter("a", "x")), {}, 5);
  check_agreement(le("x", "y"), {"x", "y"}, 4);
  check_agreement(fixtures::order_21(), {"x", "y"}, 5);
  check_agreement(fixtures::order_12(), {"x", "y"}, 5);
  check_agreement(succ("x", "y"), {"x", "y"}, 4);
  check_agreement(fixtures::order_12(), {"x", "y"}, 4, Positions::Marked);
  auto m = certify_monoid("M", transition_monoid(fixtures::block_swap()));
  check_agreement(factor_class(m, 3, "x", "y"), {"x", "y"}, 4);
  check_agreement(prefix_class(m, 1, "x"), {"x"}, 4, Positions::Marked);
  check_agreement(suffix_class(m, 2, "x"), {"x"}, 4, Positions::Marked);

  Dfa sentence = compile_to_dfa(exists("x", letter("a", "x")), {}, kAB);
  for (const Word& u : enumerate_words(2, 0, 6))
    CHECK(sentence.accepts_word(u) == eval(exists("x", letter("a", "x")), kAB, u, {}));
}

TEST_CASE("random formulas: evaluators agree") {
  std::mt19937 rng(20241);
  auto m = certify_monoid("M", transition_monoid(fixtures::block_swap()));
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> scope{"x", "y"};
    Formula f = fixtures::random_formula(rng, 3, scope, i % 2 ? m : nullptr);
    check_agreement(f, {"x", "y"}, 3, i % 3 == 0 ? Positions::Marked : Positions::Plain);
  }
}

TEST_CASE("quantifier duality") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> scope{"x", "y"};
    Formula f = fixtures::random_formula(rng, 2, scope, nullptr);
    for (const Word& u : enumerate_words(2, 1, 4))
      for (int y = 1; y <= static_cast<int>(u.size()); ++y)
        CHECK(eval(neg(exists("x", f)), kAB, u, {{"y", y}}) == eval(forall("x", neg(f)), kAB, u, {{"y", y}}));
  }
}

TEST_CASE("star-free certification") {
  CHECK(certify_star_free(exists("x", letter("a", "x")), kAB).star_free);
  CHECK(certify_star_free(fixtures::order_12(), kAB).star_free);
  auto m = certify_monoid("M", transition_monoid(fixtures::block_swap()));
  CHECK(certify_star_free(factor_class(m, 4, "x", "y"), kAB).star_free);
}

TEST_CASE("prefix syntax round trip") {
  MonoidRegistry reg;
  reg.add(certify_monoid("M", transition_monoid(fixtures::block_swap())));
  const std::string text = "(exists z (and (le x z) (class M 3 z y) (not (letter b z)) (pclass M 1 x) (sclass M 0 y)))";
  Formula f = parse_formula(text, reg);
  CHECK(to_string(f) == text);
  CHECK(to_string(parse_formula(to_string(fixtures::order_12()), reg)) == to_string(fixtures::order_12()));
  CHECK_THROWS_AS(parse_formula("(and (le x y)", reg), Error);
  CHECK_THROWS_AS(parse_formula("(class N 0 x y)", reg), Error);
  CHECK_THROWS_AS(parse_formula("(class M 99 x y)", reg), Error);
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
}

TEST_CASE("renaming free variables avoids capture") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> scope{"x", "y"};
    Formula f = fixtures::random_formula(rng, 3, scope, nullptr);
    // v2 is the name the generator gives its first bound variable.
    Formula g = rename_free(f, {{"x", "v2"}, {"y", "x"}});
    CHECK(free_vars(g).count("y") == 0);
    for (const Word& u : enumerate_words(2, 1, 3))
      for (int x = 1; x <= static_cast<int>(u.size()); ++x)
        for (int y = 1; y <= static_cast<int>(u.size()); ++y)
          CHECK(eval(g, kAB, u, {{"v2", x}, {"x", y}}) == eval(f, kAB, u, {{"x", x}, {"y", y}}));
  }
}
