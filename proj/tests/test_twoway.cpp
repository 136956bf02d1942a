#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "twfo/error.hpp"

using namespace twfo;

namespace {
std::optional<std::string> run(const TwoWayTransducer& t, const std::string& w) {
  auto r = simulate(t, t.input().parse_word(w));
  if (!r.output) return std::nullopt;
  return t.output().format(*r.output);
}
}  // namespace

TEST_CASE("block swap outputs") {
  auto t = fixtures::block_swap();
  CHECK(run(t, "aababb") == "aabbab");
  CHECK(run(t, "b") == "");
  CHECK(run(t, "aab") == "aabb");
  CHECK(run(t, "") == "");
  CHECK(run(t, "ab") == "ab");
  CHECK(run(t, "a") == "ab");
  CHECK(run(t, "aaba") == "aabbab");
}

TEST_CASE("block swap agrees with the reference on short words") {
  auto t = fixtures::block_swap();
  for (const Word& w : enumerate_words(2, 0, 7)) {
    auto r = simulate(t, w);
    REQUIRE(r.output);
    CHECK(*r.output == fixtures::block_swap_reference(w));
  }
}

TEST_CASE("block swap run trace") {
  auto t = fixtures::block_swap();
  auto r = simulate(t, t.input().parse_word("aab"));
  REQUIRE(r.halt == Halt::Accepted);
  // ^ a a b (back over a a) ^ then forward to $.
  CHECK(r.run.configs.front() == Configuration{0, 0});
  CHECK(r.run.configs.back().pos == 4);
  CHECK(r.run.configs.size() == r.run.productions.size() + 1);
}

TEST_CASE("halting reasons") {
  Alphabet ab{"a", "b"};
  TwoWayTransducer loop(ab, ab, {"p"}, 0, {false});
  loop.set(0, Tape::left(ab), {0, +1, {}});
  loop.set(0, 0, {0, -1, {}});
  CHECK(simulate(loop, ab.parse_word("a")).halt == Halt::Loop);
  CHECK(simulate(loop, ab.parse_word("b")).halt == Halt::Blocked);
  CHECK(simulate(loop, Word{}).halt == Halt::Rejected);
}

TEST_CASE("endmarker moves are validated") {
  Alphabet ab{"a"};
  TwoWayTransducer t(ab, ab, {"p"}, 0, {true});
  CHECK_THROWS_AS(t.set(0, Tape::left(ab), {0, -1, {}}), Error);
  CHECK_THROWS_AS(t.set(0, Tape::right(ab), {0, +1, {}}), Error);
}

TEST_CASE("simulate rejects foreign symbols") {
  auto t = fixtures::block_swap();
  CHECK_THROWS_AS(simulate(t, Word{5}), Error);
  CHECK_THROWS_AS(t.input().parse_word("abc"), Error);
}

TEST_CASE("normalize keeps semantics") {
  Alphabet ab{"a", "b"};
  TwoWayTransducer t(ab, ab, {"q"}, 0, {true});
  t.set(0, Tape::left(ab), {0, +1, {1, 1}});
  t.set(0, 0, {0, +1, {0, 1, 0}});
  t.set(0, 1, {0, +1, {}});
  auto n = normalize(t);
  CHECK(is_normalized(n));
  CHECK_FALSE(is_normalized(t));
  for (const Word& w : enumerate_words(2, 0, 6)) CHECK(simulate(n, w).output == simulate(t, w).output);
}

TEST_CASE("mirror reverses the input") {
  auto t = fixtures::block_swap();
  auto m = mirror(t);
  for (const Word& w : enumerate_words(2, 0, 7)) CHECK(simulate(m, reversed(w)).output == simulate(t, w).output);
  auto mm = mirror(m);
  for (const Word& w : enumerate_words(2, 0, 5)) CHECK(simulate(mm, w).output == simulate(t, w).output);
}

TEST_CASE("context paths") {
  auto t = fixtures::block_swap();
  Word v{0}, u{0, 1}, w{1};
  auto r = simulate(t, concat(concat(v, u), w));
  auto pos = context_positions(v.size(), u.size(), w.size());
  CHECK(pos == std::vector<int>{0, 1, 4, 5});
  auto p = context_path(r.run, pos);
  REQUIRE_FALSE(p.steps.empty());
  CHECK(p.steps.front() == std::pair{0, 1});
  CHECK(p.steps.back().second == 4);
}

TEST_CASE("context paths settle at the aperiodicity index") {
  std::mt19937 rng(5);
  auto power = [](const Word& u, int n) {
    Word r;
    for (int i = 0; i < n; ++i) r.insert(r.end(), u.begin(), u.end());
    return r;
  };
  for (const auto& t : {fixtures::block_swap(), fixtures::copy_reverse(), mirror(fixtures::block_swap())}) {
    const int n = *is_aperiodic(transition_monoid(t)).index;
    for (int k = 0; k < 200; ++k) {
      auto word = [&](int min) {
        Word w(static_cast<std::size_t>(min) + rng() % 4);
        for (auto& s : w) s = static_cast<Symbol>(rng() % 2);
        return w;
      };
      const Word v = word(0), u = word(1), w = word(0);
      auto path = [&](int m) {
        auto r = simulate(t, concat(concat(v, power(u, m)), w));
        return context_path(r.run, context_positions(v.size(), u.size() * static_cast<std::size_t>(m), w.size()));
      };
      CHECK(path(n) == path(n + 1));
    }
  }
}
