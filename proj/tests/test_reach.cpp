#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "twfo/error.hpp"
#include "twfo/translate.hpp"

using namespace twfo;

namespace {

/// Configurations visited by the run on ⊢w⊣ started at (q, i).
std::set<std::pair<int, int>> visits(const TwoWayTransducer& t, const Word& w, int q, int i) {
  const int n = static_cast<int>(w.size());
  std::set<std::pair<int, int>> seen;
  while (seen.insert({q, i}).second) {
    int sym = i == 0 ? Tape::left(t.input()) : i == n + 1 ? Tape::right(t.input()) : w[static_cast<std::size_t>(i - 1)];
    const auto& m = t.at(q, sym);
    if (!m) break;
    q = m->target;
    i += m->dir;
  }
  return seen;
}

void check_machine(const TwoWayTransducer& t, std::size_t max_len) {
  auto m = transition_monoid(t);
  for (const Word& w : enumerate_words(t.input().size(), 1, max_len)) {
    const int n = static_cast<int>(w.size());
    for (int j = 1; j <= n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const int pre_j = class_of_range(m, w, 0, uj - 1), suf_j = class_of_range(m, w, uj, w.size());
      auto from_start = visits(t, w, t.initial(), 0);
      for (int q = 0; q < t.num_states(); ++q)
        CHECK(start_decision(m, pre_j, w[uj - 1], suf_j, q) == (from_start.count({q, j}) > 0));
      for (int i = 1; i <= n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        ClassTriple tr{0, 0, 0, w[uj - 1]};
        ReachOrder order = i < j ? ReachOrder::Before : i == j ? ReachOrder::Same : ReachOrder::After;
        if (i < j) {
          tr = {class_of_range(m, w, 0, ui - 1), class_of_range(m, w, ui - 1, uj - 1), suf_j, w[uj - 1]};
        } else if (i == j) {
          tr = {pre_j, 0, suf_j, w[uj - 1]};
        } else {
          tr = {pre_j, class_of_range(m, w, uj, ui), class_of_range(m, w, ui, w.size()), w[uj - 1]};
        }
        for (int q = 0; q < t.num_states(); ++q) {
          auto seen = visits(t, w, q, i);
          for (int q2 = 0; q2 < t.num_states(); ++q2)
            CHECK(reach_decision(m, tr, order, q, q2) == (seen.count({q2, j}) > 0));
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("reach decisions match explicit runs") {
  check_machine(fixtures::block_swap(), 5);
  check_machine(fixtures::parity_2w(), 5);
  check_machine(mirror(fixtures::block_swap()), 4);
}

TEST_CASE("reach decisions on random machines") {
  std::mt19937 rng(7);
  const Alphabet ab{"a", "b"};
  for (int k = 0; k < 30; ++k) check_machine(fixtures::random_2w(rng, ab, ab, 3), 4);
}

namespace {

void check_deferred(const TwoWayTransducer& t, std::size_t max_len) {
  auto d = defer_endmarker_output(t);
  for (int q = 0; q < d.num_states(); ++q)
    for (int sym : {Tape::left(d.input()), Tape::right(d.input())})
      if (const auto& mv = d.at(q, sym)) CHECK(mv->production.empty());
  for (const Word& w : enumerate_words(t.input().size(), 1, max_len)) {
    auto a = simulate(t, w), b = simulate(d, w);
    CHECK(a.output == b.output);
  }
}

}  // namespace

TEST_CASE("deferring endmarker output keeps the function on non-empty words") {
  check_deferred(fixtures::block_swap(), 6);
  check_deferred(mirror(fixtures::block_swap()), 6);
  check_deferred(fixtures::parity_2w(), 6);
  std::mt19937 rng(11);
  const Alphabet ab{"a", "b"};
  int defined = 0;
  for (int k = 0; k < 200; ++k) {
    auto t = fixtures::random_2w(rng, ab, ab, 3);
    check_deferred(t, 5);
    for (const Word& w : enumerate_words(2, 1, 3)) defined += simulate(t, w).output ? 1 : 0;
  }
  CHECK(defined > 50);
}

namespace {

void check_fot(const TwoWayTransducer& t, std::size_t max_len) {
  auto f = twoway_to_fot(t);
  f.validate();
  for (const Word& w : enumerate_words(t.input().size(), 1, max_len)) CHECK(fot_eval(f, w) == simulate(t, w).output);
}

}  // namespace

TEST_CASE("the block swap machine as a first-order transduction") {
  auto t = fixtures::block_swap();
  auto f = twoway_to_fot(t);
  for (const Word& w : enumerate_words(2, 1, 6)) CHECK(fot_eval(f, w) == fixtures::block_swap_reference(w));
}

TEST_CASE("first-order transductions of small machines") {
  check_fot(fixtures::identity_2w(Alphabet{"a", "b"}), 4);
  check_fot(mirror(fixtures::block_swap()), 4);
}

TEST_CASE("random machines convert or are rejected as non-aperiodic") {
  std::mt19937 rng(5);
  const Alphabet ab{"a", "b"};
  int converted = 0, rejected = 0;
  for (int k = 0; k < 60; ++k) {
    auto t = fixtures::random_2w(rng, ab, ab, 2);
    try {
      auto f = twoway_to_fot(t);
      ++converted;
      for (const Word& w : enumerate_words(2, 1, 4)) CHECK(fot_eval(f, w) == simulate(t, w).output);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAperiodic);
      ++rejected;
    }
  }
  CHECK(converted > 5);
  MESSAGE("converted " << converted << ", rejected " << rejected);
}
