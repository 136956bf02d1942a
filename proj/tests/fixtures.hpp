#pragma once

#include "twfo/sequential.hpp"
#include "twfo/twoway.hpp"

namespace twfo::fixtures {

/// Maps a^k0 b a^k1 ... b a^kn to a^k0 b^k0 a^k1 b^k1 ... a^kn b^kn.
inline TwoWayTransducer block_swap() {
  Alphabet ab{"a", "b"};
  TwoWayTransducer t(ab, ab, {"1", "2", "3"}, 0, {true, false, true});
  const int a = 0, b = 1, L = Tape::left(ab), R = Tape::right(ab);
  t.set(0, L, {0, +1, {}});
  t.set(0, a, {0, +1, {a}});
  t.set(0, b, {1, -1, {}});
  t.set(0, R, {1, -1, {}});
  t.set(1, a, {1, -1, {b}});
  t.set(1, b, {2, +1, {}});
  t.set(1, L, {2, +1, {}});
  t.set(2, a, {2, +1, {}});
  t.set(2, b, {0, +1, {}});
  return t;
}

/// Copies its input (one-way, as a two-way machine).
inline TwoWayTransducer identity_2w(const Alphabet& a) {
  TwoWayTransducer t(a, a, {"q"}, 0, {true});
  t.set(0, Tape::left(a), {0, +1, {}});
  for (Symbol s = 0; s < static_cast<Symbol>(a.size()); ++s) t.set(0, s, {0, +1, {s}});
  return t;
}

/// Accepts words with an even number of a's and copies them.
inline TwoWayTransducer parity_2w() {
  Alphabet ab{"a", "b"};
  TwoWayTransducer t(ab, ab, {"even", "odd"}, 0, {true, false});
  t.set(0, Tape::left(ab), {0, +1, {}});
  for (int q = 0; q < 2; ++q) {
    t.set(q, 0, {1 - q, +1, {0}});
    t.set(q, 1, {q, +1, {1}});
  }
  return t;
}

/// w ↦ w·reverse(w): copies forwards, copies backwards, then walks to the end.
inline TwoWayTransducer copy_reverse() {
  Alphabet ab{"a", "b"};
  TwoWayTransducer t(ab, ab, {"f", "r", "d"}, 0, {false, false, true});
  t.set(0, Tape::left(ab), {0, +1, {}});
  t.set(0, Tape::right(ab), {1, -1, {}});
  t.set(1, Tape::left(ab), {2, +1, {}});
  for (Symbol s = 0; s < 2; ++s) {
    t.set(0, s, {0, +1, {s}});
    t.set(1, s, {1, -1, {s}});
    t.set(2, s, {2, +1, {}});
  }
  return t;
}

/// Erases every b, as a two-way machine that only moves right.
inline TwoWayTransducer erase_b_2w() {
  Alphabet ab{"a", "b"};
  TwoWayTransducer t(ab, ab, {"q"}, 0, {true});
  t.set(0, Tape::left(ab), {0, +1, {}});
  t.set(0, 0, {0, +1, {0}});
  t.set(0, 1, {0, +1, {}});
  return t;
}

/// Erases every b.
inline SequentialTransducer erase_b() {
  Alphabet ab{"a", "b"};
  SequentialTransducer s(ab, ab, {"q"}, 0, {true});
  s.set(0, 0, 0, {0});
  s.set(0, 1, 0, {});
  return s;
}

}  // namespace twfo::fixtures

#include "twfo/formula.hpp"

namespace twfo::fixtures {

/// Order formula from copy 1 to copy 2 of the two-copy block swap transduction.
inline Formula order_12(const std::string& x = "x", const std::string& y = "y") {
  using namespace fo;
  return disj({le(x, y), forall("z", implies(conj({le(y, "z"), le("z", x)}), letter("a", "z")))});
}

/// Order formula from copy 2 to copy 1.
inline Formula order_21(const std::string& x = "x", const std::string& y = "y") {
  using namespace fo;
  return exists("z", conj({le(x, "z"), le("z", y), letter("b", "z")}));
}

}  // namespace twfo::fixtures

#include "twfo/fot.hpp"

namespace twfo::fixtures {

/// Reference block swap: every maximal a-block a^k becomes a^k b^k; b's vanish.
inline Word block_swap_reference(const Word& w) {
  Word out;
  std::size_t i = 0;
  while (i <= w.size()) {
    std::size_t k = 0;
    while (i + k < w.size() && w[i + k] == 0) ++k;
    out.insert(out.end(), k, 0);
    out.insert(out.end(), k, 1);
    i += k + 1;
  }
  return out;
}

/// The two-copy first-order transduction realizing the block swap.
inline FoTransduction block_swap_fot() {
  Alphabet ab{"a", "b"};
  FoTransduction t(ab, ab, {"1", "2"});
  t.domain = linear_graph_sentence();
  t.set_pos(0, 0, fo::letter("a", "x"));
  t.set_pos(1, 1, fo::letter("a", "x"));
  t.set_le(0, 0, fo::le("x", "y"));
  t.set_le(1, 1, fo::le("x", "y"));
  t.set_le(0, 1, order_12());
  t.set_le(1, 0, order_21());
  return t;
}

}  // namespace twfo::fixtures

#include <random>

namespace twfo::fixtures {

inline SequentialTransducer identity_seq(const Alphabet& a) {
  SequentialTransducer s(a, a, {"q"}, 0, {true});
  for (Symbol x = 0; x < static_cast<Symbol>(a.size()); ++x) s.set(0, x, 0, {x});
  return s;
}

/// Random total-ish sequential machine with productions up to `max_prod` letters.
inline SequentialTransducer random_seq(std::mt19937& rng, const Alphabet& in, const Alphabet& out, int states,
                                       int max_prod) {
  std::vector<std::string> names;
  std::vector<bool> finals;
  for (int i = 0; i < states; ++i) {
    names.push_back("s" + std::to_string(i));
    finals.push_back(rng() % 3 != 0);
  }
  finals[0] = true;
  SequentialTransducer s(in, out, names, 0, finals);
  for (int q = 0; q < states; ++q)
    for (Symbol a = 0; a < static_cast<Symbol>(in.size()); ++a) {
      if (rng() % 8 == 0) continue;
      Word p(static_cast<std::size_t>(rng() % static_cast<unsigned>(max_prod + 1)));
      for (auto& b : p) b = static_cast<Symbol>(rng() % out.size());
      s.set(q, a, static_cast<int>(rng() % static_cast<unsigned>(states)), p);
    }
  return s;
}

/// Random normalized two-way machine; most moves go right so runs often accept.
inline TwoWayTransducer random_2w(std::mt19937& rng, const Alphabet& in, const Alphabet& out, int states) {
  std::vector<std::string> names;
  std::vector<bool> finals;
  for (int i = 0; i < states; ++i) {
    names.push_back("p" + std::to_string(i));
    finals.push_back(rng() % 2 == 0);
  }
  TwoWayTransducer t(in, out, names, 0, finals);
  for (int q = 0; q < states; ++q)
    for (int s = 0; s < Tape::width(in); ++s) {
      if (rng() % 10 == 0) continue;
      int dir = static_cast<int>(rng() % 5);
      dir = dir < 3 ? +1 : dir == 3 ? -1 : 0;
      if (s == Tape::left(in)) dir = +1;
      if (s == Tape::right(in)) dir = rng() % 2 ? -1 : 0;
      Word p;
      if (rng() % 2) p.push_back(static_cast<Symbol>(rng() % out.size()));
      t.set(q, s, {static_cast<int>(rng() % static_cast<unsigned>(states)), dir, p});
    }
  return t;
}

/// Random formula over {a, b} whose free variables come from `scope`; class
/// atoms over `m` appear when it is given.
inline Formula random_formula(std::mt19937& rng, int depth, std::vector<std::string>& scope, const MonoidRef& m) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto var = [&] { return scope[pick(scope.size())]; };
  if (depth == 0 || rng() % 4 == 0) {
    switch (pick(m ? 5 : 3)) {
      case 0: return fo::letter(pick(2) ? "a" : "b", var());
      case 1: return fo::le(var(), var());
      case 2: return fo::top();
      case 3: {
        auto x = var(), y = var();
        return fo::conj({fo::le(x, y), fo::factor_class(m, static_cast<int>(pick(m->monoid.size())), x, y)});
      }
      default:
        return pick(2) ? fo::prefix_class(m, static_cast<int>(pick(m->monoid.size())), var())
                       : fo::suffix_class(m, static_cast<int>(pick(m->monoid.size())), var());
    }
  }
  switch (pick(5)) {
    case 0: return fo::conj({random_formula(rng, depth - 1, scope, m), random_formula(rng, depth - 1, scope, m)});
    case 1: return fo::disj({random_formula(rng, depth - 1, scope, m), random_formula(rng, depth - 1, scope, m)});
    case 2: return fo::neg(random_formula(rng, depth - 1, scope, m));
    default: {
      std::string v = "v" + std::to_string(scope.size());
      scope.push_back(v);
      Formula body = random_formula(rng, depth - 1, scope, m);
      scope.pop_back();
      return pick(2) ? fo::exists(v, body) : fo::forall(v, body);
    }
  }
}

}  // namespace twfo::fixtures
