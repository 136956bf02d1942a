#include <algorithm>
#include <functional>
#include <map>

#include "twfo/error.hpp"
#include "twfo/translate.hpp"

namespace twfo {
namespace {

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

/// Interning table for enriched letters.
template <class Key>
struct Letters {
  std::map<Key, int> ids;
  std::vector<Key> keys;
  std::vector<std::string> names;

  int intern(const Key& k, const std::string& name) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      names.push_back(name);
    }
    return it->second;
  }
};

using States = std::vector<int>;
/// Output letter for a letter read between two tuples of automaton states.
using Emit = std::function<int(Symbol, const States&, const States&)>;

/// Sequential machine whose states are the reachable tuples of states of
/// `dfas`, each automaton reading the base letter of the input symbol.
SequentialTransducer annotator(const Alphabet& in, const std::vector<Dfa>& dfas, const std::function<Symbol(Symbol)>& base,
                               const Emit& emit, const std::vector<std::string>& out_names) {
  std::map<States, int> ids;
  std::vector<States> states;
  States init;
  for (const auto& d : dfas) init.push_back(d.initial());
  ids.emplace(init, 0);
  states.push_back(init);
  std::vector<std::tuple<int, Symbol, int, int>> edges;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (Symbol a = 0; a < static_cast<Symbol>(in.size()); ++a) {
      const States now = states[i];
      States next;
      for (std::size_t j = 0; j < dfas.size(); ++j) next.push_back(dfas[j].step(now[j], dfas[j].letter(base(a))));
      auto [it, fresh] = ids.emplace(next, static_cast<int>(states.size()));
      if (fresh) states.push_back(next);
      edges.emplace_back(static_cast<int>(i), a, it->second, emit(a, now, next));
    }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states.size(); ++i) names.push_back("s" + std::to_string(i));
  // Output letters are interned by `emit`; the alphabet is complete only now.
  SequentialTransducer t(in, Alphabet(out_names), names, 0, std::vector<bool>(names.size(), true));
  for (const auto& [from, a, to, out] : edges) t.set(from, a, to, {static_cast<Symbol>(out)});
  return t;
}

class Eliminator {
 public:
  Eliminator(const SfLookAroundTransducer& t, const SfToPlainOptions& options) : t_(t) {
    t.validate();
    const int L = Tape::left(t.input), R = Tape::right(t.input);
    for (const auto& tr : t.transitions) {
      if (tr.test.letter == R) add(pend_, tr.test.prefix);
      else if (tr.test.letter != L) add(pin_, tr.test.prefix);
      if (tr.test.letter == L) add(sbeg_, tr.test.suffix);
      else if (tr.test.letter != R) add(sin_, tr.test.suffix);
    }
    const std::size_t width = pin_.size() + pend_.size() + sin_.size() + sbeg_.size();
    if (width > options.max_bits)
      throw Error(ErrorCode::TooManyTests, std::to_string(width) + " enrichment bits exceed the cap of " +
                                               std::to_string(options.max_bits));
  }

  TwoWayTransducer build() {
    SequentialTransducer left = left_annotator();
    SequentialTransducer right = right_annotator();
    TwoWayTransducer core = normalize(core_machine());
    return compose_seq_2w(left, compose_right_seq_2w(right, core));
  }

 private:
  using Key1 = std::tuple<Symbol, std::vector<bool>, std::vector<bool>>;  // letter, strict and inclusive prefix bits
  using Key2 = std::tuple<int, std::vector<bool>, std::vector<bool>>;     // first-pass letter, suffix bits

  const SfLookAroundTransducer& t_;
  // Languages tested as strict prefixes of inner positions, as the prefix at
  // the right endmarker, as strict suffixes of inner positions, and as the
  // suffix at the left endmarker; in declaration order.
  std::vector<int> pin_, pend_, sin_, sbeg_;
  Letters<Key1> first_;
  Letters<Key2> second_;

  static void add(std::vector<int>& v, int lang) {
    auto it = std::lower_bound(v.begin(), v.end(), lang);
    if (it == v.end() || *it != lang) v.insert(it, lang);
  }

  static int bit(const std::vector<int>& v, int lang) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), lang) - v.begin());
  }

  static std::vector<int> merged(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r = a;
    for (int x : b) add(r, x);
    return r;
  }

  /// Left to right: each letter learns which prefix languages contain the
  /// word before it (and, for the right endmarker's tests, up to it).
  SequentialTransducer left_annotator() {
    const std::vector<int> langs = merged(pin_, pend_);
    std::vector<Dfa> dfas;
    for (int l : langs) dfas.push_back(t_.languages[static_cast<std::size_t>(l)]);
    auto emit = [&](Symbol a, const States& now, const States& next) {
      std::vector<bool> strict, inclusive;
      for (int l : pin_) {
        auto j = static_cast<std::size_t>(bit(langs, l));
        strict.push_back(dfas[j].is_final(now[j]));
      }
      for (int l : pend_) {
        auto j = static_cast<std::size_t>(bit(langs, l));
        inclusive.push_back(dfas[j].is_final(next[j]));
      }
      return first_.intern({a, strict, inclusive}, t_.input.name(a) + "." + bits(strict) + "." + bits(inclusive));
    };
    // The output alphabet is only known after exploring, so build twice.
    annotator(t_.input, dfas, [](Symbol a) { return a; }, emit, {"_"});
    return annotator(t_.input, dfas, [](Symbol a) { return a; }, emit, first_.names);
  }

  /// Right to left over the first pass: suffix membership, read on the
  /// reversed word by reversed automata.
  SequentialTransducer right_annotator() {
    const std::vector<int> langs = merged(sin_, sbeg_);
    std::vector<Dfa> dfas;
    for (int l : langs) dfas.push_back(dfa_minimize(dfa_reverse(t_.languages[static_cast<std::size_t>(l)])));
    const Alphabet in(first_.names);
    auto base = [&](Symbol e) { return std::get<0>(first_.keys[static_cast<std::size_t>(e)]); };
    auto emit = [&](Symbol e, const States& now, const States& next) {
      std::vector<bool> strict, inclusive;
      for (int l : sin_) {
        auto j = static_cast<std::size_t>(bit(langs, l));
        strict.push_back(dfas[j].is_final(now[j]));
      }
      for (int l : sbeg_) {
        auto j = static_cast<std::size_t>(bit(langs, l));
        inclusive.push_back(dfas[j].is_final(next[j]));
      }
      return second_.intern({e, strict, inclusive}, in.name(e) + "." + bits(strict) + "." + bits(inclusive));
    };
    annotator(in, dfas, base, emit, {"_"});
    return annotator(in, dfas, base, emit, second_.names);
  }

  enum class Where { Inner, AtLeft, AtRight, EmptyLeft, EmptyRight };

  bool holds(const SfTest& test, Where where, int e2) const {
    const int L = Tape::left(t_.input), R = Tape::right(t_.input);
    auto eps = [&](int lang) { return t_.languages[static_cast<std::size_t>(lang)].accepts_word({}); };
    if (where == Where::EmptyLeft) return test.letter == L && eps(test.prefix) && eps(test.suffix);
    if (where == Where::EmptyRight) return test.letter == R && eps(test.prefix) && eps(test.suffix);
    const auto& [e1, s_strict, s_incl] = second_.keys[static_cast<std::size_t>(e2)];
    const auto& [a, p_strict, p_incl] = first_.keys[static_cast<std::size_t>(e1)];
    auto at = [](const std::vector<bool>& v, const std::vector<int>& langs, int l) {
      return v[static_cast<std::size_t>(bit(langs, l))];
    };
    switch (where) {
      case Where::Inner: return test.letter == a && at(p_strict, pin_, test.prefix) && at(s_strict, sin_, test.suffix);
      case Where::AtLeft: return test.letter == L && eps(test.prefix) && at(s_incl, sbeg_, test.suffix);
      case Where::AtRight: return test.letter == R && at(p_incl, pend_, test.prefix) && eps(test.suffix);
      default: return false;
    }
  }

  /// The transition of `q` whose test holds, if any.
  std::optional<int> fire(int q, Where where, int e2) const {
    std::optional<int> found;
    for (std::size_t k = 0; k < t_.transitions.size(); ++k) {
      const auto& tr = t_.transitions[k];
      if (tr.from != q || !holds(tr.test, where, e2)) continue;
      if (found)
        throw Error(ErrorCode::DeterminismViolation,
                    "two tests of state '" + t_.states[static_cast<std::size_t>(q)] + "' hold together");
      found = static_cast<int>(k);
    }
    return found;
  }

  /// Tests at an endmarker need the bits of the neighbouring letter: the
  /// machine peeks there, comes back, and applies the transition found.
  TwoWayTransducer core_machine() {
    const Alphabet in(second_.names);
    const int L = Tape::left(in), R = Tape::right(in);
    const int n = t_.num_states();
    std::vector<std::string> names = t_.states;
    std::vector<bool> finals = t_.finals;
    auto add_state = [&](const std::string& base, bool final) {
      names.push_back(fresh_state_name(names, base));
      finals.push_back(final);
      return static_cast<int>(names.size()) - 1;
    };
    std::vector<bool> tests_left(static_cast<std::size_t>(n)), tests_right(static_cast<std::size_t>(n));
    for (const auto& tr : t_.transitions) {
      if (tr.test.letter == Tape::left(t_.input)) tests_left[static_cast<std::size_t>(tr.from)] = true;
      if (tr.test.letter == Tape::right(t_.input)) tests_right[static_cast<std::size_t>(tr.from)] = true;
    }
    std::vector<std::tuple<int, int, Move>> moves;
    std::map<std::pair<int, int>, int> apply_ids;  // (side, transition) -> state
    auto apply = [&](int side, int k) {
      auto [it, fresh] = apply_ids.emplace(std::pair{side, k}, 0);
      if (fresh) {
        const auto& tr = t_.transitions[static_cast<std::size_t>(k)];
        it->second = add_state("apply." + std::to_string(k), false);
        moves.emplace_back(it->second, side, Move{tr.to, tr.move, tr.production});
      }
      return it->second;
    };
    for (int q = 0; q < n; ++q) {
      const std::string& qn = t_.states[static_cast<std::size_t>(q)];
      for (int e = 0; e < static_cast<int>(in.size()); ++e)
        if (auto k = fire(q, Where::Inner, e)) {
          const auto& tr = t_.transitions[static_cast<std::size_t>(*k)];
          moves.emplace_back(q, e, Move{tr.to, tr.move, tr.production});
        }
      if (tests_left[static_cast<std::size_t>(q)]) {
        const int peek = add_state("peek." + qn, false);
        moves.emplace_back(q, L, Move{peek, +1, {}});
        for (int e = 0; e < static_cast<int>(in.size()); ++e)
          if (auto k = fire(q, Where::AtLeft, e)) moves.emplace_back(peek, e, Move{apply(L, *k), -1, {}});
        if (auto k = fire(q, Where::EmptyLeft, 0)) moves.emplace_back(peek, R, Move{apply(L, *k), -1, {}});
      }
      if (tests_right[static_cast<std::size_t>(q)]) {
        const int peek = add_state("peek." + qn, false);
        const int halt = add_state("halt." + qn, t_.finals[static_cast<std::size_t>(q)]);
        moves.emplace_back(q, R, Move{peek, -1, {}});
        for (int e = 0; e < static_cast<int>(in.size()); ++e) {
          auto k = fire(q, Where::AtRight, e);
          moves.emplace_back(peek, e, Move{k ? apply(R, *k) : halt, +1, {}});
        }
        auto k = fire(q, Where::EmptyRight, 0);
        moves.emplace_back(peek, L, Move{k ? apply(R, *k) : halt, +1, {}});
      }
    }
    TwoWayTransducer core(in, t_.output, names, t_.initial, finals);
    for (auto& [from, sym, mv] : moves) core.set(from, sym, std::move(mv));
    return core;
  }
};

}  // namespace

TwoWayTransducer sf_la_to_plain(const SfLookAroundTransducer& t, const SfToPlainOptions& options) {
  return Eliminator(t, options).build();
}

TwoWayTransducer fot_to_twoway(const FoTransduction& t, const SfToPlainOptions& options) {
  return sf_la_to_plain(fo_la_to_sf_la(fot_to_fo_lookaround(t)), options);
}

}  // namespace twfo
