#include <deque>
#include <map>
#include <set>

#include "twfo/error.hpp"
#include "twfo/translate.hpp"

namespace twfo {
namespace {

using namespace fo;

constexpr unsigned kX = 1, kY = 2;  // track bits of x and y

// One conjunct of a split unary test, plus the walking state it starts (if any).
struct Piece {
  Dfa prefix;
  int letter;
  Dfa suffix;
  int walk = -1;
};

enum class Refine { None, Forward, Backward };

class StarFreeBuilder {
 public:
  explicit StarFreeBuilder(const FoLookAroundTransducer& t)
      : t_(t), a_(t.input), left_(Tape::left(a_)), right_(Tape::right(a_)), universal_(dfa_universal(a_)) {
    t.validate();
    r_.input = t.input;
    r_.output = t.output;
    r_.states = t.states;
    r_.initial = t.initial;
    r_.finals = t.finals;
    r_.add_language(universal_);
  }

  SfLookAroundTransducer build() {
    for (std::size_t k = 0; k < t_.transitions.size(); ++k) translate(static_cast<int>(k));
    // Walkers discovered while translating are expanded in order.
    for (std::size_t i = 0; i < walkers_.size(); ++i) expand(i);
    return std::move(r_);
  }

 private:
  struct Walker {
    int transition;
    int dir;
    int state;  // of the forward (dir > 0) or reversed (dir < 0) move automaton
    int id;
  };

  const FoLookAroundTransducer& t_;
  const Alphabet& a_;
  int left_, right_;
  Dfa universal_;
  SfLookAroundTransducer r_;
  std::vector<Dfa> forward_, backward_;  // per source transition
  std::vector<Walker> walkers_;
  std::map<std::tuple<int, int, int>, int> walker_ids_;

  Dfa compile(const Formula& f, std::vector<std::string> vars) const {
    return dfa_minimize(compile_to_dfa(f, vars, a_, Positions::Marked));
  }

  /// Words over the input letters leading `d` from `start` into `finals`.
  Dfa lang(const Dfa& d, int start, std::vector<bool> finals) const {
    std::vector<int> map;
    for (Symbol s = 0; s < static_cast<Symbol>(a_.size()); ++s) map.push_back(d.letter(s));
    return dfa_minimize(dfa_restrict(d.with_initial(start).with_finals(std::move(finals)), a_, map));
  }

  static std::vector<bool> only(const Dfa& d, int q) {
    std::vector<bool> f(static_cast<std::size_t>(d.num_states()), false);
    f[static_cast<std::size_t>(q)] = true;
    return f;
  }

  /// States that accept after reading one unmarked endmarker.
  static std::vector<bool> before(const Dfa& d, int mark) {
    std::vector<bool> f;
    for (int q = 0; q < d.num_states(); ++q) f.push_back(d.is_final(d.step(q, d.letter(mark))));
    return f;
  }

  std::vector<int> reachable(const Dfa& d, int start) const {
    std::set<int> seen{start};
    std::deque<int> todo{start};
    while (!todo.empty()) {
      int q = todo.front();
      todo.pop_front();
      for (Symbol s = 0; s < static_cast<Symbol>(a_.size()); ++s)
        if (seen.insert(d.step(q, d.letter(s))).second) todo.push_back(d.step(q, d.letter(s)));
    }
    return {seen.begin(), seen.end()};
  }

  /// Splits the unary test `chi` at its mark. With a refinement, prefixes
  /// (Forward) or suffixes (Backward) are further split by the state the move
  /// automaton `m` reaches on them, which becomes the piece's walking state.
  std::vector<Piece> split(const Dfa& chi, Refine mode, const Dfa* m) const {
    std::vector<Piece> out;
    const int start = chi.step(chi.initial(), chi.letter(left_));
    const auto chi_states = reachable(chi, start);
    const auto suffix_finals = before(chi, right_);
    std::vector<int> m_states;
    int m_start = -1;
    if (mode == Refine::Forward) m_start = m->step(m->initial(), m->letter(left_));
    if (mode == Refine::Backward) m_start = m->step(m->initial(), m->letter(right_));
    if (mode != Refine::None) m_states = reachable(*m, m_start);

    if (mode != Refine::Backward) {
      Dfa s = lang(chi, chi.step(chi.initial(), chi.letter(left_, kX)), suffix_finals);
      if (!dfa_is_empty(s)) {
        int walk = mode == Refine::Forward ? m->step(m->initial(), m->letter(left_, kX)) : -1;
        out.push_back(Piece{universal_, left_, std::move(s), walk});
      }
    }
    for (int q : chi_states) {
      Dfa p = lang(chi, start, only(chi, q));
      for (Symbol a = 0; a < static_cast<Symbol>(a_.size()); ++a) {
        Dfa s = lang(chi, chi.step(q, chi.letter(a, kX)), suffix_finals);
        if (dfa_is_empty(s)) continue;
        if (mode == Refine::None) {
          out.push_back(Piece{p, a, s});
        } else if (mode == Refine::Forward) {
          for (int r : m_states) {
            Dfa pr = dfa_minimize(dfa_intersect(p, lang(*m, m_start, only(*m, r))));
            if (!dfa_is_empty(pr)) out.push_back(Piece{std::move(pr), a, s, m->step(r, m->letter(a, kX))});
          }
        } else {
          for (int r : m_states) {
            Dfa seen_backward = dfa_minimize(dfa_reverse(lang(*m, m_start, only(*m, r))));
            Dfa sr = dfa_minimize(dfa_intersect(s, seen_backward));
            if (!dfa_is_empty(sr)) out.push_back(Piece{p, a, std::move(sr), m->step(r, m->letter(a, kX))});
          }
        }
      }
      if (mode != Refine::Forward && chi.is_final(chi.step(q, chi.letter(right_, kX)))) {
        int walk = mode == Refine::Backward ? m->step(m->initial(), m->letter(right_, kX)) : -1;
        out.push_back(Piece{p, right_, universal_, walk});
      }
    }
    return out;
  }

  int walker(int transition, int dir, int state) {
    auto key = std::tuple{transition, dir, state};
    if (auto it = walker_ids_.find(key); it != walker_ids_.end()) return it->second;
    const std::string base = "w" + std::to_string(transition) + (dir > 0 ? "r" : "l") + std::to_string(state);
    r_.states.push_back(fresh_state_name(r_.states, base));
    r_.finals.push_back(false);
    const int id = static_cast<int>(r_.states.size()) - 1;
    walker_ids_.emplace(key, id);
    walkers_.push_back(Walker{transition, dir, state, id});
    return id;
  }

  void add(int from, const Dfa& prefix, int letter, const Dfa& suffix, int to, const Word& production, int move) {
    SfTest test{r_.add_language(prefix), letter, r_.add_language(suffix)};
    r_.transitions.push_back(SfLaTransition{from, test, to, production, move});
  }

  void translate(int k) {
    const auto& tr = t_.transitions[static_cast<std::size_t>(k)];
    const Formula stay = conj({tr.test, rename_free(tr.move, {{"y", "x"}})});
    const Formula right = conj({tr.test, exists("y", conj({lt("x", "y"), tr.move}))});
    const Formula left = conj({tr.test, exists("y", conj({lt("y", "x"), tr.move}))});
    const Dfa d0 = compile(stay, {"x"}), dr = compile(right, {"x"}), dl = compile(left, {"x"});
    if (!dfa_is_empty(dfa_intersect(d0, dr)) || !dfa_is_empty(dfa_intersect(d0, dl)) ||
        !dfa_is_empty(dfa_intersect(dr, dl)))
      throw Error(ErrorCode::DirectionAmbiguity,
                  "move of a transition from state '" + t_.states[static_cast<std::size_t>(tr.from)] +
                      "' admits targets in two directions");
    forward_.push_back(compile(tr.move, {"x", "y"}));
    backward_.push_back(dfa_minimize(dfa_reverse(forward_.back())));
    for (const Piece& p : split(d0, Refine::None, nullptr)) add(tr.from, p.prefix, p.letter, p.suffix, tr.to, tr.production, 0);
    for (const Piece& p : split(dr, Refine::Forward, &forward_.back()))
      add(tr.from, p.prefix, p.letter, p.suffix, walker(k, +1, p.walk), tr.production, +1);
    for (const Piece& p : split(dl, Refine::Backward, &backward_.back()))
      add(tr.from, p.prefix, p.letter, p.suffix, walker(k, -1, p.walk), tr.production, -1);
  }

  /// A walker steps one cell at a time until marking the current cell as y
  /// satisfies the move formula, then hands over to the target state.
  void expand(std::size_t i) {
    const Walker w = walkers_[i];
    const int to = t_.transitions[static_cast<std::size_t>(w.transition)].to;
    const Dfa& m = w.dir > 0 ? forward_[static_cast<std::size_t>(w.transition)] : backward_[static_cast<std::size_t>(w.transition)];
    const int far_end = w.dir > 0 ? right_ : left_;
    if (m.is_final(m.step(w.state, m.letter(far_end, kY)))) add(w.id, universal_, far_end, universal_, to, {}, 0);
    const auto rest = before(m, far_end);
    for (Symbol a = 0; a < static_cast<Symbol>(a_.size()); ++a) {
      Dfa land = lang(m, m.step(w.state, m.letter(a, kY)), rest);
      // Backward automata read the prefix reversed.
      if (w.dir < 0) land = dfa_minimize(dfa_reverse(land));
      const Dfa go_on = dfa_minimize(dfa_complement(land));
      if (!dfa_is_empty(land)) {
        if (w.dir > 0) add(w.id, universal_, a, land, to, {}, 0);
        else add(w.id, land, a, universal_, to, {}, 0);
      }
      const int next = m.step(w.state, m.letter(a));
      if (dfa_is_empty(go_on) || dfa_is_empty(m.with_initial(next))) continue;
      const int id = walker(w.transition, w.dir, next);
      if (w.dir > 0) add(w.id, universal_, a, go_on, id, {}, +1);
      else add(w.id, go_on, a, universal_, id, {}, -1);
    }
  }
};

}  // namespace

SfLookAroundTransducer fo_la_to_sf_la(const FoLookAroundTransducer& t) { return StarFreeBuilder(t).build(); }

}  // namespace twfo
