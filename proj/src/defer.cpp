#include <set>
#include <tuple>

#include "twfo/translate.hpp"

namespace twfo {
namespace {

/// Stationary chain from state s on an endmarker: where it leaves the cell
/// (if it does), what it emits on the way, and whether it halts accepting.
struct Excursion {
  std::optional<int> exit;
  Word out;
  bool accepts = false;
};

Excursion excursion(const TwoWayTransducer& t, int s, int sym) {
  Excursion e;
  std::set<int> seen;
  for (int q = s;;) {
    if (!seen.insert(q).second) return Excursion{};
    const auto& mv = t.at(q, sym);
    if (!mv) {
      e.accepts = sym == Tape::right(t.input()) && t.is_final(q);
      return e;
    }
    e.out.insert(e.out.end(), mv->production.begin(), mv->production.end());
    if (mv->dir != 0) {
      e.exit = mv->target;
      return e;
    }
    q = mv->target;
  }
}

class Deferrer {
 public:
  explicit Deferrer(const TwoWayTransducer& t) : t_(t) {
    const int n = t.num_states();
    names_ = t.state_names();
    finals_ = t.finals();
    for (int s = 0; s < n; ++s) {
      left_.push_back(excursion(t, s, Tape::left(t.input())));
      right_.push_back(excursion(t, s, Tape::right(t.input())));
      actors_.push_back(Actor{s, {}});
    }
  }

  TwoWayTransducer build() {
    const int L = Tape::left(t_.input()), R = Tape::right(t_.input());
    for (int s = 0; s < t_.num_states(); ++s) {
      end_move(s, L, left_[static_cast<std::size_t>(s)], +1, "lpend-");
      end_move(s, R, right_[static_cast<std::size_t>(s)], -1, "rpend-");
    }
    // Actors are appended while we go; pending states get their letter moves too.
    for (std::size_t x = 0; x < actors_.size(); ++x)
      for (Symbol a = 0; a < static_cast<Symbol>(t_.input().size()); ++a) letter_move(static_cast<int>(x), a);
    TwoWayTransducer r(t_.input(), t_.output(), names_, t_.initial(), finals_);
    for (auto& [from, sym, mv] : moves_) r.set(from, sym, std::move(mv));
    return r;
  }

 private:
  // Behaves like `base` on inner letters after emitting `prefix`.
  struct Actor {
    int base = -1;
    Word prefix;
  };

  const TwoWayTransducer& t_;
  std::vector<std::string> names_;
  std::vector<bool> finals_;
  std::vector<Excursion> left_, right_;
  std::vector<Actor> actors_;  // indexed by state of the result; -1 base for helper states
  std::vector<std::tuple<int, int, Move>> moves_;

  int add_state(const std::string& base, Actor actor) {
    names_.push_back(fresh_state_name(names_, base));
    finals_.push_back(false);
    actors_.push_back(std::move(actor));
    return static_cast<int>(names_.size()) - 1;
  }

  void end_move(int s, int sym, const Excursion& e, int dir, const std::string& tag) {
    if (e.exit) {
      int to = *e.exit;
      if (!e.out.empty()) to = add_state(tag + names_[static_cast<std::size_t>(s)], Actor{*e.exit, e.out});
      moves_.emplace_back(s, sym, Move{to, dir, {}});
    } else if (const auto& mv = t_.at(s, sym)) {
      moves_.emplace_back(s, sym, Move{mv->target, mv->dir, {}});
    }
  }

  void letter_move(int x, Symbol a) {
    const Actor actor = actors_[static_cast<std::size_t>(x)];
    if (actor.base < 0) return;
    const auto& mv = t_.at(actor.base, a);
    if (!mv) return;
    Word prod = actor.prefix;
    prod.insert(prod.end(), mv->production.begin(), mv->production.end());
    const Excursion& last = right_[static_cast<std::size_t>(mv->target)];
    if (mv->dir != +1 || !last.accepts || last.out.empty()) {
      moves_.emplace_back(x, a, Move{mv->target, mv->dir, std::move(prod)});
      return;
    }
    // The next cell may be the right endmarker, whose output must be emitted
    // here: look one cell ahead, then come back and act.
    const std::string tag = names_[static_cast<std::size_t>(x)] + "-" + t_.input().name(a);
    const int peek = add_state("peek-" + tag, {});
    const int back = add_state("back-" + tag, {});
    const int final_back = add_state("last-" + tag, {});
    moves_.emplace_back(x, a, Move{peek, +1, {}});
    for (Symbol b = 0; b < static_cast<Symbol>(t_.input().size()); ++b) moves_.emplace_back(peek, b, Move{back, -1, {}});
    moves_.emplace_back(peek, Tape::right(t_.input()), Move{final_back, -1, {}});
    Word with_end = prod;
    with_end.insert(with_end.end(), last.out.begin(), last.out.end());
    moves_.emplace_back(back, a, Move{mv->target, +1, std::move(prod)});
    moves_.emplace_back(final_back, a, Move{mv->target, +1, std::move(with_end)});
  }
};

}  // namespace

TwoWayTransducer defer_endmarker_output(const TwoWayTransducer& t) { return Deferrer(t).build(); }

}  // namespace twfo
