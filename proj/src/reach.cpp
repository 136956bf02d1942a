#include <vector>

#include "twfo/error.hpp"
#include "twfo/translate.hpp"

namespace twfo {
namespace {

// A row abstracting ⊢u⊣: single cells (endmarkers and the target letter)
// and factors summarized by their behaviour profiles.
struct Piece {
  const BehaviorProfile* profile = nullptr;
  int cell = -1;
};

struct Cursor {
  std::size_t piece;
  Side side;  // entry side; unused on cells
  int state;
};

/// Follows the run from `at` and collects the states it has on the cell
/// `target`, until it halts, loops or falls off the row.
std::vector<bool> walk(const InputAutomaton& a, const std::vector<Piece>& row, Cursor at, std::size_t target) {
  const auto states = static_cast<std::size_t>(a.num_states);
  std::vector<bool> seen(row.size() * 2 * states, false), found(states, false);
  while (true) {
    const Piece& p = row[at.piece];
    const Side side = p.profile ? at.side : kLeft;
    auto key = (at.piece * 2 + static_cast<std::size_t>(side)) * states + static_cast<std::size_t>(at.state);
    if (seen[key]) return found;
    seen[key] = true;
    int dir = 0;
    if (p.profile) {
      int e = p.profile->exit(at.state, side);
      if (e < 0) return found;
      at.state = e / 2;
      dir = e % 2 == kLeft ? -1 : +1;
    } else {
      if (at.piece == target) found[static_cast<std::size_t>(at.state)] = true;
      const auto& step = a.at(at.state, p.cell);
      if (!step) return found;
      at.state = step->first;
      dir = step->second;
    }
    if (dir == 0) continue;
    if (dir < 0 && at.piece == 0) return found;
    if (dir > 0 && at.piece + 1 == row.size()) return found;
    at.piece = dir < 0 ? at.piece - 1 : at.piece + 1;
    at.side = dir < 0 ? kRight : kLeft;
  }
}

void check_element(const TransitionMonoid& m, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= m.size()) throw Error(ErrorCode::ElementNotInMonoid, "element out of range");
}

}  // namespace

std::vector<bool> reach_states(const TransitionMonoid& m, const ClassTriple& t, ReachOrder order, int q) {
  check_element(m, t.pre);
  check_element(m, t.suf);
  if (order != ReachOrder::Same) check_element(m, t.mid);
  const InputAutomaton& a = m.automaton();
  const Piece left{nullptr, Tape::left(a.input)}, right{nullptr, Tape::right(a.input)};
  const Piece pre{&m.element(t.pre)}, suf{&m.element(t.suf)}, letter{nullptr, t.letter};
  switch (order) {
    case ReachOrder::Same: return walk(a, {left, pre, letter, suf, right}, Cursor{2, kLeft, q}, 2);
    case ReachOrder::Before:
      return walk(a, {left, pre, Piece{&m.element(t.mid)}, letter, suf, right}, Cursor{2, kLeft, q}, 3);
    case ReachOrder::After: break;
  }
  return walk(a, {left, pre, letter, Piece{&m.element(t.mid)}, suf, right}, Cursor{3, kRight, q}, 2);
}

bool reach_decision(const TransitionMonoid& m, const ClassTriple& t, ReachOrder order, int q, int q2) {
  return reach_states(m, t, order, q).at(static_cast<std::size_t>(q2));
}

std::vector<bool> start_states(const TransitionMonoid& m, int pre, Symbol letter, int suf) {
  check_element(m, pre);
  check_element(m, suf);
  const InputAutomaton& a = m.automaton();
  std::vector<Piece> row{{nullptr, Tape::left(a.input)}, {&m.element(pre)}, {nullptr, letter}, {&m.element(suf)},
                         {nullptr, Tape::right(a.input)}};
  return walk(a, row, Cursor{0, kLeft, a.initial}, 2);
}

bool start_decision(const TransitionMonoid& m, int pre, Symbol letter, int suf, int q) {
  return start_states(m, pre, letter, suf).at(static_cast<std::size_t>(q));
}

}  // namespace twfo
