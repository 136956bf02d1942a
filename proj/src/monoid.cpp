#include "twfo/monoid.hpp"

#include <algorithm>
#include <sstream>

#include "twfo/error.hpp"

namespace twfo {

std::vector<std::pair<int, int>> BehaviorProfile::behavior(Side from, Side to) const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < num_states(); ++p) {
    int e = exit(p, from);
    if (e >= 0 && e % 2 == to) out.emplace_back(p, e / 2);
  }
  return out;
}

BehaviorProfile BehaviorProfile::identity(int num_states) {
  BehaviorProfile p;
  p.entries.resize(static_cast<std::size_t>(2 * num_states));
  for (int q = 0; q < num_states; ++q) {
    p.entries[static_cast<std::size_t>(2 * q)] = 2 * q + kRight;
    p.entries[static_cast<std::size_t>(2 * q + 1)] = 2 * q + kLeft;
  }
  return p;
}

InputAutomaton::InputAutomaton(const TwoWayTransducer& t)
    : input(t.input()), num_states(t.num_states()), initial(t.initial()), finals(t.finals()) {
  const int width = Tape::width(input);
  steps.resize(static_cast<std::size_t>(num_states) * static_cast<std::size_t>(width));
  for (int q = 0; q < num_states; ++q)
    for (int s = 0; s < width; ++s)
      if (const auto& m = t.at(q, s))
        steps[static_cast<std::size_t>(q) * static_cast<std::size_t>(width) + static_cast<std::size_t>(s)] =
            std::pair{m->target, m->dir};
}

BehaviorProfile tape_behaviors(const InputAutomaton& a, const std::vector<int>& tape) {
  const int n = static_cast<int>(tape.size());
  const int states = a.num_states;
  if (n == 0) return BehaviorProfile::identity(states);
  BehaviorProfile prof;
  prof.entries.assign(static_cast<std::size_t>(2 * states), -1);
  std::vector<int> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(states), -1);
  int stamp = 0;
  for (int p = 0; p < states; ++p)
    for (int side = 0; side < 2; ++side, ++stamp) {
      int q = p, pos = side == kLeft ? 0 : n - 1;
      while (true) {
        auto key = static_cast<std::size_t>(pos) * static_cast<std::size_t>(states) + static_cast<std::size_t>(q);
        if (seen[key] == stamp) break;
        seen[key] = stamp;
        const auto& step = a.at(q, tape[static_cast<std::size_t>(pos)]);
        if (!step) break;
        q = step->first;
        pos += step->second;
        if (pos < 0 || pos >= n) {
          prof.entries[static_cast<std::size_t>(2 * p + side)] = 2 * q + (pos < 0 ? kLeft : kRight);
          break;
        }
      }
    }
  return prof;
}

BehaviorProfile behaviors(const TwoWayTransducer& t, const Word& w) {
  for (Symbol s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= t.input().size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
  return tape_behaviors(InputAutomaton(t), w);
}

std::optional<SegmentExit> segment_walk(const std::vector<const BehaviorProfile*>& row, std::size_t segment, Side side,
                                        int state) {
  if (row.empty()) return SegmentExit{state, side == kLeft ? kRight : kLeft};
  const auto states = static_cast<std::size_t>(row.front()->num_states());
  std::vector<bool> seen(row.size() * 2 * states, false);
  while (true) {
    auto key = (segment * 2 + static_cast<std::size_t>(side)) * states + static_cast<std::size_t>(state);
    if (seen[key]) return std::nullopt;
    seen[key] = true;
    int e = row[segment]->exit(state, side);
    if (e < 0) return std::nullopt;
    state = e / 2;
    if (e % 2 == kLeft) {
      if (segment == 0) return SegmentExit{state, kLeft};
      --segment;
      side = kRight;
    } else {
      if (segment + 1 == row.size()) return SegmentExit{state, kRight};
      ++segment;
      side = kLeft;
    }
  }
}

BehaviorProfile glue(const BehaviorProfile& u, const BehaviorProfile& v) {
  if (u.entries.size() != v.entries.size()) throw Error(ErrorCode::InvalidMachine, "profiles over different state sets");
  BehaviorProfile r;
  r.entries.assign(u.entries.size(), -1);
  const std::vector<const BehaviorProfile*> row{&u, &v};
  for (int p = 0; p < u.num_states(); ++p) {
    if (auto x = segment_walk(row, 0, kLeft, p)) r.entries[static_cast<std::size_t>(2 * p)] = 2 * x->state + x->side;
    if (auto x = segment_walk(row, 1, kRight, p))
      r.entries[static_cast<std::size_t>(2 * p + 1)] = 2 * x->state + x->side;
  }
  return r;
}

int TransitionMonoid::product(int x, int y) const {
  for (Symbol a : representative(y)) x = times_letter(x, a);
  return x;
}

std::optional<int> TransitionMonoid::find(const BehaviorProfile& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TransitionMonoid transition_monoid(const TwoWayTransducer& t, std::size_t max_elements) {
  TransitionMonoid m;
  m.automaton_ = InputAutomaton(t);
  const auto& a = m.automaton_;
  const std::size_t k = a.input.size();
  m.left_end_ = tape_behaviors(a, {Tape::left(a.input)});
  m.right_end_ = tape_behaviors(a, {Tape::right(a.input)});
  std::vector<BehaviorProfile> letters;
  for (std::size_t s = 0; s < k; ++s) letters.push_back(tape_behaviors(a, {static_cast<int>(s)}));

  m.elements_.push_back(BehaviorProfile::identity(a.num_states));
  m.representatives_.emplace_back();
  m.index_.emplace(m.elements_.front(), 0);
  for (std::size_t i = 0; i < m.elements_.size(); ++i)
    for (std::size_t s = 0; s < k; ++s) {
      BehaviorProfile p = glue(m.elements_[i], letters[s]);
      auto [it, fresh] = m.index_.emplace(p, static_cast<int>(m.elements_.size()));
      if (fresh) {
        if (m.elements_.size() >= max_elements)
          throw Error(ErrorCode::MonoidTooLarge, "transition monoid exceeds " + std::to_string(max_elements) + " elements");
        m.elements_.push_back(std::move(p));
        Word rep = m.representatives_[i];
        rep.push_back(static_cast<Symbol>(s));
        m.representatives_.push_back(std::move(rep));
      }
      m.right_table_.push_back(it->second);
    }
  m.letter_element_.assign(m.right_table_.begin(), m.right_table_.begin() + static_cast<std::ptrdiff_t>(k));
  return m;
}

PowerData power_data(const TransitionMonoid& m, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= m.size()) throw Error(ErrorCode::ElementNotInMonoid, "element out of range");
  std::unordered_map<int, int> first;
  int x = TransitionMonoid::identity();
  for (int k = 0;; ++k) {
    auto [it, fresh] = first.emplace(x, k);
    if (!fresh) return PowerData{it->second, k - it->second};
    x = m.product(x, e);
  }
}

MonoidAperiodicity is_aperiodic(const TransitionMonoid& m) {
  MonoidAperiodicity r;
  int index = 0;
  for (int e = 0; e < static_cast<int>(m.size()); ++e) {
    PowerData d = power_data(m, e);
    if (d.period != 1) {
      r.witness = e;
      return r;
    }
    index = std::max(index, d.threshold);
  }
  r.aperiodic = true;
  r.index = index;
  return r;
}

int class_of_range(const TransitionMonoid& m, const Word& w, std::size_t from, std::size_t to) {
  int x = TransitionMonoid::identity();
  for (std::size_t i = from; i < to; ++i) {
    Symbol a = w[i];
    if (a < 0 || static_cast<std::size_t>(a) >= m.alphabet().size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
    x = m.times_letter(x, a);
  }
  return x;
}

int class_of(const TransitionMonoid& m, const Word& w) { return class_of_range(m, w, 0, w.size()); }

Dfa class_language_dfa(const TransitionMonoid& m, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= m.size()) throw Error(ErrorCode::ElementNotInMonoid, "element out of range");
  const auto n = static_cast<int>(m.size());
  std::vector<bool> finals(m.size(), false);
  finals[static_cast<std::size_t>(e)] = true;
  std::vector<int> table;
  table.reserve(m.size() * m.alphabet().size());
  for (int x = 0; x < n; ++x)
    for (std::size_t a = 0; a < m.alphabet().size(); ++a) table.push_back(m.times_letter(x, static_cast<Symbol>(a)));
  return Dfa(m.alphabet(), 0, n, 0, std::move(finals), std::move(table));
}

bool row_accepts(const TransitionMonoid& m, const std::vector<const BehaviorProfile*>& factors) {
  const InputAutomaton& a = m.automaton();
  const int right = Tape::right(a.input);
  std::vector<const BehaviorProfile*> row{&m.left_end()};
  row.insert(row.end(), factors.begin(), factors.end());
  std::vector<bool> on_right_mark(static_cast<std::size_t>(a.num_states), false);
  std::size_t segment = 0;
  Side side = kLeft;
  int state = a.initial;
  while (true) {
    auto x = segment_walk(row, segment, side, state);
    if (!x || x->side == kLeft) return false;
    state = x->state;
    // On the right endmarker: stationary steps until the run halts or goes back left.
    while (true) {
      if (on_right_mark[static_cast<std::size_t>(state)]) return false;
      on_right_mark[static_cast<std::size_t>(state)] = true;
      const auto& step = a.at(state, right);
      if (!step) return a.finals[static_cast<std::size_t>(state)];
      state = step->first;
      if (step->second == -1) break;
    }
    segment = row.size() - 1;
    side = kRight;
  }
}

bool class_accepts(const TransitionMonoid& m, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= m.size()) throw Error(ErrorCode::ElementNotInMonoid, "element out of range");
  return row_accepts(m, {&m.element(e)});
}

std::string dump_monoid(const TransitionMonoid& m, const std::vector<std::string>& state_names) {
  std::ostringstream os;
  auto print = [&](const BehaviorProfile& p, Side from, Side to) {
    os << '{';
    bool first = true;
    for (auto [x, y] : p.behavior(from, to)) {
      os << (first ? "" : ",") << '(' << state_names[static_cast<std::size_t>(x)] << ','
         << state_names[static_cast<std::size_t>(y)] << ')';
      first = false;
    }
    os << '}';
  };
  for (int e = 0; e < static_cast<int>(m.size()); ++e) {
    const Word& rep = m.representative(e);
    PowerData d = power_data(m, e);
    os << 'e' << e << " [" << (rep.empty() ? std::string("eps") : m.alphabet().format(rep)) << "]";
    const BehaviorProfile& p = m.element(e);
    os << " ll=";
    print(p, kLeft, kLeft);
    os << " lr=";
    print(p, kLeft, kRight);
    os << " rl=";
    print(p, kRight, kLeft);
    os << " rr=";
    print(p, kRight, kRight);
    os << " threshold=" << d.threshold << " period=" << d.period << '\n';
  }
  return os.str();
}

}  // namespace twfo
