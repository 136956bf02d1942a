#include "twfo/twoway.hpp"

#include <algorithm>
#include <sstream>

#include "twfo/error.hpp"

namespace twfo {

std::string Tape::name(const Alphabet& a, int sym) {
  if (sym == left(a)) return std::string(kLeftMarkToken);
  if (sym == right(a)) return std::string(kRightMarkToken);
  return a.name(sym);
}

int Tape::parse(const Alphabet& a, std::string_view token) {
  if (token == kLeftMarkToken) return left(a);
  if (token == kRightMarkToken) return right(a);
  return a.at(token);
}

const char* to_string(Halt h) {
  switch (h) {
    case Halt::Accepted: return "accepted";
    case Halt::Blocked: return "blocked";
    case Halt::Loop: return "loop";
    case Halt::Rejected: return "rejected";
  }
  return "?";
}

TwoWayTransducer::TwoWayTransducer(Alphabet input, Alphabet output, std::vector<std::string> states, int initial,
                                   std::vector<bool> finals)
    : input_(std::move(input)),
      output_(std::move(output)),
      states_(std::move(states)),
      initial_(initial),
      finals_(std::move(finals)),
      table_(states_.size() * static_cast<std::size_t>(Tape::width(input_))) {
  if (states_.empty()) throw Error(ErrorCode::InvalidMachine, "two-way transducer without states");
  if (initial_ < 0 || initial_ >= num_states()) throw Error(ErrorCode::InvalidMachine, "initial state out of range");
  if (finals_.size() != states_.size()) throw Error(ErrorCode::InvalidMachine, "final set size mismatch");
}

std::optional<int> TwoWayTransducer::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

void TwoWayTransducer::set(int q, int tape_sym, Move move) {
  if (q < 0 || q >= num_states() || move.target < 0 || move.target >= num_states())
    throw Error(ErrorCode::InvalidMachine, "state out of range");
  if (tape_sym < 0 || tape_sym >= Tape::width(input_)) throw Error(ErrorCode::SymbolNotInAlphabet, "tape symbol");
  if (move.dir < -1 || move.dir > 1) throw Error(ErrorCode::InvalidMachine, "move must be -1, 0 or +1");
  if (tape_sym == Tape::left(input_) && move.dir == -1)
    throw Error(ErrorCode::SemanticError, "left endmarker transition of state '" + states_[static_cast<std::size_t>(q)] +
                                              "' moves left");
  if (tape_sym == Tape::right(input_) && move.dir == +1)
    throw Error(ErrorCode::SemanticError, "right endmarker transition of state '" +
                                              states_[static_cast<std::size_t>(q)] + "' moves right");
  for (Symbol b : move.production)
    if (b < 0 || static_cast<std::size_t>(b) >= output_.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "production outside output alphabet");
  table_[static_cast<std::size_t>(q) * static_cast<std::size_t>(Tape::width(input_)) +
         static_cast<std::size_t>(tape_sym)] = std::move(move);
}

void TwoWayTransducer::clear(int q, int tape_sym) {
  table_[static_cast<std::size_t>(q) * static_cast<std::size_t>(Tape::width(input_)) +
         static_cast<std::size_t>(tape_sym)]
      .reset();
}

std::size_t TwoWayTransducer::transition_count() const {
  return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](const auto& m) { return m.has_value(); }));
}

std::size_t TwoWayTransducer::max_production() const {
  std::size_t m = 0;
  for (const auto& t : table_)
    if (t) m = std::max(m, t->production.size());
  return m;
}

SimResult simulate(const TwoWayTransducer& t, const Word& w) {
  const int n = static_cast<int>(w.size());
  for (Symbol s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= t.input().size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
  SimResult result;
  std::vector<bool> visited(static_cast<std::size_t>(t.num_states()) * static_cast<std::size_t>(n + 2), false);
  Configuration c{t.initial(), 0};
  Word out;
  while (true) {
    result.run.configs.push_back(c);
    auto key = static_cast<std::size_t>(c.state) * static_cast<std::size_t>(n + 2) + static_cast<std::size_t>(c.pos);
    if (visited[key]) {
      result.halt = Halt::Loop;
      return result;
    }
    visited[key] = true;
    int sym = c.pos == 0 ? Tape::left(t.input()) : c.pos == n + 1 ? Tape::right(t.input()) : w[static_cast<std::size_t>(c.pos - 1)];
    const auto& m = t.at(c.state, sym);
    if (!m) {
      if (c.pos == n + 1 && t.is_final(c.state)) {
        result.halt = Halt::Accepted;
        result.output = std::move(out);
      } else {
        result.halt = c.pos == n + 1 ? Halt::Rejected : Halt::Blocked;
      }
      return result;
    }
    out.insert(out.end(), m->production.begin(), m->production.end());
    result.run.productions.push_back(m->production);
    c = Configuration{m->target, c.pos + m->dir};
  }
}

std::string format_run(const TwoWayTransducer& t, const Word& w, const Run& run) {
  std::ostringstream os;
  const int n = static_cast<int>(w.size());
  for (std::size_t i = 0; i < run.configs.size(); ++i) {
    const auto& c = run.configs[i];
    int sym = c.pos == 0 ? Tape::left(t.input()) : c.pos == n + 1 ? Tape::right(t.input()) : w[static_cast<std::size_t>(c.pos - 1)];
    os << i << ' ' << c.pos << ' ' << Tape::name(t.input(), sym) << ' '
       << t.state_names()[static_cast<std::size_t>(c.state)];
    if (i < run.productions.size()) {
      const Word& p = run.productions[i];
      os << ' ' << (p.empty() ? std::string("-") : t.output().format(p));
    }
    os << '\n';
  }
  return os.str();
}

std::string fresh_state_name(const std::vector<std::string>& names, const std::string& base) {
  std::string candidate = base;
  for (int k = 1; std::find(names.begin(), names.end(), candidate) != names.end(); ++k)
    candidate = base + "'" + std::to_string(k);
  return candidate;
}

bool is_normalized(const TwoWayTransducer& t) { return t.max_production() <= 1; }

TwoWayTransducer normalize(const TwoWayTransducer& t) {
  if (is_normalized(t)) return t;
  const int width = Tape::width(t.input());
  std::vector<std::string> names = t.state_names();
  std::vector<bool> finals = t.finals();
  struct Chain {
    int from, sym;
    Move move;
    int first_extra;
  };
  std::vector<Chain> chains;
  for (int q = 0; q < t.num_states(); ++q)
    for (int s = 0; s < width; ++s) {
      const auto& m = t.at(q, s);
      if (!m || m->production.size() <= 1) continue;
      chains.push_back({q, s, *m, static_cast<int>(names.size())});
      for (std::size_t k = 1; k < m->production.size(); ++k) {
        names.push_back(fresh_state_name(names, t.state_names()[static_cast<std::size_t>(q)] + "." +
                                                           Tape::name(t.input(), s) + "." + std::to_string(k)));
        finals.push_back(false);
      }
    }
  TwoWayTransducer r(t.input(), t.output(), names, t.initial(), finals);
  for (int q = 0; q < t.num_states(); ++q)
    for (int s = 0; s < width; ++s)
      if (const auto& m = t.at(q, s); m && m->production.size() <= 1) r.set(q, s, *m);
  for (const Chain& c : chains) {
    const Word& p = c.move.production;
    // The first letter is emitted in place; each chained state emits the next
    // one, and the last performs the original move.
    r.set(c.from, c.sym, Move{c.first_extra, 0, {p[0]}});
    for (std::size_t k = 1; k < p.size(); ++k) {
      int state = c.first_extra + static_cast<int>(k) - 1;
      bool last = k + 1 == p.size();
      r.set(state, c.sym, Move{last ? c.move.target : state + 1, last ? c.move.dir : 0, {p[k]}});
    }
  }
  return r;
}

TwoWayTransducer mirror(const TwoWayTransducer& t) {
  const int width = Tape::width(t.input());
  const int left = Tape::left(t.input());
  const int right = Tape::right(t.input());
  std::vector<std::string> names = t.state_names();
  const int seek = static_cast<int>(names.size());
  const int done = seek + 1;
  names.push_back(fresh_state_name(names, "mirror.seek"));
  names.push_back(fresh_state_name(names, "mirror.done"));
  std::vector<bool> finals(names.size(), false);
  finals[static_cast<std::size_t>(done)] = true;
  TwoWayTransducer r(t.input(), t.output(), names, seek, finals);
  auto swap_marker = [&](int s) { return s == left ? right : s == right ? left : s; };
  for (int q = 0; q < t.num_states(); ++q)
    for (int s = 0; s < width; ++s) {
      if (const auto& m = t.at(q, s)) r.set(q, swap_marker(s), Move{m->target, -m->dir, m->production});
    }
  // The mirrored run starts on the far end and accepts by walking back.
  for (int s = 0; s < static_cast<int>(t.input().size()); ++s) {
    r.set(seek, s, Move{seek, +1, {}});
    r.set(done, s, Move{done, +1, {}});
  }
  r.set(seek, left, Move{seek, +1, {}});
  r.set(seek, right, Move{t.initial(), 0, {}});
  // Halting on the right endmarker in a final state becomes a walk to the end.
  for (int q = 0; q < t.num_states(); ++q)
    if (t.is_final(q) && !t.at(q, right)) r.set(q, left, Move{done, +1, {}});
  return r;
}

ContextPath context_path(const Run& run, const std::vector<int>& positions) {
  ContextPath p;
  for (const auto& c : run.configs) {
    auto it = std::lower_bound(positions.begin(), positions.end(), c.pos);
    if (it != positions.end() && *it == c.pos) p.steps.emplace_back(c.state, static_cast<int>(it - positions.begin()) + 1);
  }
  return p;
}

std::vector<int> context_positions(std::size_t v_len, std::size_t u_len, std::size_t w_len) {
  std::vector<int> pos;
  const int v = static_cast<int>(v_len), u = static_cast<int>(u_len), w = static_cast<int>(w_len);
  for (int i = 0; i <= v; ++i) pos.push_back(i);
  for (int i = v + u + 1; i <= v + u + w + 1; ++i) pos.push_back(i);
  return pos;
}

}  // namespace twfo
