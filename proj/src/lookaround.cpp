#include "twfo/lookaround.hpp"

#include <algorithm>

#include "twfo/error.hpp"

namespace twfo {
namespace {

void check_production(const Alphabet& out, const Word& p) {
  for (Symbol b : p)
    if (b < 0 || static_cast<std::size_t>(b) >= out.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "production outside output alphabet");
}

void check_states(int states, int initial, const std::vector<bool>& finals) {
  if (states == 0) throw Error(ErrorCode::InvalidMachine, "machine without states");
  if (initial < 0 || initial >= states) throw Error(ErrorCode::InvalidMachine, "initial state out of range");
  if (finals.size() != static_cast<std::size_t>(states)) throw Error(ErrorCode::InvalidMachine, "final set size mismatch");
}

void check_word(const Alphabet& a, const Word& w) {
  for (Symbol s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= a.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
}

std::vector<std::vector<int>> by_state(int states, const auto& transitions) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(states));
  for (std::size_t i = 0; i < transitions.size(); ++i)
    out[static_cast<std::size_t>(transitions[i].from)].push_back(static_cast<int>(i));
  return out;
}

struct Step {
  int transition;
  int target;
};

/// The transition firing at (q, i) together with its target, if any.
std::optional<Step> fo_step(const FoLookAroundTransducer& t, const std::vector<int>& outgoing, const Word& w, int i) {
  const int n = static_cast<int>(w.size());
  std::optional<Step> found;
  for (int k : outgoing) {
    const auto& tr = t.transitions[static_cast<std::size_t>(k)];
    if (!eval(tr.test, t.input, w, {{"x", i}}, Positions::Marked)) continue;
    std::optional<int> target;
    for (int j = 0; j <= n + 1; ++j) {
      if (!eval(tr.move, t.input, w, {{"x", i}, {"y", j}}, Positions::Marked)) continue;
      if (target)
        throw Error(ErrorCode::DeterminismViolation, "move formula of a transition from state '" +
                                                         t.states[static_cast<std::size_t>(tr.from)] +
                                                         "' has two targets at position " + std::to_string(i));
      target = j;
    }
    if (!target) continue;
    if (found)
      throw Error(ErrorCode::DeterminismViolation, "two transitions from state '" +
                                                       t.states[static_cast<std::size_t>(tr.from)] +
                                                       "' fire at position " + std::to_string(i));
    found = Step{k, *target};
  }
  return found;
}

/// Membership of the strict prefix and suffix around each position, cached per language.
class SfContext {
 public:
  SfContext(const SfLookAroundTransducer& t, const Word& w)
      : t_(t), w_(w), n_(static_cast<int>(w.size())), prefix_(t.languages.size()), suffix_(t.languages.size()) {}

  bool holds(const SfTest& test, int pos) {
    int sym = pos == 0 ? Tape::left(t_.input) : pos == n_ + 1 ? Tape::right(t_.input) : w_[static_cast<std::size_t>(pos - 1)];
    if (sym != test.letter) return false;
    return table(prefix_, test.prefix, true)[static_cast<std::size_t>(pos)] &&
           table(suffix_, test.suffix, false)[static_cast<std::size_t>(pos)];
  }

 private:
  const SfLookAroundTransducer& t_;
  const Word& w_;
  int n_;
  std::vector<std::vector<bool>> prefix_, suffix_;

  const std::vector<bool>& table(std::vector<std::vector<bool>>& cache, int lang, bool is_prefix) {
    auto& row = cache[static_cast<std::size_t>(lang)];
    if (!row.empty()) return row;
    const Dfa& d = t_.languages[static_cast<std::size_t>(lang)];
    row.resize(static_cast<std::size_t>(n_ + 2));
    if (is_prefix) {
      std::vector<int> states{d.initial()};
      for (Symbol a : w_) states.push_back(d.step(states.back(), a));
      for (int i = 0; i <= n_ + 1; ++i)
        row[static_cast<std::size_t>(i)] = d.is_final(states[static_cast<std::size_t>(std::clamp(i - 1, 0, n_))]);
    } else {
      for (int i = 0; i <= n_ + 1; ++i) {
        int q = d.initial();
        for (int k = std::min(i, n_); k < n_; ++k) q = d.step(q, w_[static_cast<std::size_t>(k)]);
        row[static_cast<std::size_t>(i)] = d.is_final(q);
      }
    }
    return row;
  }
};

std::optional<int> sf_step(const SfLookAroundTransducer& t, const std::vector<int>& outgoing, SfContext& ctx, int i) {
  std::optional<int> found;
  for (int k : outgoing) {
    const auto& tr = t.transitions[static_cast<std::size_t>(k)];
    if (!ctx.holds(tr.test, i)) continue;
    if (found)
      throw Error(ErrorCode::DeterminismViolation, "two tests of state '" + t.states[static_cast<std::size_t>(tr.from)] +
                                                       "' hold at position " + std::to_string(i));
    found = k;
  }
  return found;
}

template <class Machine, class Fire>
LaResult run_machine(const Machine& t, const Word& w, Fire fire) {
  const int n = static_cast<int>(w.size());
  LaResult r;
  std::vector<bool> visited(static_cast<std::size_t>(t.num_states()) * static_cast<std::size_t>(n + 2), false);
  Configuration c{t.initial, 0};
  Word out;
  while (true) {
    r.run.configs.push_back(c);
    auto key = static_cast<std::size_t>(c.state) * static_cast<std::size_t>(n + 2) + static_cast<std::size_t>(c.pos);
    if (visited[key]) {
      r.halt = Halt::Loop;
      return r;
    }
    visited[key] = true;
    auto step = fire(c);  // (transition index, next position)
    if (!step) {
      if (c.pos == n + 1 && t.finals[static_cast<std::size_t>(c.state)]) {
        r.halt = Halt::Accepted;
        r.output = std::move(out);
      } else {
        r.halt = c.pos == n + 1 ? Halt::Rejected : Halt::Blocked;
      }
      return r;
    }
    const auto& tr = t.transitions[static_cast<std::size_t>(step->first)];
    out.insert(out.end(), tr.production.begin(), tr.production.end());
    r.run.productions.push_back(tr.production);
    c = Configuration{tr.to, step->second};
  }
}

std::string witness_text(const Alphabet& a, const Word& w, const std::string& state, int pos) {
  return " (word '" + a.format(w) + "', state '" + state + "', position " + std::to_string(pos) + ")";
}

}  // namespace

void FoLookAroundTransducer::validate() const {
  check_states(num_states(), initial, finals);
  for (const auto& tr : transitions) {
    if (tr.from < 0 || tr.from >= num_states() || tr.to < 0 || tr.to >= num_states())
      throw Error(ErrorCode::InvalidMachine, "transition state out of range");
    if (!tr.test || !tr.move) throw Error(ErrorCode::InvalidMachine, "transition without formulas");
    for (const auto& v : free_vars(tr.test))
      if (v != "x") throw Error(ErrorCode::UnboundVariable, "test uses free variable '" + v + "'");
    for (const auto& v : free_vars(tr.move))
      if (v != "x" && v != "y") throw Error(ErrorCode::UnboundVariable, "move uses free variable '" + v + "'");
    check_class_alphabets(tr.test, input);
    check_class_alphabets(tr.move, input);
    check_production(output, tr.production);
  }
}

int SfLookAroundTransducer::add_language(const Dfa& d) {
  if (!(d.base() == input) || d.tracks() != 0) throw Error(ErrorCode::AlphabetMismatch, "test language alphabet");
  Dfa m = dfa_minimize(d);
  auto it = std::find(languages.begin(), languages.end(), m);
  if (it != languages.end()) return static_cast<int>(it - languages.begin());
  languages.push_back(std::move(m));
  return static_cast<int>(languages.size()) - 1;
}

void SfLookAroundTransducer::validate() const {
  check_states(num_states(), initial, finals);
  for (const auto& d : languages)
    if (!(d.base() == input) || d.tracks() != 0) throw Error(ErrorCode::AlphabetMismatch, "test language alphabet");
  const int langs = static_cast<int>(languages.size());
  for (const auto& tr : transitions) {
    if (tr.from < 0 || tr.from >= num_states() || tr.to < 0 || tr.to >= num_states())
      throw Error(ErrorCode::InvalidMachine, "transition state out of range");
    if (tr.test.prefix < 0 || tr.test.prefix >= langs || tr.test.suffix < 0 || tr.test.suffix >= langs)
      throw Error(ErrorCode::InvalidMachine, "test language out of range");
    if (tr.test.letter < 0 || tr.test.letter >= Tape::width(input)) throw Error(ErrorCode::SymbolNotInAlphabet, "test letter");
    if (tr.move < -1 || tr.move > 1) throw Error(ErrorCode::InvalidMachine, "move must be -1, 0 or +1");
    if ((tr.test.letter == Tape::left(input) && tr.move == -1) || (tr.test.letter == Tape::right(input) && tr.move == 1))
      throw Error(ErrorCode::SemanticError, "move leaves the tape");
    check_production(output, tr.production);
  }
}

void SfLookAroundTransducer::certify_star_free() const {
  for (std::size_t i = 0; i < languages.size(); ++i)
    if (!dfa_is_counter_free(languages[i]).aperiodic)
      throw Error(ErrorCode::NonAperiodicCompilation, "test language " + std::to_string(i) + " is not star-free");
}

LaResult simulate_fo_la(const FoLookAroundTransducer& t, const Word& w) {
  check_word(t.input, w);
  auto outgoing = by_state(t.num_states(), t.transitions);
  return run_machine(t, w, [&](const Configuration& c) -> std::optional<std::pair<int, int>> {
    auto s = fo_step(t, outgoing[static_cast<std::size_t>(c.state)], w, c.pos);
    if (!s) return std::nullopt;
    return std::pair{s->transition, s->target};
  });
}

LaResult simulate_sf_la(const SfLookAroundTransducer& t, const Word& w) {
  check_word(t.input, w);
  auto outgoing = by_state(t.num_states(), t.transitions);
  SfContext ctx(t, w);
  return run_machine(t, w, [&](const Configuration& c) -> std::optional<std::pair<int, int>> {
    auto k = sf_step(t, outgoing[static_cast<std::size_t>(c.state)], ctx, c.pos);
    if (!k) return std::nullopt;
    return std::pair{*k, c.pos + t.transitions[static_cast<std::size_t>(*k)].move};
  });
}

bool sf_test_holds(const SfLookAroundTransducer& t, const SfTest& test, const Word& w, int pos) {
  check_word(t.input, w);
  SfContext ctx(t, w);
  return ctx.holds(test, pos);
}

void check_determinism(const FoLookAroundTransducer& t, std::size_t max_len) {
  auto outgoing = by_state(t.num_states(), t.transitions);
  for (const Word& w : enumerate_words(t.input.size(), 0, max_len))
    for (int q = 0; q < t.num_states(); ++q)
      for (int i = 0; i <= static_cast<int>(w.size()) + 1; ++i) {
        try {
          fo_step(t, outgoing[static_cast<std::size_t>(q)], w, i);
        } catch (const Error& e) {
          throw Error(ErrorCode::DeterminismViolation,
                      e.detail() + witness_text(t.input, w, t.states[static_cast<std::size_t>(q)], i));
        }
      }
}

void check_determinism(const SfLookAroundTransducer& t, std::size_t max_len) {
  auto outgoing = by_state(t.num_states(), t.transitions);
  for (const Word& w : enumerate_words(t.input.size(), 0, max_len)) {
    SfContext ctx(t, w);
    for (int q = 0; q < t.num_states(); ++q)
      for (int i = 0; i <= static_cast<int>(w.size()) + 1; ++i) {
        try {
          sf_step(t, outgoing[static_cast<std::size_t>(q)], ctx, i);
        } catch (const Error& e) {
          throw Error(ErrorCode::DeterminismViolation,
                      e.detail() + witness_text(t.input, w, t.states[static_cast<std::size_t>(q)], i));
        }
      }
  }
}

}  // namespace twfo
