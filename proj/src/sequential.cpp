#include "twfo/sequential.hpp"

#include <algorithm>

#include "twfo/error.hpp"

namespace twfo {

SequentialTransducer::SequentialTransducer(Alphabet in, Alphabet out, std::vector<std::string> state_names, int init,
                                           std::vector<bool> final_states)
    : input(std::move(in)),
      output(std::move(out)),
      states(std::move(state_names)),
      initial(init),
      finals(std::move(final_states)),
      table(states.size() * input.size()) {
  validate();
}

void SequentialTransducer::set(int q, Symbol a, int target, Word production) {
  table.at(static_cast<std::size_t>(q) * input.size() + static_cast<std::size_t>(a)) =
      Transition{target, std::move(production)};
}

std::size_t SequentialTransducer::max_production() const {
  std::size_t m = 0;
  for (const auto& t : table)
    if (t) m = std::max(m, t->production.size());
  return m;
}

void SequentialTransducer::validate() const {
  if (states.empty()) throw Error(ErrorCode::InvalidMachine, "sequential transducer without states");
  if (initial < 0 || initial >= num_states()) throw Error(ErrorCode::InvalidMachine, "initial state out of range");
  if (finals.size() != states.size()) throw Error(ErrorCode::InvalidMachine, "final set size mismatch");
  for (const auto& t : table) {
    if (!t) continue;
    if (t->target < 0 || t->target >= num_states()) throw Error(ErrorCode::InvalidMachine, "target out of range");
    for (Symbol b : t->production)
      if (b < 0 || static_cast<std::size_t>(b) >= output.size())
        throw Error(ErrorCode::InvalidMachine, "production outside output alphabet");
  }
}

std::optional<Word> seq_run(const SequentialTransducer& t, const Word& w) {
  int q = t.initial;
  Word out;
  for (Symbol a : w) {
    if (a < 0 || static_cast<std::size_t>(a) >= t.input.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
    const auto& tr = t.at(q, a);
    if (!tr) return std::nullopt;
    out.insert(out.end(), tr->production.begin(), tr->production.end());
    q = tr->target;
  }
  if (!t.finals[static_cast<std::size_t>(q)]) return std::nullopt;
  return out;
}

std::optional<Word> seq_run_right(const SequentialTransducer& t, const Word& w) {
  auto out = seq_run(t, reversed(w));
  if (!out) return std::nullopt;
  return reversed(std::move(*out));
}

}  // namespace twfo
