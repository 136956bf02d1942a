#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twfo/alphabet.hpp"

namespace twfo {

/// Deterministic one-way transducer with a partial step function; a missing
/// transition puts the input outside the domain.
struct SequentialTransducer {
  struct Transition {
    int target = 0;
    Word production;
    friend bool operator==(const Transition&, const Transition&) = default;
  };

  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> finals;
  /// Indexed [state * |input| + symbol].
  std::vector<std::optional<Transition>> table;

  SequentialTransducer() = default;
  SequentialTransducer(Alphabet in, Alphabet out, std::vector<std::string> state_names, int init,
                       std::vector<bool> final_states);

  int num_states() const { return static_cast<int>(states.size()); }
  const std::optional<Transition>& at(int q, Symbol a) const {
    return table[static_cast<std::size_t>(q) * input.size() + static_cast<std::size_t>(a)];
  }
  void set(int q, Symbol a, int target, Word production);
  std::size_t max_production() const;
  void validate() const;

  friend bool operator==(const SequentialTransducer&, const SequentialTransducer&) = default;
};

std::optional<Word> seq_run(const SequentialTransducer& t, const Word& w);

/// Right-sequential reading: the machine consumes reverse(w) and the result is
/// reverse of its output, so each position's production stays in place.
std::optional<Word> seq_run_right(const SequentialTransducer& t, const Word& w);

}  // namespace twfo
