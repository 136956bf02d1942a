#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twfo/alphabet.hpp"

namespace twfo {

/// Tape symbols of a two-way machine: input letters 0..|A|-1, then the left
/// endmarker at |A| and the right endmarker at |A|+1.
struct Tape {
  static int left(const Alphabet& a) { return static_cast<int>(a.size()); }
  static int right(const Alphabet& a) { return static_cast<int>(a.size()) + 1; }
  static int width(const Alphabet& a) { return static_cast<int>(a.size()) + 2; }
  static std::string name(const Alphabet& a, int sym);
  static int parse(const Alphabet& a, std::string_view token);
};

struct Move {
  int target = 0;
  int dir = 0;  // -1, 0, +1
  Word production;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Deterministic two-way transducer with partial transition function.
/// A run accepts when it halts (no transition applies) on the right
/// endmarker in a final state.
class TwoWayTransducer {
 public:
  TwoWayTransducer() = default;
  TwoWayTransducer(Alphabet input, Alphabet output, std::vector<std::string> states, int initial,
                   std::vector<bool> finals);

  const Alphabet& input() const noexcept { return input_; }
  const Alphabet& output() const noexcept { return output_; }
  const std::vector<std::string>& state_names() const noexcept { return states_; }
  int num_states() const noexcept { return static_cast<int>(states_.size()); }
  int initial() const noexcept { return initial_; }
  bool is_final(int q) const { return finals_[static_cast<std::size_t>(q)]; }
  const std::vector<bool>& finals() const noexcept { return finals_; }
  std::optional<int> find_state(std::string_view name) const;

  const std::optional<Move>& at(int q, int tape_sym) const {
    return table_[static_cast<std::size_t>(q) * static_cast<std::size_t>(Tape::width(input_)) +
                  static_cast<std::size_t>(tape_sym)];
  }
  /// Validates the endmarker move constraints and alphabet membership.
  void set(int q, int tape_sym, Move move);
  void clear(int q, int tape_sym);

  std::size_t transition_count() const;
  std::size_t max_production() const;

  friend bool operator==(const TwoWayTransducer&, const TwoWayTransducer&) = default;

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> states_;
  int initial_ = 0;
  std::vector<bool> finals_;
  std::vector<std::optional<Move>> table_;
};

struct Configuration {
  int state = 0;
  int pos = 0;  // 0 = left endmarker, |w|+1 = right endmarker
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Run {
  std::vector<Configuration> configs;
  std::vector<Word> productions;  // productions[i] emitted between configs[i] and configs[i+1]
};

enum class Halt { Accepted, Blocked, Loop, Rejected };
const char* to_string(Halt h);

struct SimResult {
  std::optional<Word> output;
  Halt halt = Halt::Blocked;
  Run run;
};

/// Runs from (initial, 0) until no transition applies. Rejected means the
/// run halted on the right endmarker in a non-final state; Blocked means it
/// halted elsewhere.
SimResult simulate(const TwoWayTransducer& t, const Word& w);

/// Trace table: one line per configuration, "step pos symbol state production".
std::string format_run(const TwoWayTransducer& t, const Word& w, const Run& run);

/// `base`, primed until it does not clash with `names`.
std::string fresh_state_name(const std::vector<std::string>& names, const std::string& base);

/// Splits every production longer than one letter into a chain of
/// stationary emitting states.
TwoWayTransducer normalize(const TwoWayTransducer& t);
bool is_normalized(const TwoWayTransducer& t);

/// Machine that runs on reverse(w) and emits exactly the output of t on w.
TwoWayTransducer mirror(const TwoWayTransducer& t);

/// Projection of a run onto the positions listed in `positions` (strictly
/// increasing), renamed by their 1-based rank.
struct ContextPath {
  std::vector<std::pair<int, int>> steps;  // (state, rank)
  friend bool operator==(const ContextPath&, const ContextPath&) = default;
};
ContextPath context_path(const Run& run, const std::vector<int>& positions);

/// Positions of v and w (with the endmarkers) inside the tape of v·u·w.
std::vector<int> context_positions(std::size_t v_len, std::size_t u_len, std::size_t w_len);

}  // namespace twfo
