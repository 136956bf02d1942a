#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twfo/alphabet.hpp"

namespace twfo {

/// Complete deterministic automaton over a product alphabet: a base alphabet
/// times a fixed number of bit tracks. Letter index = bits * |base| + base.
/// Bit i of the track vector belongs to the i-th declared variable.
class Dfa {
 public:
  Dfa() = default;
  Dfa(Alphabet base, int tracks, int num_states, int initial, std::vector<bool> finals,
      std::vector<int> table);

  const Alphabet& base() const noexcept { return base_; }
  int tracks() const noexcept { return tracks_; }
  int num_letters() const noexcept { return static_cast<int>(base_.size()) << tracks_; }
  int num_states() const noexcept { return num_states_; }
  int initial() const noexcept { return initial_; }
  bool is_final(int q) const { return finals_[static_cast<std::size_t>(q)]; }
  const std::vector<bool>& finals() const noexcept { return finals_; }

  int letter(Symbol base_symbol, unsigned bits = 0) const {
    return static_cast<int>(bits) * static_cast<int>(base_.size()) + base_symbol;
  }
  Symbol base_of(int letter) const { return letter % static_cast<int>(base_.size()); }
  unsigned bits_of(int letter) const { return static_cast<unsigned>(letter / static_cast<int>(base_.size())); }

  int step(int q, int letter) const {
    return table_[static_cast<std::size_t>(q) * static_cast<std::size_t>(num_letters()) +
                  static_cast<std::size_t>(letter)];
  }
  int run(int q, const std::vector<int>& letters) const;

  /// Membership of a word of product letters; throws SymbolNotInAlphabet on bad letters.
  bool accepts(const std::vector<int>& letters) const;
  /// Membership of an unmarked word (all tracks zero).
  bool accepts_word(const Word& w) const;

  Dfa with_initial(int q) const;
  Dfa with_finals(std::vector<bool> finals) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet base_;
  int tracks_ = 0;
  int num_states_ = 0;
  int initial_ = 0;
  std::vector<bool> finals_;
  std::vector<int> table_;
};

enum class CombineKind { Intersect, Union, Complement, ProjectBit, Determinize };

Dfa dfa_intersect(const Dfa& a, const Dfa& b);
Dfa dfa_union(const Dfa& a, const Dfa& b);
Dfa dfa_complement(const Dfa& a);
/// Erases track `bit` (existential projection), determinizing the
/// nondeterministic intermediate by subset construction.
Dfa dfa_project_bit(const Dfa& a, int bit);
/// Language reversal, determinized.
Dfa dfa_reverse(const Dfa& a);
/// Reachable part, merged by Moore partition refinement and renumbered in BFS order.
Dfa dfa_minimize(const Dfa& a);
/// Keeps only the letters with the given base symbols and zero tracks; the
/// result is over `base` (tracks = 0). `symbol_map[i]` is the letter of `a`
/// used for symbol i of `base`.
Dfa dfa_restrict(const Dfa& a, const Alphabet& base, const std::vector<int>& symbol_map);

Dfa dfa_universal(const Alphabet& base, int tracks = 0);
Dfa dfa_empty(const Alphabet& base, int tracks = 0);
Dfa dfa_epsilon_only(const Alphabet& base);

bool dfa_is_empty(const Dfa& a);
bool dfa_equivalent(const Dfa& a, const Dfa& b);

/// A shortest accepted letter sequence, if any.
std::optional<std::vector<int>> dfa_witness(const Dfa& a);

struct Aperiodicity {
  bool aperiodic = false;
  std::optional<int> index;  // least n with m^n = m^{n+1} for all m (m^0 = identity)
  std::size_t monoid_size = 0;
};

/// Computes the transition monoid of `a` (closure of letter-induced state maps)
/// and decides whether it is aperiodic. Throws MonoidTooLarge past `max_elements`.
Aperiodicity dfa_is_counter_free(const Dfa& a, std::size_t max_elements = 500000);

}  // namespace twfo
