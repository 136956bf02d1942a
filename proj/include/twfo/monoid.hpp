#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twfo/dfa.hpp"
#include "twfo/hash.hpp"
#include "twfo/twoway.hpp"

namespace twfo {

enum Side : int { kLeft = 0, kRight = 1 };

/// The four behaviors of a word packed as one partial map on Q × {left, right}.
/// Entry 2p+x holds 2q+y when the run entering on side x in state p leaves on
/// side y in state q, or -1 when it blocks or loops inside the word.
struct BehaviorProfile {
  std::vector<int> entries;

  int num_states() const { return static_cast<int>(entries.size() / 2); }
  int exit(int state, Side side) const { return entries[static_cast<std::size_t>(2 * state + side)]; }
  /// bh_xy as sorted (p, q) pairs.
  std::vector<std::pair<int, int>> behavior(Side from, Side to) const;

  static BehaviorProfile identity(int num_states);

  friend bool operator==(const BehaviorProfile&, const BehaviorProfile&) = default;
};

struct ProfileHash {
  std::size_t operator()(const BehaviorProfile& p) const { return VectorHash{}(p.entries); }
};

/// Transition function of the input automaton (outputs forgotten).
struct InputAutomaton {
  Alphabet input;
  int num_states = 0;
  int initial = 0;
  std::vector<bool> finals;
  std::vector<std::optional<std::pair<int, int>>> steps;  // [q * width + tape symbol] -> (target, dir)

  explicit InputAutomaton(const TwoWayTransducer& t);
  InputAutomaton() = default;
  const std::optional<std::pair<int, int>>& at(int q, int tape_sym) const {
    return steps[static_cast<std::size_t>(q) * static_cast<std::size_t>(Tape::width(input)) +
                 static_cast<std::size_t>(tape_sym)];
  }
};

/// Profile of a sequence of tape symbols by direct simulation inside it.
BehaviorProfile tape_behaviors(const InputAutomaton& a, const std::vector<int>& tape);
BehaviorProfile behaviors(const TwoWayTransducer& t, const Word& w);

/// Profile of u·v from the profiles of u and v, by following boundary crossings.
BehaviorProfile glue(const BehaviorProfile& u, const BehaviorProfile& v);

/// Result of walking a run across a row of segments given by their profiles.
struct SegmentExit {
  int state = -1;
  Side side = kLeft;  // which outer end of the row was crossed
};
/// Enters segment `segment` on `side` in `state`; follows exits across the
/// row until it leaves the row (nullopt when it blocks or loops).
std::optional<SegmentExit> segment_walk(const std::vector<const BehaviorProfile*>& row, std::size_t segment, Side side,
                                        int state);

class TransitionMonoid {
 public:
  TransitionMonoid() = default;

  const InputAutomaton& automaton() const noexcept { return automaton_; }
  const Alphabet& alphabet() const noexcept { return automaton_.input; }
  std::size_t size() const noexcept { return elements_.size(); }
  static constexpr int identity() { return 0; }

  const BehaviorProfile& element(int e) const { return elements_.at(static_cast<std::size_t>(e)); }
  const Word& representative(int e) const { return representatives_.at(static_cast<std::size_t>(e)); }
  int letter(Symbol a) const { return letter_element_[static_cast<std::size_t>(a)]; }
  int times_letter(int e, Symbol a) const {
    return right_table_[static_cast<std::size_t>(e) * alphabet().size() + static_cast<std::size_t>(a)];
  }
  int product(int x, int y) const;
  std::optional<int> find(const BehaviorProfile& p) const;

  const BehaviorProfile& left_end() const noexcept { return left_end_; }
  const BehaviorProfile& right_end() const noexcept { return right_end_; }

  friend TransitionMonoid transition_monoid(const TwoWayTransducer& t, std::size_t max_elements);

 private:
  InputAutomaton automaton_;
  std::vector<BehaviorProfile> elements_;
  std::vector<Word> representatives_;
  std::vector<int> letter_element_;
  std::vector<int> right_table_;
  BehaviorProfile left_end_, right_end_;
  std::unordered_map<BehaviorProfile, int, ProfileHash> index_;
};

/// Breadth-first closure of the letter profiles; element 0 is the identity
/// and each element keeps a shortest representative word.
TransitionMonoid transition_monoid(const TwoWayTransducer& t, std::size_t max_elements = 200000);

struct MonoidAperiodicity {
  bool aperiodic = false;
  std::optional<int> index;
  std::optional<int> witness;  // an element whose powers cycle with period > 1
};
MonoidAperiodicity is_aperiodic(const TransitionMonoid& m);

/// Power data of one element: least n with x^n = x^{n+p}, and the period p.
struct PowerData {
  int threshold = 0;
  int period = 1;
};
PowerData power_data(const TransitionMonoid& m, int e);

int class_of(const TransitionMonoid& m, const Word& w);
/// Image of w[from..to) under the morphism.
int class_of_range(const TransitionMonoid& m, const Word& w, std::size_t from, std::size_t to);

/// Automaton on the monoid elements accepting exactly the class of `e`.
Dfa class_language_dfa(const TransitionMonoid& m, int e);

/// Whether the words of class `e` are accepted (decided from profiles of
/// the endmarkers and the class).
bool class_accepts(const TransitionMonoid& m, int e);
/// Acceptance of ⊢·w·⊣ where the factors of w are given by their profiles.
bool row_accepts(const TransitionMonoid& m, const std::vector<const BehaviorProfile*>& factors);

/// One line per element: representative, the four behaviors, power data.
std::string dump_monoid(const TransitionMonoid& m, const std::vector<std::string>& state_names);

}  // namespace twfo
