#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twfo/dfa.hpp"
#include "twfo/formula.hpp"
#include "twfo/twoway.hpp"

namespace twfo {

/// Transition (q, φ(x), q', v, ψ(x,y)): fires at position x of ⊢u⊣ when φ
/// holds and ψ names a target y; the head then jumps to y.
struct FoLaTransition {
  int from = 0;
  Formula test;
  int to = 0;
  Word production;
  Formula move;
};

struct FoLookAroundTransducer {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> finals;
  std::vector<FoLaTransition> transitions;

  int num_states() const { return static_cast<int>(states.size()); }
  void validate() const;
};

/// Test (L_p, a, L_s): the letter under the head is a (possibly an
/// endmarker), the input strictly before the head is in L_p and the input
/// strictly after it is in L_s. Endmarkers never belong to these factors.
struct SfTest {
  int prefix = 0;  // index into the language pool
  int letter = 0;  // tape symbol
  int suffix = 0;
  friend bool operator==(const SfTest&, const SfTest&) = default;
};

struct SfLaTransition {
  int from = 0;
  SfTest test;
  int to = 0;
  Word production;
  int move = 0;
};

struct SfLookAroundTransducer {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> finals;
  std::vector<Dfa> languages;  // minimal DFAs over the input alphabet
  std::vector<SfLaTransition> transitions;

  int num_states() const { return static_cast<int>(states.size()); }
  /// Index of `d` in the pool, adding its minimal form when new.
  int add_language(const Dfa& d);
  void validate() const;
  /// Throws NonAperiodicCompilation when a test language has a counter.
  void certify_star_free() const;
};

struct LaResult {
  std::optional<Word> output;
  Halt halt = Halt::Blocked;
  Run run;
};

/// Both simulators accept when they halt on the right endmarker in a final state and throw
/// DeterminismViolation when two transitions fire or ψ has two targets.
LaResult simulate_fo_la(const FoLookAroundTransducer& t, const Word& w);
LaResult simulate_sf_la(const SfLookAroundTransducer& t, const Word& w);

bool sf_test_holds(const SfLookAroundTransducer& t, const SfTest& test, const Word& w, int pos);

/// Checks every configuration of every word up to `max_len`; throws
/// DeterminismViolation with a witness on failure.
void check_determinism(const FoLookAroundTransducer& t, std::size_t max_len = 6);
void check_determinism(const SfLookAroundTransducer& t, std::size_t max_len = 6);

}  // namespace twfo
