#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twfo/fot.hpp"
#include "twfo/lookaround.hpp"
#include "twfo/monoid.hpp"
#include "twfo/sequential.hpp"
#include "twfo/twoway.hpp"

namespace twfo {

// ---------------------------------------------------------------------------
// Composition of a sequential transducer with a two-way transducer.

/// Two-way machine realizing u ↦ b(a(u)). The head walks over u while
/// simulating b over the blocks a produces; moving back across a position
/// recovers the sequential state by tracking candidate predecessors.
/// Requires |productions of b| ≤ 1 (non-normalized-input) and matching
/// alphabets (alphabet-mismatch).
TwoWayTransducer compose_seq_2w(const SequentialTransducer& a, const TwoWayTransducer& b);

/// Same with a read right to left: u ↦ b(reverse(a(reverse(u)))).
TwoWayTransducer compose_right_seq_2w(const SequentialTransducer& a, const TwoWayTransducer& b);

// ---------------------------------------------------------------------------
// Two-way transducer to first-order transduction.

/// Classes of u[1..i-1] and u[j+1..n], the class of the factor strictly
/// between i and j, and the letter at j.
struct ClassTriple {
  int pre = 0;
  int mid = 0;
  int suf = 0;
  Symbol letter = 0;
};

/// Relative placement of the start position i and the target position j.
enum class ReachOrder { Before, Same, After };  // i < j, i = j, j < i

/// Whether the run on ⊢u⊣ started at (q, i) is ever at (q2, j), for any u
/// whose factors have the classes in `t`. For i < j, mid is the class of
/// u[i..j-1] (starting at its left end); for j < i, of u[j+1..i] (starting
/// at its right end); for i = j it is ignored.
bool reach_decision(const TransitionMonoid& m, const ClassTriple& t, ReachOrder order, int q, int q2);
/// All q2 for which reach_decision holds, in one run.
std::vector<bool> reach_states(const TransitionMonoid& m, const ClassTriple& t, ReachOrder order, int q);

/// Whether the run from the initial configuration is ever at (q, j), where
/// u[1..j-1] has class pre, u_j = letter and u[j+1..n] has class suf.
bool start_decision(const TransitionMonoid& m, int pre, Symbol letter, int suf, int q);
std::vector<bool> start_states(const TransitionMonoid& m, int pre, Symbol letter, int suf);

/// Equivalent machine (on non-empty words) whose endmarker transitions
/// produce nothing: output emitted around the endmarkers is carried to the
/// neighbouring inner positions.
TwoWayTransducer defer_endmarker_output(const TwoWayTransducer& t);

struct TwoWayToFotOptions {
  std::size_t max_monoid = 200000;
};

/// Copies are the states of the (deferred, normalized) machine. Throws
/// NotAperiodic for machines with a non-trivial group.
FoTransduction twoway_to_fot(const TwoWayTransducer& t, const TwoWayToFotOptions& options = {});

// ---------------------------------------------------------------------------
// Look-around machines.

/// States are the copies plus an initial state i (on ⊢) and a final state f
/// (on ⊣). From a node of copy c the machine emits its label and jumps to
/// the next node of the output structure; formulas are restricted to the
/// inner positions of the marked word.
FoLookAroundTransducer fot_to_fo_lookaround(const FoTransduction& t);

/// Tests are compiled with their free variable as a mark and split at the
/// mark into (prefix, letter, suffix) triples. Jumps become walks of single
/// steps that carry the state of the compiled move formula and stop at the
/// first cell where marking it as y is accepted. Throws DirectionAmbiguity
/// when a move admits targets on both sides or in place.
SfLookAroundTransducer fo_la_to_sf_la(const FoLookAroundTransducer& t);

struct SfToPlainOptions {
  std::size_t max_bits = 24;  // enrichment bits per letter
};

/// A left-to-right annotator adds prefix membership bits to every letter, a
/// right-to-left one adds suffix bits, and a core machine over the enriched
/// letters reads its tests off the current letter (peeking at the
/// neighbouring letter for tests on an endmarker). The three are assembled
/// by composition. Throws TooManyTests past `max_bits`.
TwoWayTransducer sf_la_to_plain(const SfLookAroundTransducer& t, const SfToPlainOptions& options = {});

/// The look-around route from a first-order transduction to a plain machine.
TwoWayTransducer fot_to_twoway(const FoTransduction& t, const SfToPlainOptions& options = {});

}  // namespace twfo
