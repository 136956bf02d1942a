#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twfo/io.hpp"

namespace twfo {

/// Output as a list of symbol names, so machines with differently ordered
/// output alphabets compare by what they print.
using Rendered = std::optional<std::vector<std::string>>;

struct WordFunction {
  Alphabet input;
  std::function<Rendered(const Word&)> apply;
};

/// The word function an artifact denotes; DFAs, formulas and monoids denote
/// none and raise SemanticError.
WordFunction word_function(const ArtifactValue& v);

struct EquivalenceReport {
  bool equivalent = true;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  std::size_t words_tested = 0;
  std::optional<Word> counterexample;  // least in length-lexicographic order
  Rendered left, right;                // outputs on the counterexample
};

/// Compares definedness and outputs on every word with min_len ≤ |w| ≤ max_len.
/// Throws IncompatibleAlphabets when the input alphabets differ.
EquivalenceReport check_equiv(const ArtifactValue& x, const ArtifactValue& y, std::size_t max_len, std::size_t min_len = 0);

/// `equivalent-up-to-N`, or `counterexample <w>` followed by both outputs.
std::string describe(const EquivalenceReport& r, const Alphabet& input);
std::string render(const Rendered& out);

}  // namespace twfo
