#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "twfo/dfa.hpp"
#include "twfo/monoid.hpp"

namespace twfo {

/// A transition monoid that passed the aperiodicity check, usable in class atoms.
struct CertifiedMonoid {
  std::string name;
  TransitionMonoid monoid;
  int index = 0;
};
using MonoidRef = std::shared_ptr<const CertifiedMonoid>;

/// Throws NotAperiodic when `m` has a non-trivial group.
MonoidRef certify_monoid(std::string name, TransitionMonoid m);

class MonoidRegistry {
 public:
  void add(MonoidRef m);
  MonoidRef get(const std::string& name) const;  // throws SemanticError
  bool contains(const std::string& name) const { return monoids_.count(name) != 0; }
  const std::map<std::string, MonoidRef>& all() const noexcept { return monoids_; }

 private:
  std::map<std::string, MonoidRef> monoids_;
};

enum class FormulaKind { True, Letter, Le, FactorClass, PrefixClass, SuffixClass, And, Or, Not, Exists, Forall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  std::string symbol;  // Letter
  std::string x, y;    // atom variables; x is the bound variable of quantifiers
  MonoidRef monoid;    // class atoms
  int element = 0;
  std::vector<Formula> children;
};

namespace fo {
Formula top();
Formula bottom();
Formula letter(std::string a, std::string x);
Formula le(std::string x, std::string y);
Formula lt(const std::string& x, const std::string& y);
Formula eq(const std::string& x, const std::string& y);
/// x < y with no position strictly between.
Formula succ(const std::string& x, const std::string& y);
/// x is the first (resp. last) position.
Formula first(const std::string& x);
Formula last(const std::string& x);
Formula factor_class(MonoidRef m, int e, std::string x, std::string y);
Formula prefix_class(MonoidRef m, int e, std::string x);
Formula suffix_class(MonoidRef m, int e, std::string x);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula neg(Formula f);
Formula implies(Formula a, Formula b);
Formula exists(std::string x, Formula f);
Formula forall(std::string x, Formula f);
}  // namespace fo

std::set<std::string> free_vars(const Formula& f);
std::size_t formula_size(const Formula& f);
/// Capture-avoiding renaming of free variables.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names);

/// Which positions quantifiers range over: the word itself (1..n), or the
/// word framed by endmarkers (0..n+1, letters "^" and "$").
enum class Positions { Plain, Marked };

using Assignment = std::map<std::string, int>;

/// Throws AlphabetMismatch when a class atom's monoid is over another alphabet than `a`.
void check_class_alphabets(const Formula& f, const Alphabet& a);

/// Throws UnboundVariable, MalformedClassAtom (x > y in a factor atom) and
/// AlphabetMismatch (class atom over another alphabet).
bool eval(const Formula& f, const Alphabet& a, const Word& w, const Assignment& sigma,
          Positions ctx = Positions::Plain);

/// DFA over `a` (plus endmarkers when Marked) with one track per listed
/// variable, accepting validly marked words that satisfy f. A variable
/// listed twice refers to its last occurrence.
Dfa compile_to_dfa(const Formula& f, const std::vector<std::string>& vars, const Alphabet& a,
                   Positions ctx = Positions::Plain);

/// Words of the compiled base alphabet whose marking is valid for `tracks` variables.
Dfa valid_markings(const Alphabet& a, int tracks, Positions ctx);

/// Marked-alphabet letter sequence of w with the given one-position marks per variable.
std::vector<int> marked_letters(const Dfa& d, const Word& w, const std::vector<int>& positions, Positions ctx);

struct StarFreeCertificate {
  bool star_free = false;
  int index = 0;
  int states = 0;
};
/// Compiles f over its free variables (sorted) and checks counter-freeness.
/// Throws NonAperiodicCompilation when the compiled automaton has a counter.
StarFreeCertificate certify_star_free(const Formula& f, const Alphabet& a, Positions ctx = Positions::Plain);

std::string to_string(const Formula& f);
/// Parses the prefix syntax: (letter a x), (le x y), (class M e x y),
/// (pclass M e x), (sclass M e x), (and ...), (or ...), (not f),
/// (exists x f), (forall x f), (true).
Formula parse_formula(std::string_view text, const MonoidRegistry& registry);

}  // namespace twfo
