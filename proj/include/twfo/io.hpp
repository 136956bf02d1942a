#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "twfo/dfa.hpp"
#include "twfo/formula.hpp"
#include "twfo/fot.hpp"
#include "twfo/lookaround.hpp"
#include "twfo/monoid.hpp"
#include "twfo/sequential.hpp"
#include "twfo/twoway.hpp"

namespace twfo {

struct FormulaArtifact {
  Alphabet input;
  Formula formula;
};

/// A transition monoid together with the automaton it was computed from.
struct MonoidArtifact {
  TwoWayTransducer automaton;  // productions are ignored
  TransitionMonoid monoid;
};

using ArtifactValue = std::variant<TwoWayTransducer, SequentialTransducer, FoTransduction, SfLookAroundTransducer,
                                   FoLookAroundTransducer, Dfa, FormulaArtifact, MonoidArtifact>;

struct Artifact {
  std::string name;
  std::string source;  // not serialized
  ArtifactValue value;
};

/// The `type:` tag of the artifact's file: 2wt, seq, fot, sf-la, fo-la, dfa, formula or monoid.
const char* kind_name(const ArtifactValue& v);

/// Line-oriented text format; `#` starts a comment. Syntax errors carry
/// "line L, column C" in their message.
Artifact parse_artifact(std::string_view text, std::string source = "<text>");
Artifact load_artifact(const std::string& path);

/// Canonical text; parse_artifact(serialize(a)) reproduces a.
std::string serialize(const Artifact& a);
std::string serialize(const ArtifactValue& v, const std::string& name = "");

MonoidArtifact make_monoid_artifact(const TwoWayTransducer& t);

}  // namespace twfo
