#include "twfo/equiv.hpp"

#include "twfo/error.hpp"

namespace twfo {
namespace {

Rendered names(const std::optional<Word>& w, const Alphabet& out) {
  if (!w) return std::nullopt;
  std::vector<std::string> r;
  for (Symbol s : *w) r.push_back(out.name(s));
  return r;
}

template <class T, class F>
WordFunction wrap(const T& t, const Alphabet& in, const Alphabet& out, F run) {
  return WordFunction{in, [t, out, run](const Word& w) { return names(run(t, w), out); }};
}

}  // namespace

WordFunction word_function(const ArtifactValue& v) {
  switch (v.index()) {
    case 0: {
      const auto& t = std::get<TwoWayTransducer>(v);
      return wrap(t, t.input(), t.output(), [](const TwoWayTransducer& m, const Word& w) { return simulate(m, w).output; });
    }
    case 1: {
      const auto& t = std::get<SequentialTransducer>(v);
      return wrap(t, t.input, t.output, [](const SequentialTransducer& m, const Word& w) { return seq_run(m, w); });
    }
    case 2: {
      const auto& t = std::get<FoTransduction>(v);
      return wrap(t, t.input, t.output, [](const FoTransduction& m, const Word& w) { return fot_eval(m, w); });
    }
    case 3: {
      const auto& t = std::get<SfLookAroundTransducer>(v);
      return wrap(t, t.input, t.output, [](const SfLookAroundTransducer& m, const Word& w) { return simulate_sf_la(m, w).output; });
    }
    case 4: {
      const auto& t = std::get<FoLookAroundTransducer>(v);
      return wrap(t, t.input, t.output, [](const FoLookAroundTransducer& m, const Word& w) { return simulate_fo_la(m, w).output; });
    }
    default: throw Error(ErrorCode::SemanticError, std::string("a ") + kind_name(v) + " artifact is not a word function");
  }
}

EquivalenceReport check_equiv(const ArtifactValue& x, const ArtifactValue& y, std::size_t max_len, std::size_t min_len) {
  const WordFunction f = word_function(x), g = word_function(y);
  if (!(f.input == g.input)) throw Error(ErrorCode::IncompatibleAlphabets, "the two artifacts read different input alphabets");
  EquivalenceReport r;
  r.min_len = min_len;
  r.max_len = max_len;
  for (const Word& w : enumerate_words(f.input.size(), min_len, max_len)) {
    ++r.words_tested;
    Rendered a = f.apply(w), b = g.apply(w);
    if (a == b) continue;
    // Evaluate once more so a reported difference is never an artifact of state.
    if (f.apply(w) != a || g.apply(w) != b) throw Error(ErrorCode::SemanticError, "evaluation is not deterministic");
    r.equivalent = false;
    r.counterexample = w;
    r.left = std::move(a);
    r.right = std::move(b);
    break;
  }
  return r;
}

std::string render(const Rendered& out) {
  if (!out) return "undefined";
  std::string s = "\"";
  bool compact = true;
  for (const auto& t : *out) compact = compact && t.size() == 1;
  for (std::size_t i = 0; i < out->size(); ++i) s += (compact || i == 0 ? "" : " ") + (*out)[i];
  return s + "\"";
}

std::string describe(const EquivalenceReport& r, const Alphabet& input) {
  if (r.equivalent) return "equivalent-up-to-" + std::to_string(r.max_len);
  return "counterexample \"" + input.format(*r.counterexample) + "\": " + render(r.left) + " vs " + render(r.right);
}

}  // namespace twfo
