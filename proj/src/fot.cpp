#include "twfo/fot.hpp"

#include <algorithm>

#include "twfo/error.hpp"

namespace twfo {

FoTransduction::FoTransduction(Alphabet in, Alphabet out, std::vector<std::string> copy_names)
    : input(std::move(in)),
      output(std::move(out)),
      copies(std::move(copy_names)),
      domain(fo::top()),
      position(copies.size() * output.size()),
      order(copies.size() * copies.size()) {
  if (copies.empty()) throw Error(ErrorCode::SemanticError, "transduction without copies");
}

void FoTransduction::set_pos(int c, Symbol b, Formula f) {
  if (c < 0 || c >= num_copies()) throw Error(ErrorCode::SemanticError, "copy out of range");
  if (b < 0 || static_cast<std::size_t>(b) >= output.size()) throw Error(ErrorCode::SymbolNotInAlphabet, "output letter");
  position[static_cast<std::size_t>(c) * output.size() + static_cast<std::size_t>(b)] = std::move(f);
}

void FoTransduction::set_le(int c, int d, Formula f) {
  if (c < 0 || c >= num_copies() || d < 0 || d >= num_copies()) throw Error(ErrorCode::SemanticError, "copy out of range");
  order[static_cast<std::size_t>(c) * copies.size() + static_cast<std::size_t>(d)] = std::move(f);
}

std::optional<int> FoTransduction::find_copy(std::string_view name) const {
  auto it = std::find(copies.begin(), copies.end(), name);
  if (it == copies.end()) return std::nullopt;
  return static_cast<int>(it - copies.begin());
}

void FoTransduction::validate() const {
  auto require = [&](const Formula& f, std::set<std::string> allowed, const std::string& what) {
    if (!f) return;
    for (const auto& v : free_vars(f))
      if (!allowed.count(v)) throw Error(ErrorCode::UnboundVariable, what + " uses free variable '" + v + "'");
    check_class_alphabets(f, input);
  };
  if (!domain) throw Error(ErrorCode::SemanticError, "missing domain formula");
  require(domain, {}, "domain formula");
  for (const auto& f : position) require(f, {"x"}, "position formula");
  for (const auto& f : order) require(f, {"x", "y"}, "order formula");
}

Formula linear_graph_sentence() {
  using namespace fo;
  return conj({exists("x", forall("y", le("x", "y"))), exists("x", forall("y", le("y", "x"))),
               forall("x", forall("y", disj({le("x", "y"), le("y", "x")})))});
}

bool fot_domain_check(const FoTransduction& t, const Word& w) { return eval(t.domain, t.input, w, {}); }

OutputStructure output_structure(const FoTransduction& t, const Word& w) {
  OutputStructure s;
  const int n = static_cast<int>(w.size());
  for (int c = 0; c < t.num_copies(); ++c)
    for (int i = 1; i <= n; ++i) {
      std::optional<Symbol> label;
      for (Symbol b = 0; b < static_cast<Symbol>(t.output.size()); ++b) {
        const Formula& f = t.pos(c, b);
        if (!f || !eval(f, t.input, w, {{"x", i}})) continue;
        if (label)
          throw Error(ErrorCode::LabelConflict, "copy " + t.copies[static_cast<std::size_t>(c)] + " at position " +
                                                    std::to_string(i) + " has labels " + t.output.name(*label) +
                                                    " and " + t.output.name(b));
        label = b;
      }
      if (label) s.nodes.push_back({c, i, *label});
    }
  const std::size_t m = s.nodes.size();
  s.le.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Formula& f = t.le(s.nodes[i].copy, s.nodes[j].copy);
      s.le[i][j] = f && eval(f, t.input, w, {{"x", s.nodes[i].position}, {"y", s.nodes[j].position}});
    }
  return s;
}

bool is_total_order(const OutputStructure& s) {
  const std::size_t m = s.nodes.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!s.le[i][i]) return false;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && s.le[i][j] == s.le[j][i]) return false;  // antisymmetry and totality
      for (std::size_t k = 0; k < m; ++k)
        if (s.le[i][j] && s.le[j][k] && !s.le[i][k]) return false;
    }
  }
  return true;
}

std::optional<Word> fot_eval(const FoTransduction& t, const Word& w) {
  for (Symbol s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= t.input.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
  if (!fot_domain_check(t, w)) return std::nullopt;
  OutputStructure s = output_structure(t, w);
  if (!is_total_order(s)) return std::nullopt;
  // In a total order a node's rank is the number of nodes below it.
  Word out(s.nodes.size());
  for (std::size_t j = 0; j < s.nodes.size(); ++j) {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
      if (i != j && s.le[i][j]) ++rank;
    out[rank] = s.nodes[j].label;
  }
  return out;
}

}  // namespace twfo
