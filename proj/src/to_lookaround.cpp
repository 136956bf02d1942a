#include "twfo/translate.hpp"

namespace twfo {
namespace {

using namespace fo;

Formula inner(const std::string& v) {
  return conj({neg(letter(std::string(kLeftMarkToken), v)), neg(letter(std::string(kRightMarkToken), v))});
}

/// Restricts quantifiers to the inner positions of the marked word.
Formula relativize(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Exists: return exists(f->x, conj({inner(f->x), relativize(f->children.front())}));
    case FormulaKind::Forall: return forall(f->x, implies(inner(f->x), relativize(f->children.front())));
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Not: {
      FormulaNode n = *f;
      for (auto& c : n.children) c = relativize(c);
      return std::make_shared<const FormulaNode>(std::move(n));
    }
    default: return f;
  }
}

class LookAroundBuilder {
 public:
  explicit LookAroundBuilder(const FoTransduction& t) : t_(t) {
    t.validate();
    const int k = t.num_copies();
    dom_ = relativize(t.domain ? t.domain : bottom());
    for (int c = 0; c < k; ++c) {
      std::vector<Formula> labels;
      for (Symbol b = 0; b < static_cast<Symbol>(t.output.size()); ++b) {
        label_.push_back(relativize(t.pos(c, b) ? t.pos(c, b) : bottom()));
        labels.push_back(label_.back());
      }
      node_.push_back(disj(std::move(labels)));
    }
    for (int c = 0; c < k; ++c)
      for (int d = 0; d < k; ++d) le_.push_back(relativize(t.le(c, d) ? t.le(c, d) : bottom()));
  }

  FoLookAroundTransducer build() {
    const int k = t_.num_copies();
    FoLookAroundTransducer r;
    r.input = t_.input;
    r.output = t_.output;
    r.states = t_.copies;
    const int init = k, fin = k + 1;
    r.states.push_back(fresh_state_name(r.states, "i"));
    r.states.push_back(fresh_state_name(r.states, "f"));
    r.initial = init;
    r.finals.assign(static_cast<std::size_t>(k + 2), false);
    r.finals[static_cast<std::size_t>(fin)] = true;

    const Formula on_left = letter(std::string(kLeftMarkToken), "x");
    const Formula to_right = letter(std::string(kRightMarkToken), "y");
    for (int c = 0; c < k; ++c) r.transitions.push_back({init, on_left, c, {}, conj({inner("y"), first_node(c), dom_})});
    std::vector<Formula> some_node;
    for (int d = 0; d < k; ++d) some_node.push_back(node(d, "z"));
    r.transitions.push_back(
        {init, on_left, fin, {}, conj({to_right, dom_, neg(exists("z", conj({inner("z"), disj(some_node)})))})});

    for (int c = 0; c < k; ++c)
      for (Symbol b = 0; b < static_cast<Symbol>(t_.output.size()); ++b) {
        const Formula test = conj({inner("x"), label(c, b)});
        for (int d = 0; d < k; ++d)
          r.transitions.push_back({c, test, d, {b}, conj({inner("y"), successor(c, d), node(d, "y"), dom_})});
        r.transitions.push_back({c, test, fin, {b}, conj({to_right, last_node(c), dom_})});
      }
    return r;
  }

 private:
  const FoTransduction& t_;
  Formula dom_;
  std::vector<Formula> label_, node_, le_;

  Formula label(int c, Symbol b) const {
    return label_[static_cast<std::size_t>(c) * t_.output.size() + static_cast<std::size_t>(b)];
  }
  Formula node(int c, const std::string& v) const {
    return rename_free(node_[static_cast<std::size_t>(c)], {{"x", v}});
  }
  /// Node (c, u) is no later than node (d, v).
  Formula le(int c, const std::string& u, int d, const std::string& v) const {
    return rename_free(le_[static_cast<std::size_t>(c * t_.num_copies() + d)], {{"x", u}, {"y", v}});
  }

  /// Every node is after (c, y); the test variable x is unused.
  Formula first_node(int c) const {
    std::vector<Formula> all;
    for (int d = 0; d < t_.num_copies(); ++d) all.push_back(implies(node(d, "z"), le(c, "y", d, "z")));
    return conj({node(c, "y"), forall("z", implies(inner("z"), conj(std::move(all))))});
  }

  Formula last_node(int c) const {
    std::vector<Formula> all;
    for (int d = 0; d < t_.num_copies(); ++d) all.push_back(implies(node(d, "z"), le(d, "z", c, "x")));
    return conj({node(c, "x"), forall("z", implies(inner("z"), conj(std::move(all))))});
  }

  /// (d, y) is the successor of (c, x): after it, and no node strictly in between.
  Formula successor(int c, int d) const {
    std::vector<Formula> all;
    for (int e = 0; e < t_.num_copies(); ++e)
      all.push_back(implies(node(e, "z"), disj({le(e, "z", c, "x"), le(d, "y", e, "z")})));
    std::vector<Formula> parts{le(c, "x", d, "y"), forall("z", implies(inner("z"), conj(std::move(all))))};
    if (c == d) parts.insert(parts.begin(), neg(eq("x", "y")));
    return conj(std::move(parts));
  }
};

}  // namespace

FoLookAroundTransducer fot_to_fo_lookaround(const FoTransduction& t) { return LookAroundBuilder(t).build(); }

}  // namespace twfo
