#include "twfo/formula.hpp"

#include <algorithm>

#include "twfo/error.hpp"

namespace twfo {

MonoidRef certify_monoid(std::string name, TransitionMonoid m) {
  auto ap = is_aperiodic(m);
  if (!ap.aperiodic)
    throw Error(ErrorCode::NotAperiodic, "monoid '" + name + "' has a group (element " + std::to_string(*ap.witness) + ")");
  return std::make_shared<const CertifiedMonoid>(CertifiedMonoid{std::move(name), std::move(m), *ap.index});
}

void MonoidRegistry::add(MonoidRef m) {
  if (!m) throw Error(ErrorCode::SemanticError, "null monoid");
  monoids_[m->name] = std::move(m);
}

MonoidRef MonoidRegistry::get(const std::string& name) const {
  auto it = monoids_.find(name);
  if (it == monoids_.end()) throw Error(ErrorCode::SemanticError, "unknown monoid '" + name + "'");
  return it->second;
}

namespace fo {
namespace {
Formula make(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

std::string fresh_var(std::initializer_list<const std::string*> taken) {
  std::string z = "z";
  auto clash = [&] { return std::any_of(taken.begin(), taken.end(), [&](const std::string* s) { return *s == z; }); };
  while (clash()) z += '\'';
  return z;
}

void check_element(const MonoidRef& m, int e) {
  if (!m) throw Error(ErrorCode::SemanticError, "class atom without monoid");
  if (e < 0 || static_cast<std::size_t>(e) >= m->monoid.size())
    throw Error(ErrorCode::ElementNotInMonoid, "element " + std::to_string(e) + " of monoid '" + m->name + "'");
}
}  // namespace

Formula top() { return make({FormulaKind::True}); }
Formula bottom() { return neg(top()); }

Formula letter(std::string a, std::string x) {
  FormulaNode n{FormulaKind::Letter};
  n.symbol = std::move(a);
  n.x = std::move(x);
  return make(std::move(n));
}

Formula le(std::string x, std::string y) {
  FormulaNode n{FormulaKind::Le};
  n.x = std::move(x);
  n.y = std::move(y);
  return make(std::move(n));
}

Formula lt(const std::string& x, const std::string& y) { return conj({le(x, y), neg(le(y, x))}); }
Formula eq(const std::string& x, const std::string& y) { return conj({le(x, y), le(y, x)}); }

Formula succ(const std::string& x, const std::string& y) {
  std::string z = fresh_var({&x, &y});
  return conj({lt(x, y), neg(exists(z, conj({lt(x, z), lt(z, y)})))});
}

Formula first(const std::string& x) {
  std::string z = fresh_var({&x});
  return forall(z, le(x, z));
}

Formula last(const std::string& x) {
  std::string z = fresh_var({&x});
  return forall(z, le(z, x));
}

Formula factor_class(MonoidRef m, int e, std::string x, std::string y) {
  check_element(m, e);
  FormulaNode n{FormulaKind::FactorClass};
  n.monoid = std::move(m);
  n.element = e;
  n.x = std::move(x);
  n.y = std::move(y);
  return make(std::move(n));
}

Formula prefix_class(MonoidRef m, int e, std::string x) {
  check_element(m, e);
  FormulaNode n{FormulaKind::PrefixClass};
  n.monoid = std::move(m);
  n.element = e;
  n.x = std::move(x);
  return make(std::move(n));
}

Formula suffix_class(MonoidRef m, int e, std::string x) {
  check_element(m, e);
  FormulaNode n{FormulaKind::SuffixClass};
  n.monoid = std::move(m);
  n.element = e;
  n.x = std::move(x);
  return make(std::move(n));
}

Formula conj(std::vector<Formula> fs) {
  if (fs.size() == 1) return fs.front();
  FormulaNode n{FormulaKind::And};
  n.children = std::move(fs);
  return make(std::move(n));
}

Formula disj(std::vector<Formula> fs) {
  if (fs.size() == 1) return fs.front();
  FormulaNode n{FormulaKind::Or};
  n.children = std::move(fs);
  return make(std::move(n));
}

Formula neg(Formula f) {
  FormulaNode n{FormulaKind::Not};
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula implies(Formula a, Formula b) { return disj({neg(std::move(a)), std::move(b)}); }

Formula exists(std::string x, Formula f) {
  FormulaNode n{FormulaKind::Exists};
  n.x = std::move(x);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula forall(std::string x, Formula f) {
  FormulaNode n{FormulaKind::Forall};
  n.x = std::move(x);
  n.children = {std::move(f)};
  return make(std::move(n));
}
}  // namespace fo

namespace {
void collect_free(const FormulaNode& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  switch (f.kind) {
    case FormulaKind::True: return;
    case FormulaKind::Letter:
    case FormulaKind::PrefixClass:
    case FormulaKind::SuffixClass: use(f.x); return;
    case FormulaKind::Le:
    case FormulaKind::FactorClass:
      use(f.x);
      use(f.y);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      bound.push_back(f.x);
      collect_free(*f.children.front(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children) collect_free(*c, bound, out);
  }
}

void collect_monoids(const FormulaNode& f, std::set<const CertifiedMonoid*>& out) {
  if (f.monoid) out.insert(f.monoid.get());
  for (const auto& c : f.children) collect_monoids(*c, out);
}

struct Evaluator {
  const Alphabet& alphabet;
  const Word& w;
  Positions ctx;
  int n;
  std::vector<std::pair<const std::string*, int>> env;

  int lookup(const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (*it->first == v) return it->second;
    throw Error(ErrorCode::UnboundVariable, "variable '" + v + "'");
  }

  int lo() const { return ctx == Positions::Marked ? 0 : 1; }
  int hi() const { return ctx == Positions::Marked ? n + 1 : n; }

  bool letter_at(const std::string& name, int pos) const {
    if (pos == 0) return name == kLeftMarkToken;
    if (pos == n + 1) return name == kRightMarkToken;
    if (auto s = alphabet.find(name)) return w[static_cast<std::size_t>(pos - 1)] == *s;
    if (name == kLeftMarkToken || name == kRightMarkToken) return false;
    throw Error(ErrorCode::SymbolNotInAlphabet, "letter predicate '" + name + "'");
  }

  /// Image of the inner positions in [from, to] (1-based, clipped to the word).
  int range_class(const CertifiedMonoid& m, int from, int to) const {
    from = std::max(from, 1);
    to = std::min(to, n);
    if (to < from) return TransitionMonoid::identity();
    return class_of_range(m.monoid, w, static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to));
  }

  bool quantify(const FormulaNode& f, bool universal) {
    env.emplace_back(&f.x, 0);
    for (int p = lo(); p <= hi(); ++p) {
      env.back().second = p;
      if (run(*f.children.front()) != universal) {
        env.pop_back();
        return !universal;
      }
    }
    env.pop_back();
    return universal;
  }

  bool run(const FormulaNode& f) {
    switch (f.kind) {
      case FormulaKind::True: return true;
      case FormulaKind::Letter: return letter_at(f.symbol, lookup(f.x));
      case FormulaKind::Le: return lookup(f.x) <= lookup(f.y);
      case FormulaKind::FactorClass: {
        int x = lookup(f.x), y = lookup(f.y);
        if (x > y) throw Error(ErrorCode::MalformedClassAtom, "factor class with " + f.x + " > " + f.y);
        return range_class(*f.monoid, x, y) == f.element;
      }
      case FormulaKind::PrefixClass: return range_class(*f.monoid, 1, lookup(f.x) - 1) == f.element;
      case FormulaKind::SuffixClass: return range_class(*f.monoid, lookup(f.x) + 1, n) == f.element;
      case FormulaKind::And:
        for (const auto& c : f.children)
          if (!run(*c)) return false;
        return true;
      case FormulaKind::Or:
        for (const auto& c : f.children)
          if (run(*c)) return true;
        return false;
      case FormulaKind::Not: return !run(*f.children.front());
      case FormulaKind::Exists: return quantify(f, false);
      case FormulaKind::Forall: return quantify(f, true);
    }
    return false;
  }
};
}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(*f, bound, out);
  return out;
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names) {
  if (names.empty()) return f;
  FormulaNode n = *f;
  auto map = [&](std::string& v) {
    if (auto it = names.find(v); it != names.end()) v = it->second;
  };
  switch (f->kind) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      auto inner = names;
      inner.erase(f->x);
      if (inner.empty()) return f;
      std::set<std::string> taken = free_vars(f->children.front());
      for (const auto& [from, to] : inner) taken.insert({from, to});
      bool captured = std::any_of(inner.begin(), inner.end(), [&](const auto& kv) { return kv.second == f->x; });
      if (captured) {
        // Rename the bound variable out of the way first.
        std::string v = f->x;
        while (taken.count(v)) v += '\'';
        inner[f->x] = v;
        n.x = v;
      }
      n.children = {rename_free(f->children.front(), inner)};
      return std::make_shared<const FormulaNode>(std::move(n));
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Not:
      for (auto& c : n.children) c = rename_free(c, names);
      return std::make_shared<const FormulaNode>(std::move(n));
    default:
      map(n.x);
      map(n.y);
      return std::make_shared<const FormulaNode>(std::move(n));
  }
}

std::size_t formula_size(const Formula& f) {
  std::size_t s = 1;
  for (const auto& c : f->children) s += formula_size(c);
  return s;
}

void check_class_alphabets(const Formula& f, const Alphabet& a) {
  std::set<const CertifiedMonoid*> ms;
  collect_monoids(*f, ms);
  for (const auto* m : ms)
    if (!(m->monoid.alphabet() == a))
      throw Error(ErrorCode::AlphabetMismatch, "monoid '" + m->name + "' is over another alphabet");
}

bool eval(const Formula& f, const Alphabet& a, const Word& w, const Assignment& sigma, Positions ctx) {
  check_class_alphabets(f, a);
  Evaluator ev{a, w, ctx, static_cast<int>(w.size()), {}};
  for (Symbol s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= a.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
  for (const auto& [v, p] : sigma) {
    if (p < ev.lo() || p > ev.hi())
      throw Error(ErrorCode::SemanticError, "position of '" + v + "' outside the word");
    ev.env.emplace_back(&v, p);
  }
  return ev.run(*f);
}

}  // namespace twfo
