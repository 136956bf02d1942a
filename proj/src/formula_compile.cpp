#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

#include "twfo/error.hpp"
#include "twfo/formula.hpp"
#include "twfo/hash.hpp"

namespace twfo {
namespace {

/// Per-atom automaton state beyond the marking bookkeeping; a step returns
/// false to send the run to the sink.
using AtomStep = std::function<bool(std::vector<int>& extra, Symbol sym, unsigned bits, unsigned seen)>;
using AtomAccept = std::function<bool(const std::vector<int>& extra)>;

/// Breadth-first construction over (seen tracks, endmarker phase, atom state).
/// Every accepted word is validly marked: each track is set exactly once and,
/// in the marked context, the word has the shape ^ A* $.
Dfa build_atom(const Alphabet& base, int tracks, Positions ctx, std::vector<int> init, const AtomStep& step,
               const AtomAccept& accept) {
  const int k = static_cast<int>(base.size());
  const int letters = k << tracks;
  const unsigned all = (1u << tracks) - 1u;
  const bool marked = ctx == Positions::Marked;
  const int left = k - 2, right = k - 1;

  std::vector<std::vector<int>> keys;
  std::unordered_map<std::vector<int>, int, VectorHash> ids;
  auto intern = [&](std::vector<int> key) {
    auto [it, fresh] = ids.emplace(key, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(std::move(key));
    return it->second;
  };
  init.insert(init.begin(), {0, 0});
  intern(std::move(init));
  std::vector<int> table;
  std::vector<bool> finals;
  const int sink = -1;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto seen = static_cast<unsigned>(keys[i][0]);
    const int phase = keys[i][1];
    for (int l = 0; l < letters; ++l) {
      const Symbol sym = l % k;
      const auto bits = static_cast<unsigned>(l / k);
      int next_phase = phase;
      bool ok = (bits & seen) == 0;
      if (ok && marked) {
        if (phase == 0) ok = sym == left, next_phase = 1;
        else if (phase == 1) ok = sym != left, next_phase = sym == right ? 2 : 1;
        else ok = false;
      }
      std::vector<int> extra;
      if (ok) {
        extra.assign(keys[i].begin() + 2, keys[i].end());
        ok = step(extra, sym, bits, seen);
      }
      if (!ok) {
        table.push_back(sink);
        continue;
      }
      extra.insert(extra.begin(), {static_cast<int>(seen | bits), next_phase});
      table.push_back(intern(std::move(extra)));
    }
  }
  const int n = static_cast<int>(keys.size());
  for (auto& t : table)
    if (t == sink) t = n;
  table.insert(table.end(), static_cast<std::size_t>(letters), n);
  for (const auto& key : keys) {
    bool done = static_cast<unsigned>(key[0]) == all && (!marked || key[1] == 2);
    finals.push_back(done && accept(std::vector<int>(key.begin() + 2, key.end())));
  }
  finals.push_back(false);
  return dfa_minimize(Dfa(base, tracks, n + 1, 0, std::move(finals), std::move(table)));
}

class Compiler {
 public:
  Compiler(const Alphabet& a, Positions ctx)
      : ctx_(ctx), base_(ctx == Positions::Marked ? Alphabet::with_endmarkers(a) : a), inner_(static_cast<int>(a.size())) {}

  Dfa compile(const FormulaNode& f, const std::vector<std::string>& vars) {
    auto key = std::make_pair(&f, vars);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Dfa d = build(f, vars);
    memo_.emplace(std::move(key), d);
    return d;
  }

  Dfa valid(int tracks) {
    return build_atom(
        base_, tracks, ctx_, {}, [](auto&, Symbol, unsigned, unsigned) { return true; }, [](const auto&) { return true; });
  }

 private:
  Positions ctx_;
  Alphabet base_;
  int inner_;
  std::map<std::pair<const FormulaNode*, std::vector<std::string>>, Dfa> memo_;

  static unsigned bit_of(const std::vector<std::string>& vars, const std::string& v) {
    for (std::size_t i = vars.size(); i-- > 0;)
      if (vars[i] == v) return 1u << i;
    throw Error(ErrorCode::UnboundVariable, "variable '" + v + "'");
  }

  bool inner(Symbol s) const { return s < inner_; }

  Dfa atom(int tracks, std::vector<int> init, const AtomStep& step, const AtomAccept& accept) {
    return build_atom(base_, tracks, ctx_, std::move(init), step, accept);
  }

  Symbol resolve_letter(const std::string& name) const {
    if (auto s = base_.find(name)) return *s;
    if (name == kLeftMarkToken || name == kRightMarkToken) return -1;  // never present in plain words
    throw Error(ErrorCode::SymbolNotInAlphabet, "letter predicate '" + name + "'");
  }

  static bool is_class(FormulaKind k) {
    return k == FormulaKind::FactorClass || k == FormulaKind::PrefixClass || k == FormulaKind::SuffixClass;
  }

  /// Class atom of f's kind and variables accepting any of `elements`.
  Dfa class_atom(const FormulaNode& f, const std::vector<std::string>& vars, const std::vector<int>& elements) {
    const int tracks = static_cast<int>(vars.size());
    const TransitionMonoid* m = &f.monoid->monoid;
    std::vector<bool> wanted(m->size(), false);
    for (int e : elements) wanted[static_cast<std::size_t>(e)] = true;
    const unsigned x = bit_of(vars, f.x);
    switch (f.kind) {
      case FormulaKind::FactorClass: {
        const unsigned y = bit_of(vars, f.y);
        // e = {phase, acc}: phase 0 before x, 1 inside, 2 after y.
        return atom(
            tracks, {0, TransitionMonoid::identity()},
            [=, this](std::vector<int>& e, Symbol s, unsigned bits, unsigned) {
              if (bits & x) e[0] = 1;
              if (e[0] == 1 && inner(s)) e[1] = m->times_letter(e[1], s);
              if (bits & y) {
                if (e[0] != 1) return false;  // y before x
                e[0] = 2;
              }
              return true;
            },
            [=](const std::vector<int>& e) { return e[0] == 2 && wanted[static_cast<std::size_t>(e[1])]; });
      }
      case FormulaKind::PrefixClass:
        return atom(
            tracks, {0, TransitionMonoid::identity()},
            [=, this](std::vector<int>& e, Symbol s, unsigned bits, unsigned) {
              if (bits & x) e[0] = 1;
              else if (e[0] == 0 && inner(s)) e[1] = m->times_letter(e[1], s);
              return true;
            },
            [=](const std::vector<int>& e) { return wanted[static_cast<std::size_t>(e[1])]; });
      default:
        return atom(
            tracks, {0, TransitionMonoid::identity()},
            [=, this](std::vector<int>& e, Symbol s, unsigned bits, unsigned) {
              if (e[0] == 1 && inner(s)) e[1] = m->times_letter(e[1], s);
              if (bits & x) e[0] = 1;
              return true;
            },
            [=](const std::vector<int>& e) { return wanted[static_cast<std::size_t>(e[1])]; });
    }
  }

  Dfa build(const FormulaNode& f, const std::vector<std::string>& vars) {
    const int tracks = static_cast<int>(vars.size());
    switch (f.kind) {
      case FormulaKind::True: return valid(tracks);
      case FormulaKind::Letter: {
        const unsigned x = bit_of(vars, f.x);
        const Symbol a = resolve_letter(f.symbol);
        return atom(
            tracks, {0},
            [=](std::vector<int>& e, Symbol s, unsigned bits, unsigned) {
              if (bits & x) e[0] = s == a;
              return true;
            },
            [](const std::vector<int>& e) { return e[0] == 1; });
      }
      case FormulaKind::Le: {
        const unsigned x = bit_of(vars, f.x), y = bit_of(vars, f.y);
        return atom(
            tracks, {0},
            [=](std::vector<int>& e, Symbol, unsigned bits, unsigned seen) {
              if (bits & y) e[0] = ((seen | bits) & x) != 0;
              return true;
            },
            [](const std::vector<int>& e) { return e[0] == 1; });
      }
      case FormulaKind::FactorClass:
      case FormulaKind::PrefixClass:
      case FormulaKind::SuffixClass: return class_atom(f, vars, {f.element});
      case FormulaKind::And: {
        Dfa d = valid(tracks);
        for (const auto& c : f.children) {
          d = dfa_intersect(d, compile(*c, vars));
          if (dfa_is_empty(d)) break;
        }
        return d;
      }
      case FormulaKind::Or: {
        Dfa d = dfa_empty(base_, tracks);
        // Class atoms over the same variables fold into one automaton.
        std::map<std::tuple<FormulaKind, const CertifiedMonoid*, std::string, std::string>, std::vector<int>> classes;
        std::map<std::tuple<FormulaKind, const CertifiedMonoid*, std::string, std::string>, const FormulaNode*> sample;
        for (const auto& c : f.children) {
          if (is_class(c->kind)) {
            auto key = std::tuple{c->kind, c->monoid.get(), c->x, c->y};
            classes[key].push_back(c->element);
            sample.emplace(key, c.get());
          } else {
            d = dfa_union(d, compile(*c, vars));
          }
        }
        for (const auto& [key, elements] : classes) d = dfa_union(d, class_atom(*sample[key], vars, elements));
        return d;
      }
      case FormulaKind::Not: return dfa_intersect(dfa_complement(compile(*f.children.front(), vars)), valid(tracks));
      case FormulaKind::Exists: {
        auto inner_vars = vars;
        inner_vars.push_back(f.x);
        return dfa_project_bit(compile(*f.children.front(), inner_vars), tracks);
      }
      case FormulaKind::Forall: {
        auto inner_vars = vars;
        inner_vars.push_back(f.x);
        Dfa body = compile(*f.children.front(), inner_vars);
        Dfa counter = dfa_intersect(dfa_complement(body), valid(tracks + 1));
        return dfa_intersect(dfa_complement(dfa_project_bit(counter, tracks)), valid(tracks));
      }
    }
    throw Error(ErrorCode::SemanticError, "unknown formula node");
  }
};

}  // namespace

Dfa compile_to_dfa(const Formula& f, const std::vector<std::string>& vars, const Alphabet& a, Positions ctx) {
  check_class_alphabets(f, a);
  for (const auto& v : free_vars(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' not declared");
  if (vars.size() > 16) throw Error(ErrorCode::SemanticError, "too many free variables");
  Compiler c(a, ctx);
  return c.compile(*f, vars);
}

Dfa valid_markings(const Alphabet& a, int tracks, Positions ctx) { return Compiler(a, ctx).valid(tracks); }

std::vector<int> marked_letters(const Dfa& d, const Word& w, const std::vector<int>& positions, Positions ctx) {
  const int n = static_cast<int>(w.size());
  const bool marked = ctx == Positions::Marked;
  const int lo = marked ? 0 : 1, hi = marked ? n + 1 : n;
  const int k = static_cast<int>(d.base().size());
  std::vector<int> out;
  for (int p = lo; p <= hi; ++p) {
    unsigned bits = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      if (positions[i] == p) bits |= 1u << i;
    Symbol s = p == 0 ? k - 2 : p == n + 1 ? k - 1 : w[static_cast<std::size_t>(p - 1)];
    out.push_back(d.letter(s, bits));
  }
  return out;
}

StarFreeCertificate certify_star_free(const Formula& f, const Alphabet& a, Positions ctx) {
  auto fv = free_vars(f);
  Dfa d = compile_to_dfa(f, std::vector<std::string>(fv.begin(), fv.end()), a, ctx);
  auto ap = dfa_is_counter_free(d);
  if (!ap.aperiodic)
    throw Error(ErrorCode::NonAperiodicCompilation, "compiled automaton of " + to_string(f) + " has a counter");
  return StarFreeCertificate{true, *ap.index, d.num_states()};
}

}  // namespace twfo
