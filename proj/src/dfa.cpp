#include "twfo/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "twfo/error.hpp"
#include "twfo/hash.hpp"

namespace twfo {

Dfa::Dfa(Alphabet base, int tracks, int num_states, int initial, std::vector<bool> finals,
         std::vector<int> table)
    : base_(std::move(base)),
      tracks_(tracks),
      num_states_(num_states),
      initial_(initial),
      finals_(std::move(finals)),
      table_(std::move(table)) {
  if (num_states_ <= 0 || initial_ < 0 || initial_ >= num_states_)
    throw Error(ErrorCode::InvalidMachine, "dfa initial state out of range");
  if (finals_.size() != static_cast<std::size_t>(num_states_))
    throw Error(ErrorCode::InvalidMachine, "dfa final set size mismatch");
  if (table_.size() != static_cast<std::size_t>(num_states_) * static_cast<std::size_t>(num_letters()))
    throw Error(ErrorCode::InvalidMachine, "dfa step table is not total");
  for (int t : table_)
    if (t < 0 || t >= num_states_) throw Error(ErrorCode::InvalidMachine, "dfa step target out of range");
}

int Dfa::run(int q, const std::vector<int>& letters) const {
  for (int l : letters) {
    if (l < 0 || l >= num_letters()) throw Error(ErrorCode::SymbolNotInAlphabet, "letter index out of range");
    q = step(q, l);
  }
  return q;
}

bool Dfa::accepts(const std::vector<int>& letters) const { return is_final(run(initial_, letters)); }

bool Dfa::accepts_word(const Word& w) const {
  int q = initial_;
  for (Symbol s : w) {
    if (s < 0 || static_cast<std::size_t>(s) >= base_.size())
      throw Error(ErrorCode::SymbolNotInAlphabet, "symbol index out of range");
    q = step(q, s);
  }
  return is_final(q);
}

Dfa Dfa::with_initial(int q) const {
  Dfa d = *this;
  d.initial_ = q;
  return d;
}

Dfa Dfa::with_finals(std::vector<bool> finals) const {
  return Dfa(base_, tracks_, num_states_, initial_, std::move(finals), table_);
}

namespace {

void require_compatible(const Dfa& a, const Dfa& b) {
  if (!(a.base() == b.base()) || a.tracks() != b.tracks())
    throw Error(ErrorCode::AlphabetMismatch, "product of automata over different alphabets");
}

template <class Accept>
Dfa product(const Dfa& a, const Dfa& b, Accept accept) {
  require_compatible(a, b);
  const int letters = a.num_letters();
  std::unordered_map<std::pair<int, int>, int, PairHash> ids;
  std::vector<std::pair<int, int>> states;
  auto id_of = [&](std::pair<int, int> s) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<int>(states.size()));
    if (inserted) states.push_back(s);
    return it->second;
  };
  id_of({a.initial(), b.initial()});
  std::vector<int> table;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    for (int l = 0; l < letters; ++l) table.push_back(id_of({a.step(p, l), b.step(q, l)}));
  }
  std::vector<bool> finals;
  for (auto [p, q] : states) finals.push_back(accept(a.is_final(p), b.is_final(q)));
  return Dfa(a.base(), a.tracks(), static_cast<int>(states.size()), 0, std::move(finals), std::move(table));
}

// Subset construction from a set of start states under a letter relation.
template <class Successors>
Dfa determinize(const Alphabet& base, int tracks, std::vector<int> start, const std::vector<bool>& nfa_finals,
                Successors successors) {
  const int letters = static_cast<int>(base.size()) << tracks;
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  auto id_of = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, inserted] = ids.try_emplace(s, static_cast<int>(sets.size()));
    if (inserted) sets.push_back(std::move(s));
    return it->second;
  };
  id_of(std::move(start));
  std::vector<int> table;
  std::vector<int> next;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int l = 0; l < letters; ++l) {
      next.clear();
      for (int q : sets[i]) successors(q, l, next);
      table.push_back(id_of(next));
    }
  }
  std::vector<bool> finals;
  for (const auto& s : sets)
    finals.push_back(std::any_of(s.begin(), s.end(), [&](int q) { return nfa_finals[static_cast<std::size_t>(q)]; }));
  return Dfa(base, tracks, static_cast<int>(sets.size()), 0, std::move(finals), std::move(table));
}

}  // namespace

Dfa dfa_intersect(const Dfa& a, const Dfa& b) {
  return dfa_minimize(product(a, b, [](bool x, bool y) { return x && y; }));
}

Dfa dfa_union(const Dfa& a, const Dfa& b) {
  return dfa_minimize(product(a, b, [](bool x, bool y) { return x || y; }));
}

Dfa dfa_complement(const Dfa& a) {
  std::vector<bool> finals = a.finals();
  finals.flip();
  return a.with_finals(std::move(finals));
}

Dfa dfa_project_bit(const Dfa& a, int bit) {
  if (bit < 0 || bit >= a.tracks()) throw Error(ErrorCode::AlphabetMismatch, "no such track");
  const int base = static_cast<int>(a.base().size());
  auto widen = [&](unsigned bits, unsigned value) {
    unsigned low = bits & ((1u << bit) - 1u);
    unsigned high = bits >> bit;
    return (high << (bit + 1)) | (value << bit) | low;
  };
  Dfa result = determinize(a.base(), a.tracks() - 1, {a.initial()}, a.finals(),
                           [&](int q, int letter, std::vector<int>& out) {
                             Symbol s = letter % base;
                             unsigned bits = static_cast<unsigned>(letter / base);
                             for (unsigned v = 0; v < 2; ++v)
                               out.push_back(a.step(q, a.letter(s, widen(bits, v))));
                           });
  return dfa_minimize(result);
}

Dfa dfa_reverse(const Dfa& a) {
  const int letters = a.num_letters();
  std::vector<std::vector<std::vector<int>>> pred(static_cast<std::size_t>(a.num_states()),
                                                  std::vector<std::vector<int>>(static_cast<std::size_t>(letters)));
  for (int q = 0; q < a.num_states(); ++q)
    for (int l = 0; l < letters; ++l) pred[static_cast<std::size_t>(a.step(q, l))][static_cast<std::size_t>(l)].push_back(q);
  std::vector<int> start;
  for (int q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) start.push_back(q);
  std::vector<bool> nfa_finals(static_cast<std::size_t>(a.num_states()), false);
  nfa_finals[static_cast<std::size_t>(a.initial())] = true;
  Dfa result = determinize(a.base(), a.tracks(), start, nfa_finals, [&](int q, int l, std::vector<int>& out) {
    const auto& p = pred[static_cast<std::size_t>(q)][static_cast<std::size_t>(l)];
    out.insert(out.end(), p.begin(), p.end());
  });
  return dfa_minimize(result);
}

Dfa dfa_minimize(const Dfa& a) {
  const int letters = a.num_letters();
  // Reachable states in BFS order.
  std::vector<int> order;
  std::vector<int> seen(static_cast<std::size_t>(a.num_states()), -1);
  order.push_back(a.initial());
  seen[static_cast<std::size_t>(a.initial())] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int l = 0; l < letters; ++l) {
      int t = a.step(order[i], l);
      if (seen[static_cast<std::size_t>(t)] < 0) {
        seen[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const std::size_t n = order.size();
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = a.is_final(order[i]) ? 1 : 0;
  std::size_t num_classes = 0;
  std::vector<int> sig;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig.assign(1, cls[i]);
      for (int l = 0; l < letters; ++l) sig.push_back(cls[static_cast<std::size_t>(seen[static_cast<std::size_t>(a.step(order[i], l))])]);
      next[i] = ids.try_emplace(sig, static_cast<int>(ids.size())).first->second;
    }
    bool stable = ids.size() == num_classes;
    num_classes = ids.size();
    cls = std::move(next);
    if (stable) break;
  }
  // Canonical renumbering: BFS over classes from the initial class.
  std::vector<int> rep(num_classes, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[static_cast<std::size_t>(cls[i])] < 0) rep[static_cast<std::size_t>(cls[i])] = static_cast<int>(i);
  std::vector<int> number(num_classes, -1);
  std::vector<int> bfs{cls[0]};
  number[static_cast<std::size_t>(cls[0])] = 0;
  std::vector<int> table;
  std::vector<bool> finals;
  for (std::size_t k = 0; k < bfs.size(); ++k) {
    int r = rep[static_cast<std::size_t>(bfs[k])];
    finals.push_back(a.is_final(order[static_cast<std::size_t>(r)]));
    for (int l = 0; l < letters; ++l) {
      int c = cls[static_cast<std::size_t>(seen[static_cast<std::size_t>(a.step(order[static_cast<std::size_t>(r)], l))])];
      if (number[static_cast<std::size_t>(c)] < 0) {
        number[static_cast<std::size_t>(c)] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
      table.push_back(number[static_cast<std::size_t>(c)]);
    }
  }
  return Dfa(a.base(), a.tracks(), static_cast<int>(bfs.size()), 0, std::move(finals), std::move(table));
}

Dfa dfa_restrict(const Dfa& a, const Alphabet& base, const std::vector<int>& symbol_map) {
  const int letters = static_cast<int>(base.size());
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(a.num_states() * letters));
  for (int q = 0; q < a.num_states(); ++q)
    for (int s = 0; s < letters; ++s) table.push_back(a.step(q, symbol_map[static_cast<std::size_t>(s)]));
  return dfa_minimize(Dfa(base, 0, a.num_states(), a.initial(), a.finals(), std::move(table)));
}

Dfa dfa_universal(const Alphabet& base, int tracks) {
  int letters = static_cast<int>(base.size()) << tracks;
  return Dfa(base, tracks, 1, 0, {true}, std::vector<int>(static_cast<std::size_t>(letters), 0));
}

Dfa dfa_empty(const Alphabet& base, int tracks) {
  int letters = static_cast<int>(base.size()) << tracks;
  return Dfa(base, tracks, 1, 0, {false}, std::vector<int>(static_cast<std::size_t>(letters), 0));
}

Dfa dfa_epsilon_only(const Alphabet& base) {
  std::vector<int> table(2 * base.size(), 1);
  return Dfa(base, 0, 2, 0, {true, false}, std::move(table));
}

std::optional<std::vector<int>> dfa_witness(const Dfa& a) {
  std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(a.num_states()), {-2, -1});
  std::deque<int> queue{a.initial()};
  parent[static_cast<std::size_t>(a.initial())] = {-1, -1};
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (a.is_final(q)) {
      std::vector<int> letters;
      for (int c = q; parent[static_cast<std::size_t>(c)].first >= 0; c = parent[static_cast<std::size_t>(c)].first)
        letters.push_back(parent[static_cast<std::size_t>(c)].second);
      std::reverse(letters.begin(), letters.end());
      return letters;
    }
    for (int l = 0; l < a.num_letters(); ++l) {
      int t = a.step(q, l);
      if (parent[static_cast<std::size_t>(t)].first == -2) {
        parent[static_cast<std::size_t>(t)] = {q, l};
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool dfa_is_empty(const Dfa& a) { return !dfa_witness(a).has_value(); }

bool dfa_equivalent(const Dfa& a, const Dfa& b) {
  require_compatible(a, b);
  return dfa_minimize(a) == dfa_minimize(b);
}

Aperiodicity dfa_is_counter_free(const Dfa& a, std::size_t max_elements) {
  using Map = std::vector<int>;
  const int n = a.num_states();
  std::vector<Map> generators;
  for (int l = 0; l < a.num_letters(); ++l) {
    Map g(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) g[static_cast<std::size_t>(q)] = a.step(q, l);
    if (std::find(generators.begin(), generators.end(), g) == generators.end()) generators.push_back(std::move(g));
  }
  Map identity(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) identity[static_cast<std::size_t>(q)] = q;

  std::unordered_map<Map, int, VectorHash> ids;
  std::vector<Map> elements{identity};
  ids.emplace(identity, 0);
  Map next(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const Map& g : generators) {
      for (int q = 0; q < n; ++q)
        next[static_cast<std::size_t>(q)] = g[static_cast<std::size_t>(elements[i][static_cast<std::size_t>(q)])];
      if (ids.try_emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
        if (elements.size() > max_elements)
          throw Error(ErrorCode::MonoidTooLarge, "transition monoid exceeds " + std::to_string(max_elements));
      }
    }
  }

  // m^k = m^{k+1} iff m^k(q) is a fixed point of m for every q, so the
  // element index is the longest path to a fixed point in m's functional graph.
  Aperiodicity result;
  result.monoid_size = elements.size();
  int index = 0;
  std::vector<int> depth(static_cast<std::size_t>(n));
  std::vector<int> path;
  for (const Map& m : elements) {
    std::fill(depth.begin(), depth.end(), -1);
    for (int q = 0; q < n; ++q) {
      path.clear();
      int c = q;
      while (depth[static_cast<std::size_t>(c)] == -1 && m[static_cast<std::size_t>(c)] != c) {
        depth[static_cast<std::size_t>(c)] = -2;  // on the current path
        path.push_back(c);
        c = m[static_cast<std::size_t>(c)];
      }
      int base;
      if (m[static_cast<std::size_t>(c)] == c) {
        base = 0;
        depth[static_cast<std::size_t>(c)] = 0;
      } else if (depth[static_cast<std::size_t>(c)] == -2) {
        return result;  // a cycle of length > 1: not aperiodic
      } else {
        base = depth[static_cast<std::size_t>(c)];
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it) depth[static_cast<std::size_t>(*it)] = ++base;
      index = std::max(index, depth[static_cast<std::size_t>(q)]);
    }
  }
  result.aperiodic = true;
  result.index = index;
  return result;
}

}  // namespace twfo
