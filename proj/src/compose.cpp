#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "twfo/error.hpp"
#include "twfo/hash.hpp"
#include "twfo/translate.hpp"

namespace twfo {
namespace {

// Composite states. Positions below are positions of the composite's input u;
// "the block of x" is the output of the sequential machine at x.
//   Buffer(p, q, L, R): at x, q is the sequential state before x, the block
//     of x is L·R and b reads R[0] in state p. Blocks of 0 and n+1 are the endmarkers.
//   Enter(p, q):   just moved right onto x with sequential state q before x.
//   Back(p, q):    just moved left onto x, q is the sequential state after x.
//   Track(p, Rel): walking left to find which predecessor is the true one;
//     (c, s) means s after the current position leads to candidate c.
//   Collide(p, q1, q2): walking right from a resolved position, following the
//     true candidate's path q1 and a wrong one q2 until they merge.
enum Kind : int { kBuffer, kEnter, kBack, kTrack, kCollide };

struct State {
  int kind = kBuffer;
  int p = 0, q = 0, q2 = 0;
  std::vector<int> left, right;
  std::vector<std::pair<int, int>> rel;

  std::vector<int> key() const {
    std::vector<int> k{kind, p, q, q2, static_cast<int>(left.size())};
    k.insert(k.end(), left.begin(), left.end());
    k.push_back(static_cast<int>(right.size()));
    k.insert(k.end(), right.begin(), right.end());
    for (auto [c, s] : rel) k.insert(k.end(), {c, s});
    return k;
  }
};

struct Out {
  State next;
  int dir;
  Word production;
};

class Composer {
 public:
  Composer(const SequentialTransducer& a, const TwoWayTransducer& b) : a_(a), b_(b) {
    if (!(a.output == b.input())) throw Error(ErrorCode::AlphabetMismatch, "output of the sequential machine is not the input of the two-way machine");
    if (!is_normalized(b)) throw Error(ErrorCode::NonNormalizedInput, "two-way productions must have length at most one");
    a.validate();
    c_left_ = Tape::left(a.input);
    c_right_ = Tape::right(a.input);
    b_left_ = Tape::left(b.input());
    b_right_ = Tape::right(b.input());
  }

  TwoWayTransducer build() {
    State init{kBuffer, b_.initial(), a_.initial, 0, {}, {b_left_}, {}};
    intern(init);
    struct Edge {
      int from, sym, to, dir;
      Word production;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const State s = states_[i];
      for (int sym = 0; sym < Tape::width(a_.input); ++sym)
        if (auto o = step(s, sym)) {
          int to = intern(o->next);
          edges.push_back({static_cast<int>(i), sym, to, o->dir, std::move(o->production)});
        }
    }
    std::vector<std::string> names;
    std::vector<bool> finals;
    for (const State& s : states_) {
      names.push_back(name(s));
      finals.push_back(s.kind == kBuffer && s.right == std::vector<int>{b_right_} && b_.is_final(s.p));
    }
    TwoWayTransducer c(a_.input, b_.output(), names, 0, finals);
    for (auto& e : edges) c.set(e.from, e.sym, Move{e.to, e.dir, std::move(e.production)});
    return c;
  }

 private:
  const SequentialTransducer& a_;
  const TwoWayTransducer& b_;
  int c_left_ = 0, c_right_ = 0, b_left_ = 0, b_right_ = 0;
  std::vector<State> states_;
  std::unordered_map<std::vector<int>, int, VectorHash> ids_;

  int intern(const State& s) {
    auto [it, fresh] = ids_.emplace(s.key(), static_cast<int>(states_.size()));
    if (fresh) states_.push_back(s);
    return it->second;
  }

  std::optional<int> delta(int q, Symbol a) const {
    const auto& t = a_.at(q, a);
    if (!t) return std::nullopt;
    return t->target;
  }

  const Word& gamma(int q, Symbol a) const { return a_.at(q, a)->production; }

  /// Buffer state with b's head on the last letter of the block of a read from s.
  State on_last_letter(int p, int s, const Word& block) const {
    return State{kBuffer, p, s, 0, Word(block.begin(), block.end() - 1), {block.back()}, {}};
  }

  /// Arrived on x (moving left) knowing the sequential state s before x.
  Out arrive_left(int p, int s, Symbol a) const {
    const Word& block = gamma(s, a);
    if (block.empty()) return Out{State{kBack, p, s}, -1, {}};
    return Out{on_last_letter(p, s, block), 0, {}};
  }

  std::optional<Out> step(const State& s, int sym) const {
    const bool inner = sym != c_left_ && sym != c_right_;
    switch (s.kind) {
      case kBuffer: return step_buffer(s, sym);
      case kEnter: {
        if (sym == c_left_) return std::nullopt;
        if (sym == c_right_) {
          if (!a_.finals[static_cast<std::size_t>(s.q)]) return std::nullopt;
          return Out{State{kBuffer, s.p, s.q, 0, {}, {b_right_}, {}}, 0, {}};
        }
        auto next = delta(s.q, sym);
        if (!next) return std::nullopt;
        const Word& block = gamma(s.q, sym);
        if (block.empty()) return Out{State{kEnter, s.p, *next}, +1, {}};
        return Out{State{kBuffer, s.p, s.q, 0, {}, block, {}}, 0, {}};
      }
      case kBack: {
        if (sym == c_right_) return std::nullopt;
        if (sym == c_left_) {
          if (s.q != a_.initial) return std::nullopt;
          return Out{State{kBuffer, s.p, a_.initial, 0, {}, {b_left_}, {}}, 0, {}};
        }
        std::vector<int> cands;
        for (int c = 0; c < a_.num_states(); ++c)
          if (delta(c, sym) == s.q) cands.push_back(c);
        if (cands.empty()) return std::nullopt;
        if (cands.size() == 1) return arrive_left(s.p, cands.front(), sym);
        State t{kTrack, s.p};
        for (int c : cands) t.rel.emplace_back(c, c);
        return Out{t, -1, {}};
      }
      case kTrack: {
        if (sym == c_right_) return std::nullopt;
        std::optional<int> truth;
        if (sym == c_left_) {
          for (auto [c, x] : s.rel)
            if (x == a_.initial) truth = c;
          if (!truth) return std::nullopt;
        } else {
          std::vector<std::pair<int, int>> rel;
          std::set<int> alive;
          for (int x = 0; x < a_.num_states(); ++x) {
            auto nx = delta(x, sym);
            if (!nx) continue;
            for (auto [c, y] : s.rel)
              if (y == *nx) {
                rel.emplace_back(c, x);
                alive.insert(c);
              }
          }
          if (alive.empty()) return std::nullopt;
          if (alive.size() > 1) {
            std::sort(rel.begin(), rel.end());
            State t{kTrack, s.p};
            t.rel = std::move(rel);
            return Out{t, -1, {}};
          }
          truth = *alive.begin();
        }
        // Any path of the true candidate and any path of another one merge
        // exactly at the position where the walk started.
        int q1 = -1, q2 = -1;
        for (auto [c, x] : s.rel) {
          if (c == *truth && q1 < 0) q1 = x;
          if (c != *truth && q2 < 0) q2 = x;
        }
        if (sym == c_left_) q1 = a_.initial;
        return Out{State{kCollide, s.p, q1, q2}, +1, {}};
      }
      case kCollide: {
        if (!inner) return std::nullopt;
        auto n1 = delta(s.q, sym), n2 = delta(s.q2, sym);
        if (!n1 || !n2) return std::nullopt;
        if (*n1 == *n2) return arrive_left(s.p, s.q, sym);
        return Out{State{kCollide, s.p, *n1, *n2}, +1, {}};
      }
    }
    return std::nullopt;
  }

  std::optional<Out> step_buffer(const State& s, int sym) const {
    std::vector<int> block = s.left;
    block.insert(block.end(), s.right.begin(), s.right.end());
    std::optional<int> next_q;
    if (sym == c_left_) {
      if (block != std::vector<int>{b_left_}) return std::nullopt;
      next_q = a_.initial;
    } else if (sym == c_right_) {
      if (block != std::vector<int>{b_right_}) return std::nullopt;
    } else {
      next_q = delta(s.q, sym);
      if (!next_q || gamma(s.q, sym) != block) return std::nullopt;
    }
    const int head = s.right.front();
    const auto& mv = b_.at(s.p, head);
    if (!mv) return std::nullopt;
    State t = s;
    t.p = mv->target;
    if (mv->dir == 0) return Out{t, 0, mv->production};
    if (mv->dir == +1) {
      if (s.right.size() > 1) {
        t.left.push_back(head);
        t.right.erase(t.right.begin());
        return Out{t, 0, mv->production};
      }
      if (!next_q) return std::nullopt;
      return Out{State{kEnter, mv->target, *next_q}, +1, mv->production};
    }
    if (!s.left.empty()) {
      t.right.insert(t.right.begin(), t.left.back());
      t.left.pop_back();
      return Out{t, 0, mv->production};
    }
    return Out{State{kBack, mv->target, s.q}, -1, mv->production};
  }

  std::string symbols(const std::vector<int>& v) const {
    std::string out;
    for (int b : v) out += Tape::name(b_.input(), b);
    return out;
  }

  std::string name(const State& s) const {
    const auto& bp = b_.state_names()[static_cast<std::size_t>(s.p)];
    auto aq = [&](int q) { return a_.states[static_cast<std::size_t>(q)]; };
    std::ostringstream os;
    switch (s.kind) {
      case kBuffer: os << bp << '/' << aq(s.q) << '/' << symbols(s.left) << '.' << symbols(s.right); break;
      case kEnter: os << "enter/" << bp << '/' << aq(s.q); break;
      case kBack: os << "back/" << bp << '/' << aq(s.q); break;
      case kTrack:
        os << "track/" << bp << '/';
        for (std::size_t i = 0; i < s.rel.size(); ++i)
          os << (i ? "," : "") << aq(s.rel[i].first) << ':' << aq(s.rel[i].second);
        break;
      case kCollide: os << "collide/" << bp << '/' << aq(s.q) << '/' << aq(s.q2); break;
    }
    return os.str();
  }
};

}  // namespace

TwoWayTransducer compose_seq_2w(const SequentialTransducer& a, const TwoWayTransducer& b) {
  return Composer(a, b).build();
}

TwoWayTransducer compose_right_seq_2w(const SequentialTransducer& a, const TwoWayTransducer& b) {
  return mirror(compose_seq_2w(a, mirror(b)));
}

}  // namespace twfo
