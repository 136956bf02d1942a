#include <map>

#include "twfo/error.hpp"
#include "twfo/translate.hpp"

namespace twfo {
namespace {

Formula any_of(std::vector<Formula> fs) { return fs.empty() ? fo::bottom() : fo::disj(std::move(fs)); }

/// Disjunction of guard ∧ body, sharing each distinct body between its guards.
class Cases {
 public:
  void add(Formula guard, Formula body) {
    auto [it, fresh] = index_.emplace(twfo::to_string(body), groups_.size());
    if (fresh) groups_.push_back({{}, std::move(body)});
    groups_[it->second].first.push_back(std::move(guard));
  }
  bool empty() const { return groups_.empty(); }
  Formula build() {
    std::vector<Formula> out;
    for (auto& [guards, body] : groups_) out.push_back(fo::conj({any_of(std::move(guards)), std::move(body)}));
    return any_of(std::move(out));
  }

 private:
  std::vector<std::pair<std::vector<Formula>, Formula>> groups_;
  std::map<std::string, std::size_t> index_;
};

class FotBuilder {
 public:
  FotBuilder(TwoWayTransducer t, const TwoWayToFotOptions& options)
      : t_(std::move(t)), m_(certify_monoid("m", transition_monoid(t_, options.max_monoid))), n_(static_cast<int>(monoid().size())) {
    for (int q = 0; q < t_.num_states(); ++q) {
      bool any = false;
      for (Symbol a = 0; a < letters(); ++a) any = any || emits(q, a);
      if (any) nodes_.push_back(q);
    }
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y) product_.push_back(monoid().product(x, y));
    for (int e = 0; e < n_; ++e) accepting_.push_back(class_accepts(monoid(), e));
  }

  FoTransduction build() {
    FoTransduction f(t_.input(), t_.output(), t_.state_names());
    f.domain = domain();
    for (int q = 0; q < t_.num_states(); ++q)
      for (Symbol b = 0; b < static_cast<Symbol>(t_.output().size()); ++b) f.set_pos(q, b, fo::bottom());
    positions(f);
    for (int c = 0; c < t_.num_states(); ++c)
      for (int d = 0; d < t_.num_states(); ++d) f.set_le(c, d, fo::bottom());
    // Copies that never emit carry no nodes, so only emitting ones are ordered.
    for (int c : nodes_) {
      auto same = along(c), before = across(c, ReachOrder::Before), after = across(c, ReachOrder::After);
      for (std::size_t i = 0; i < nodes_.size(); ++i)
        f.set_le(c, nodes_[i], fo::disj({fo::conj({fo::lt("x", "y"), before[i]}), fo::conj({fo::eq("x", "y"), same[i]}),
                                         fo::conj({fo::lt("y", "x"), after[i]})}));
    }
    return f;
  }

 private:
  TwoWayTransducer t_;
  MonoidRef m_;
  int n_;
  std::vector<int> nodes_;  // states that emit on some letter
  std::vector<int> product_;
  std::vector<bool> accepting_;

  const TransitionMonoid& monoid() const { return m_->monoid; }
  const std::string& name(Symbol a) const { return t_.input().name(a); }
  int letters() const { return static_cast<int>(t_.input().size()); }
  int times(int x, int y) const { return product_[static_cast<std::size_t>(x * n_ + y)]; }
  int times(int x, Symbol a, int y) const { return times(monoid().times_letter(x, a), y); }

  /// Letters on which state q emits something, i.e. where copy q can have a node.
  bool emits(int q, Symbol a) const {
    const auto& mv = t_.at(q, a);
    return mv && !mv->production.empty();
  }

  Formula domain() const {
    std::vector<Formula> classes;
    for (int e = 0; e < n_; ++e)
      if (accepting_[static_cast<std::size_t>(e)])
        classes.push_back(fo::exists("x", fo::exists("y", fo::conj({fo::first("x"), fo::last("y"), fo::factor_class(m_, e, "x", "y")}))));
    return fo::conj({linear_graph_sentence(), any_of(std::move(classes))});
  }

  // Formulas only matter on words of the domain, so other classes are skipped.
  void positions(FoTransduction& f) const {
    const auto k = nodes_.size();
    const auto outputs = t_.output().size();
    std::vector<Cases> by_letter(k * outputs);
    for (Symbol c = 0; c < letters(); ++c) {
      std::vector<Cases> by_pre(k);
      for (int pre = 0; pre < n_; ++pre) {
        std::vector<std::vector<Formula>> by_suf(k);
        for (int suf = 0; suf < n_; ++suf) {
          if (!accepting_[static_cast<std::size_t>(times(pre, c, suf))]) continue;
          const auto at = start_states(monoid(), pre, c, suf);
          for (std::size_t i = 0; i < k; ++i)
            if (emits(nodes_[i], c) && at[static_cast<std::size_t>(nodes_[i])]) by_suf[i].push_back(fo::suffix_class(m_, suf, "x"));
        }
        for (std::size_t i = 0; i < k; ++i)
          if (!by_suf[i].empty()) by_pre[i].add(fo::prefix_class(m_, pre, "x"), any_of(std::move(by_suf[i])));
      }
      for (std::size_t i = 0; i < k; ++i) {
        const auto& mv = t_.at(nodes_[i], c);
        if (by_pre[i].empty() || !mv || mv->production.size() != 1) continue;
        by_letter[i * outputs + static_cast<std::size_t>(mv->production.front())].add(fo::letter(name(c), "x"), by_pre[i].build());
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t b = 0; b < outputs; ++b)
        if (!by_letter[i * outputs + b].empty()) f.set_pos(nodes_[i], static_cast<Symbol>(b), by_letter[i * outputs + b].build());
  }

  /// Order within one position: node (x, c) against (x, d) for every node copy d.
  std::vector<Formula> along(int c) const {
    const auto k = nodes_.size();
    std::vector<Cases> by_pre(k);
    for (int pre = 0; pre < n_; ++pre) {
      std::vector<Cases> by_letter(k);
      for (Symbol l = 0; l < letters(); ++l) {
        if (!emits(c, l)) continue;
        std::vector<std::vector<Formula>> by_suf(k);
        for (int suf = 0; suf < n_; ++suf) {
          if (!accepting_[static_cast<std::size_t>(times(pre, l, suf))]) continue;
          const auto at = reach_states(monoid(), ClassTriple{pre, 0, suf, l}, ReachOrder::Same, c);
          for (std::size_t i = 0; i < k; ++i)
            if (emits(nodes_[i], l) && at[static_cast<std::size_t>(nodes_[i])]) by_suf[i].push_back(fo::suffix_class(m_, suf, "x"));
        }
        for (std::size_t i = 0; i < k; ++i)
          if (!by_suf[i].empty()) by_letter[i].add(fo::letter(name(l), "x"), any_of(std::move(by_suf[i])));
      }
      for (std::size_t i = 0; i < k; ++i)
        if (!by_letter[i].empty()) by_pre[i].add(fo::prefix_class(m_, pre, "x"), by_letter[i].build());
    }
    std::vector<Formula> out;
    for (auto& cases : by_pre) out.push_back(cases.build());
    return out;
  }

  /// Order across positions, against every node copy d. Before (x < y):
  /// classes of u[1..x-1], u[x..y-1] and u[y+1..n]. After (y < x): classes
  /// of u[1..y-1], u[y+1..x] and u[x+1..n]. The letter is read at y.
  std::vector<Formula> across(int c, ReachOrder order) const {
    const bool fwd = order == ReachOrder::Before;
    const std::string p = fwd ? "x" : "y", s = fwd ? "y" : "x";
    const auto k = nodes_.size();
    std::vector<Cases> by_pre(k);
    for (int pre = 0; pre < n_; ++pre) {
      std::vector<Cases> by_letter(k);
      for (Symbol l = 0; l < letters(); ++l) {
        std::vector<Cases> by_suf(k);
        for (int suf = 0; suf < n_; ++suf) {
          std::vector<std::vector<Formula>> by_mid(k);
          for (int mid = 0; mid < n_; ++mid) {
            const int whole = fwd ? times(times(pre, mid), l, suf) : times(pre, l, times(mid, suf));
            if (!accepting_[static_cast<std::size_t>(whole)]) continue;
            const auto at = reach_states(monoid(), ClassTriple{pre, mid, suf, l}, order, c);
            for (std::size_t i = 0; i < k; ++i)
              if (emits(nodes_[i], l) && at[static_cast<std::size_t>(nodes_[i])])
                by_mid[i].push_back(fwd ? fo::factor_class(m_, mid, "x", "z") : fo::factor_class(m_, mid, "z", "x"));
          }
          for (std::size_t i = 0; i < k; ++i)
            if (!by_mid[i].empty())
              by_suf[i].add(fo::suffix_class(m_, suf, s),
                            fo::exists("z", fo::conj({fwd ? fo::succ("z", "y") : fo::succ("y", "z"), any_of(std::move(by_mid[i]))})));
        }
        for (std::size_t i = 0; i < k; ++i)
          if (!by_suf[i].empty()) by_letter[i].add(fo::letter(name(l), "y"), by_suf[i].build());
      }
      for (std::size_t i = 0; i < k; ++i)
        if (!by_letter[i].empty()) by_pre[i].add(fo::prefix_class(m_, pre, p), by_letter[i].build());
    }
    std::vector<Formula> out;
    for (auto& cases : by_pre) out.push_back(cases.build());
    return out;
  }
};

}  // namespace

FoTransduction twoway_to_fot(const TwoWayTransducer& t, const TwoWayToFotOptions& options) {
  return FotBuilder(normalize(defer_endmarker_output(t)), options).build();
}

}  // namespace twfo
