#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twfo/formula.hpp"

namespace twfo {

/// First-order word-to-word transduction: copies of the input positions,
/// selected and labeled by unary formulas in x and ordered by binary
/// formulas in x and y. Missing formulas read as false.
struct FoTransduction {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> copies;
  Formula domain;
  /// [copy * |output| + letter]
  std::vector<Formula> position;
  /// [copy * |copies| + copy']
  std::vector<Formula> order;

  FoTransduction() = default;
  FoTransduction(Alphabet in, Alphabet out, std::vector<std::string> copy_names);

  int num_copies() const { return static_cast<int>(copies.size()); }
  const Formula& pos(int c, Symbol b) const {
    return position[static_cast<std::size_t>(c) * output.size() + static_cast<std::size_t>(b)];
  }
  const Formula& le(int c, int d) const {
    return order[static_cast<std::size_t>(c) * copies.size() + static_cast<std::size_t>(d)];
  }
  void set_pos(int c, Symbol b, Formula f);
  void set_le(int c, int d, Formula f);
  std::optional<int> find_copy(std::string_view name) const;

  /// Free variables, alphabets of class atoms and copy indices.
  void validate() const;
};

/// States that the input positions form a non-empty linear order.
Formula linear_graph_sentence();

struct OutputNode {
  int copy = 0;
  int position = 0;  // 1-based input position
  Symbol label = 0;
};

struct OutputStructure {
  std::vector<OutputNode> nodes;
  std::vector<std::vector<bool>> le;  // le[i][j]: nodes[i] before-or-equal nodes[j]
};

bool fot_domain_check(const FoTransduction& t, const Word& w);
/// Nodes and the evaluated order; throws LabelConflict when two position
/// formulas of one copy hold at the same position.
OutputStructure output_structure(const FoTransduction& t, const Word& w);
/// Whether `le` is a total order on the nodes.
bool is_total_order(const OutputStructure& s);
/// Undefined outside the domain or when the order is not total.
std::optional<Word> fot_eval(const FoTransduction& t, const Word& w);

}  // namespace twfo
