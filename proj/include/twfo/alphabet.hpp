#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twfo {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Reserved serialized tokens for the tape endmarkers.
inline constexpr std::string_view kLeftMarkToken = "^";
inline constexpr std::string_view kRightMarkToken = "$";

/// A finite ordered set of printable tokens. Symbols are referred to by
/// their index in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);
  Alphabet(std::initializer_list<const char*> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::string& name(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& names() const noexcept { return symbols_; }

  /// `a` followed by the two endmarker tokens, matching tape symbol numbering.
  static Alphabet with_endmarkers(const Alphabet& a);

  std::optional<Symbol> find(std::string_view token) const;
  Symbol at(std::string_view token) const;  // throws SymbolNotInAlphabet

  /// True when every symbol is a single character, so words print without separators.
  bool compact() const noexcept { return compact_; }

  /// Parses "aab" for compact alphabets, otherwise whitespace-separated tokens.
  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  bool compact_ = true;
};

/// All words over an alphabet of the given size with length in [min_len, max_len],
/// in length-lexicographic order.
std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t min_len, std::size_t max_len);

Word reversed(Word w);
Word concat(const Word& u, const Word& v);
Word power(const Word& u, std::size_t n);

}  // namespace twfo
