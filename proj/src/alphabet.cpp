#include "twfo/alphabet.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "twfo/error.hpp"

namespace twfo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SymbolNotInAlphabet: return "symbol-not-in-alphabet";
    case ErrorCode::AlphabetMismatch: return "alphabet-mismatch";
    case ErrorCode::InvalidMachine: return "invalid-machine";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::MalformedClassAtom: return "malformed-class-atom";
    case ErrorCode::NotAperiodic: return "not-aperiodic";
    case ErrorCode::NonAperiodicCompilation: return "non-aperiodic-compilation";
    case ErrorCode::LabelConflict: return "label-conflict";
    case ErrorCode::DeterminismViolation: return "determinism-violation";
    case ErrorCode::DirectionAmbiguity: return "direction-ambiguity";
    case ErrorCode::NonNormalizedInput: return "non-normalized-input";
    case ErrorCode::ElementNotInMonoid: return "element-not-in-monoid";
    case ErrorCode::TooManyTests: return "too-many-tests";
    case ErrorCode::MonoidTooLarge: return "monoid-too-large";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::SemanticError: return "semantic-error";
    case ErrorCode::IncompatibleAlphabets: return "incompatible-alphabets";
  }
  return "unknown";
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorCode::SemanticError, "alphabet must be non-empty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw Error(ErrorCode::SemanticError, "empty symbol");
    if (s == kLeftMarkToken || s == kRightMarkToken)
      throw Error(ErrorCode::SemanticError, "endmarker token '" + s + "' is reserved");
    if (!seen.insert(s).second) throw Error(ErrorCode::SemanticError, "duplicate symbol '" + s + "'");
    if (s.size() != 1) compact_ = false;
  }
}

Alphabet::Alphabet(std::initializer_list<const char*> symbols)
    : Alphabet(std::vector<std::string>(symbols.begin(), symbols.end())) {}

Alphabet Alphabet::with_endmarkers(const Alphabet& a) {
  Alphabet r;
  r.symbols_ = a.symbols_;
  r.symbols_.emplace_back(kLeftMarkToken);
  r.symbols_.emplace_back(kRightMarkToken);
  r.compact_ = a.compact_;
  return r;
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), token);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Symbol>(it - symbols_.begin());
}

Symbol Alphabet::at(std::string_view token) const {
  if (auto s = find(token)) return *s;
  throw Error(ErrorCode::SymbolNotInAlphabet, "'" + std::string(token) + "'");
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  if (compact_ && text.find(' ') == std::string_view::npos) {
    for (char c : text) w.push_back(at(std::string_view(&c, 1)));
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(at(tok));
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact_ && i > 0) out += ' ';
    out += name(w[i]);
  }
  return out;
}

std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t min_len, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = min_len; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      out.push_back(w);
      std::size_t i = len;
      while (i > 0) {
        --i;
        if (static_cast<std::size_t>(++w[i]) < alphabet_size) break;
        w[i] = 0;
        if (i == 0) goto next_len;
      }
      if (len == 0) break;
    }
  next_len:;
  }
  return out;
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Word power(const Word& u, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.insert(w.end(), u.begin(), u.end());
  return w;
}

}  // namespace twfo
