#include <cctype>
#include <sstream>

#include "twfo/error.hpp"
#include "twfo/formula.hpp"

namespace twfo {
namespace {

void print(std::ostream& os, const FormulaNode& f) {
  switch (f.kind) {
    case FormulaKind::True: os << "(true)"; return;
    case FormulaKind::Letter: os << "(letter " << f.symbol << ' ' << f.x << ')'; return;
    case FormulaKind::Le: os << "(le " << f.x << ' ' << f.y << ')'; return;
    case FormulaKind::FactorClass:
      os << "(class " << f.monoid->name << ' ' << f.element << ' ' << f.x << ' ' << f.y << ')';
      return;
    case FormulaKind::PrefixClass: os << "(pclass " << f.monoid->name << ' ' << f.element << ' ' << f.x << ')'; return;
    case FormulaKind::SuffixClass: os << "(sclass " << f.monoid->name << ' ' << f.element << ' ' << f.x << ')'; return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      os << (f.kind == FormulaKind::Exists ? "(exists " : "(forall ") << f.x << ' ';
      print(os, *f.children.front());
      os << ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Not:
      os << (f.kind == FormulaKind::And ? "(and" : f.kind == FormulaKind::Or ? "(or" : "(not");
      for (const auto& c : f.children) {
        os << ' ';
        print(os, *c);
      }
      os << ')';
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const MonoidRegistry& registry) : text_(text), registry_(registry) {}

  Formula parse_all() {
    Formula f = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  std::string_view text_;
  const MonoidRegistry& registry_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, "formula offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  int number() {
    std::string w = word();
    try {
      std::size_t used = 0;
      int v = std::stoi(w, &used);
      if (used != w.size()) fail("expected an element number");
      return v;
    } catch (const std::logic_error&) {
      fail("expected an element number");
    }
  }

  Formula parse() {
    expect('(');
    const std::string head = word();
    Formula f;
    if (head == "true") {
      f = fo::top();
    } else if (head == "letter") {
      auto a = word();
      f = fo::letter(a, word());
    } else if (head == "le") {
      auto x = word();
      f = fo::le(x, word());
    } else if (head == "class" || head == "pclass" || head == "sclass") {
      auto m = registry_.get(word());
      int e = number();
      auto x = word();
      if (head == "class") f = fo::factor_class(m, e, x, word());
      else if (head == "pclass") f = fo::prefix_class(m, e, x);
      else f = fo::suffix_class(m, e, x);
    } else if (head == "and" || head == "or") {
      std::vector<Formula> cs;
      while (!peek(')')) cs.push_back(parse());
      if (cs.empty()) f = head == "and" ? fo::top() : fo::bottom();
      else f = head == "and" ? fo::conj(std::move(cs)) : fo::disj(std::move(cs));
    } else if (head == "not") {
      f = fo::neg(parse());
    } else if (head == "exists" || head == "forall") {
      auto x = word();
      f = head == "exists" ? fo::exists(x, parse()) : fo::forall(x, parse());
    } else {
      fail("unknown connective '" + head + "'");
    }
    expect(')');
    return f;
  }
};

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, *f);
  return os.str();
}

Formula parse_formula(std::string_view text, const MonoidRegistry& registry) { return Parser(text, registry).parse_all(); }

}  // namespace twfo
