#include "twfo/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "twfo/error.hpp"

namespace twfo {
namespace {

// ---------------------------------------------------------------- writing

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + xs[i];
  return out;
}

std::vector<std::string> symbols(const Alphabet& a) {
  std::vector<std::string> out;
  for (Symbol s = 0; s < static_cast<Symbol>(a.size()); ++s) out.push_back(a.name(s));
  return out;
}

std::string production(const Alphabet& out, const Word& w) { return w.empty() ? "-" : out.format(w); }

std::string direction(int d) { return d > 0 ? "+1" : d < 0 ? "-1" : "0"; }

std::vector<std::string> finals_of(const std::vector<std::string>& names, const std::vector<bool>& finals) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < names.size(); ++q)
    if (finals[q]) out.push_back(names[q]);
  return out;
}

void header(std::ostream& os, const char* kind, const std::string& name) {
  os << "type: " << kind << '\n';
  if (!name.empty()) os << "name: " << name << '\n';
}

void machine_header(std::ostream& os, const std::vector<std::string>& states, int initial, const std::vector<bool>& finals) {
  os << "states: " << join(states) << '\n';
  os << "initial: " << states[static_cast<std::size_t>(initial)] << '\n';
  os << "final: " << join(finals_of(states, finals)) << '\n';
}

// Two-way rows, with or without productions (monoid automata omit them).
void twoway_rows(std::ostream& os, const TwoWayTransducer& t, bool productions) {
  for (int q = 0; q < t.num_states(); ++q)
    for (int s = 0; s < Tape::width(t.input()); ++s) {
      const auto& mv = t.at(q, s);
      if (!mv) continue;
      os << t.state_names()[static_cast<std::size_t>(q)] << ' ' << Tape::name(t.input(), s) << " -> "
         << t.state_names()[static_cast<std::size_t>(mv->target)];
      if (productions) os << " / " << production(t.output(), mv->production);
      os << ' ' << direction(mv->dir) << '\n';
    }
}

void collect(const Formula& f, std::map<std::string, MonoidRef>& out) {
  if (!f) return;
  if (f->monoid) {
    auto [it, fresh] = out.emplace(f->monoid->name, f->monoid);
    if (!fresh && it->second != f->monoid)
      throw Error(ErrorCode::SemanticError, "two different monoids named '" + f->monoid->name + "'");
  }
  for (const auto& c : f->children) collect(c, out);
}

TwoWayTransducer automaton_machine(const InputAutomaton& a) {
  std::vector<std::string> names;
  for (int q = 0; q < a.num_states; ++q) names.push_back(std::to_string(q));
  TwoWayTransducer t(a.input, a.input, names, a.initial, a.finals);
  for (int q = 0; q < a.num_states; ++q)
    for (int s = 0; s < Tape::width(a.input); ++s)
      if (const auto& st = a.at(q, s)) t.set(q, s, Move{st->first, st->second, {}});
  return t;
}

void monoid_blocks(std::ostream& os, const std::vector<Formula>& formulas) {
  std::map<std::string, MonoidRef> monoids;
  for (const auto& f : formulas) collect(f, monoids);
  for (const auto& [name, m] : monoids) {
    const TwoWayTransducer t = automaton_machine(m->monoid.automaton());
    os << "monoid " << name << '\n';
    machine_header(os, t.state_names(), t.initial(), t.finals());
    twoway_rows(os, t, false);
    os << "end\n";
  }
}

std::string letter_token(const Dfa& d, int letter) {
  const std::string base = d.base().name(d.base_of(letter));
  return d.bits_of(letter) ? base + ":" + std::to_string(d.bits_of(letter)) : base;
}

bool is_marked(const Alphabet& a) {
  return a.size() >= 2 && a.name(static_cast<Symbol>(a.size() - 2)) == kLeftMarkToken &&
         a.name(static_cast<Symbol>(a.size() - 1)) == kRightMarkToken;
}

Alphabet unmarked(const Alphabet& a) {
  auto s = symbols(a);
  s.resize(s.size() - 2);
  return Alphabet(s);
}

void dfa_body(std::ostream& os, const Dfa& d) {
  os << "states: " << d.num_states() << '\n';
  os << "initial: " << d.initial() << '\n';
  std::vector<std::string> f;
  for (int q = 0; q < d.num_states(); ++q)
    if (d.is_final(q)) f.push_back(std::to_string(q));
  os << "final: " << join(f) << '\n';
  for (int q = 0; q < d.num_states(); ++q)
    for (int l = 0; l < d.num_letters(); ++l) os << q << ' ' << letter_token(d, l) << " -> " << d.step(q, l) << '\n';
}

struct Writer {
  std::ostream& os;
  const std::string& name;

  void operator()(const TwoWayTransducer& t) const {
    header(os, "2wt", name);
    os << "input: " << join(symbols(t.input())) << '\n' << "output: " << join(symbols(t.output())) << '\n';
    machine_header(os, t.state_names(), t.initial(), t.finals());
    twoway_rows(os, t, true);
  }

  void operator()(const SequentialTransducer& t) const {
    header(os, "seq", name);
    os << "input: " << join(symbols(t.input)) << '\n' << "output: " << join(symbols(t.output)) << '\n';
    machine_header(os, t.states, t.initial, t.finals);
    for (int q = 0; q < t.num_states(); ++q)
      for (Symbol a = 0; a < static_cast<Symbol>(t.input.size()); ++a)
        if (const auto& tr = t.at(q, a))
          os << t.states[static_cast<std::size_t>(q)] << ' ' << t.input.name(a) << " -> "
             << t.states[static_cast<std::size_t>(tr->target)] << " / " << production(t.output, tr->production) << '\n';
  }

  void operator()(const FoTransduction& t) const {
    header(os, "fot", name);
    os << "input: " << join(symbols(t.input)) << '\n' << "output: " << join(symbols(t.output)) << '\n';
    std::vector<Formula> all{t.domain};
    all.insert(all.end(), t.position.begin(), t.position.end());
    all.insert(all.end(), t.order.begin(), t.order.end());
    monoid_blocks(os, all);
    os << "copies: " << join(t.copies) << '\n';
    os << "dom: " << to_string(t.domain) << '\n';
    for (int c = 0; c < t.num_copies(); ++c)
      for (Symbol b = 0; b < static_cast<Symbol>(t.output.size()); ++b)
        if (t.pos(c, b)) os << "pos " << t.copies[static_cast<std::size_t>(c)] << ' ' << t.output.name(b) << ": " << to_string(t.pos(c, b)) << '\n';
    for (int c = 0; c < t.num_copies(); ++c)
      for (int d = 0; d < t.num_copies(); ++d)
        if (t.le(c, d))
          os << "le " << t.copies[static_cast<std::size_t>(c)] << ' ' << t.copies[static_cast<std::size_t>(d)] << ": "
             << to_string(t.le(c, d)) << '\n';
  }

  void operator()(const SfLookAroundTransducer& t) const {
    header(os, "sf-la", name);
    os << "input: " << join(symbols(t.input)) << '\n' << "output: " << join(symbols(t.output)) << '\n';
    machine_header(os, t.states, t.initial, t.finals);
    for (std::size_t i = 0; i < t.languages.size(); ++i) {
      os << "lang L" << i << '\n';
      dfa_body(os, t.languages[i]);
      os << "end\n";
    }
    for (const auto& tr : t.transitions)
      os << t.states[static_cast<std::size_t>(tr.from)] << " L" << tr.test.prefix << ' ' << Tape::name(t.input, tr.test.letter)
         << " L" << tr.test.suffix << " -> " << t.states[static_cast<std::size_t>(tr.to)] << " / "
         << production(t.output, tr.production) << ' ' << direction(tr.move) << '\n';
  }

  void operator()(const FoLookAroundTransducer& t) const {
    header(os, "fo-la", name);
    os << "input: " << join(symbols(t.input)) << '\n' << "output: " << join(symbols(t.output)) << '\n';
    std::vector<Formula> all;
    for (const auto& tr : t.transitions) all.insert(all.end(), {tr.test, tr.move});
    monoid_blocks(os, all);
    machine_header(os, t.states, t.initial, t.finals);
    for (const auto& tr : t.transitions)
      os << t.states[static_cast<std::size_t>(tr.from)] << " -> " << t.states[static_cast<std::size_t>(tr.to)] << " / "
         << production(t.output, tr.production) << " | " << to_string(tr.test) << " | " << to_string(tr.move) << '\n';
  }

  void operator()(const Dfa& d) const {
    header(os, "dfa", name);
    const bool marked = is_marked(d.base());
    os << "input: " << join(symbols(marked ? unmarked(d.base()) : d.base())) << '\n';
    if (marked) os << "marked: yes\n";
    os << "tracks: " << d.tracks() << '\n';
    dfa_body(os, d);
  }

  void operator()(const FormulaArtifact& f) const {
    header(os, "formula", name);
    os << "input: " << join(symbols(f.input)) << '\n';
    monoid_blocks(os, {f.formula});
    os << "formula: " << to_string(f.formula) << '\n';
  }

  void operator()(const MonoidArtifact& m) const {
    header(os, "monoid", name);
    const auto& t = m.automaton;
    os << "input: " << join(symbols(t.input())) << '\n';
    machine_header(os, t.state_names(), t.initial(), t.finals());
    twoway_rows(os, t, false);
  }
};

// ---------------------------------------------------------------- reading

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::string text;  // comment stripped, right-trimmed

  [[noreturn]] void fail(std::size_t col, const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(number) + ", column " + std::to_string(col) + ": " + what);
  }
  [[noreturn]] void semantic(const std::string& what) const {
    throw Error(ErrorCode::SemanticError, "line " + std::to_string(number) + ": " + what);
  }

  std::vector<Token> tokens(std::size_t from = 0, std::size_t to = std::string::npos) const {
    std::vector<Token> out;
    to = std::min(to, text.size());
    for (std::size_t i = from; i < to;) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < to && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({text.substr(i, j - i), i + 1});
      i = j;
    }
    return out;
  }

  /// Runs `f`, tagging model errors with this line.
  template <class F>
  auto guard(F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SyntaxError && e.detail().rfind("line ", 0) == 0) throw;
      throw Error(e.code(), "line " + std::to_string(number) + ": " + e.detail());
    }
  }
};

struct Header {
  Line line;
  std::string value;
  std::size_t col;  // of the value
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  for (std::size_t i = 0; i <= text.size();) {
    std::size_t j = text.find('\n', i);
    if (j == std::string_view::npos) j = text.size();
    std::string s(text.substr(i, j - i));
    ++number;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    if (lead < s.size()) out.push_back(Line{number, s});
    i = j + 1;
  }
  return out;
}

/// `key: value` with a single-word key.
std::optional<Header> as_header(const Line& l) {
  const auto colon = l.text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::size_t b = 0;
  while (std::isspace(static_cast<unsigned char>(l.text[b]))) ++b;
  const std::string key = l.text.substr(b, colon - b);
  if (key.empty() || key.find_first_of(" \t") != std::string::npos) return std::nullopt;
  std::size_t v = colon + 1;
  while (v < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[v]))) ++v;
  return Header{l, l.text.substr(v), v + 1};
}

std::string header_key(const Line& l) {
  const auto colon = l.text.find(':');
  std::size_t b = 0;
  while (std::isspace(static_cast<unsigned char>(l.text[b]))) ++b;
  return l.text.substr(b, colon - b);
}

// Headers, blocks and body lines of one section (the file or a block).
struct Section {
  std::map<std::string, Header> headers;
  std::vector<std::pair<Line, std::vector<Line>>> blocks;  // opening line, contents
  std::vector<Line> body;
  std::size_t last_line = 0;

  const Header& need(const std::string& key) const {
    auto it = headers.find(key);
    if (it == headers.end())
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(last_line) + ", column 1: missing '" + key + ":' header");
    return it->second;
  }
  const Header* find(const std::string& key) const {
    auto it = headers.find(key);
    return it == headers.end() ? nullptr : &it->second;
  }
};

bool opens_block(const Line& l) {
  const auto t = l.tokens();
  return t.size() == 2 && (t[0].text == "monoid" || t[0].text == "lang") && l.text.find(':') == std::string::npos;
}

Section sectionize(const std::vector<Line>& lines, std::size_t last_line) {
  Section s;
  s.last_line = last_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (opens_block(l)) {
      std::vector<Line> inner;
      std::size_t j = i + 1;
      while (j < lines.size() && lines[j].tokens().front().text != "end") inner.push_back(lines[j++]);
      if (j == lines.size()) l.fail(1, "block without 'end'");
      if (lines[j].tokens().size() != 1) lines[j].fail(lines[j].tokens()[1].col, "unexpected text after 'end'");
      s.blocks.emplace_back(l, std::move(inner));
      i = j;
      continue;
    }
    auto h = as_header(l);
    // pos/le lines of a transduction have a multi-word key and stay in the body.
    if (h && !s.headers.emplace(header_key(l), *h).second) l.fail(1, "duplicate header '" + header_key(l) + "'");
    if (!h) s.body.push_back(l);
  }
  return s;
}

std::vector<std::string> words(const Header& h) {
  std::vector<std::string> out;
  for (const auto& t : h.line.tokens(h.col - 1)) out.push_back(t.text);
  return out;
}

Alphabet alphabet(const Header& h) {
  return h.line.guard([&] { return Alphabet(words(h)); });
}

int index_of(const std::vector<std::string>& names, const Token& t, const Line& l, const char* what) {
  auto it = std::find(names.begin(), names.end(), t.text);
  if (it == names.end()) l.semantic(std::string("unknown ") + what + " '" + t.text + "'");
  return static_cast<int>(it - names.begin());
}

int number(const Token& t, const Line& l) {
  int v = 0;
  std::string_view s = t.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) l.fail(t.col, "expected a number, got '" + t.text + "'");
  return v;
}

int parse_direction(const Token& t, const Line& l) {
  if (t.text == "-1") return -1;
  if (t.text == "0") return 0;
  if (t.text == "+1" || t.text == "1") return 1;
  l.fail(t.col, "move must be -1, 0 or +1");
}

Word parse_production(const std::vector<Token>& toks, const Alphabet& out, const Line& l) {
  if (toks.empty()) l.fail(l.text.size() + 1, "missing production");
  if (toks.size() == 1 && toks[0].text == "-") return {};
  std::string text;
  for (const auto& t : toks) text += (text.empty() ? "" : " ") + t.text;
  return l.guard([&] { return out.parse_word(text); });
}

struct Machine {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> finals;
};

Machine machine(const Section& s) {
  Machine m;
  m.states = words(s.need("states"));
  const auto& init = s.need("initial");
  const auto it = init.line.tokens(init.col - 1);
  if (it.size() != 1) init.line.fail(init.col, "expected one initial state");
  m.initial = index_of(m.states, it[0], init.line, "state");
  m.finals.assign(m.states.size(), false);
  const auto& fin = s.need("final");
  for (const auto& t : fin.line.tokens(fin.col - 1)) m.finals[static_cast<std::size_t>(index_of(m.states, t, fin.line, "state"))] = true;
  return m;
}

/// `q sym -> q' / prod move`, or `q sym -> q' move` when productions are off.
TwoWayTransducer twoway(const Section& s, const Alphabet& in, const Alphabet& out, bool productions) {
  const Machine m = machine(s);
  TwoWayTransducer t = s.need("states").line.guard([&] { return TwoWayTransducer(in, out, m.states, m.initial, m.finals); });
  for (const Line& l : s.body) {
    const auto tok = l.tokens();
    const std::size_t min = productions ? 7 : 5;
    if (tok.size() < min || tok[2].text != "->") l.fail(1, productions ? "expected 'q sym -> q' / prod move'" : "expected 'q sym -> q' move'");
    if (productions && tok[4].text != "/") l.fail(tok[4].col, "expected '/'");
    if (!productions && tok.size() != 5) l.fail(tok[5].col, "unexpected text");
    const int q = index_of(m.states, tok[0], l, "state");
    const int sym = l.guard([&] { return Tape::parse(in, tok[1].text); });
    const int to = index_of(m.states, tok[3], l, "state");
    Word prod = productions ? parse_production({tok.begin() + 5, tok.end() - 1}, out, l) : Word{};
    const int dir = parse_direction(tok.back(), l);
    if (t.at(q, sym)) l.semantic("second transition for state '" + tok[0].text + "' on '" + tok[1].text + "'");
    l.guard([&] {
      t.set(q, sym, Move{to, dir, std::move(prod)});
      return 0;
    });
  }
  return t;
}

Dfa dfa(const Section& s, const Alphabet& base, int tracks) {
  const auto& st = s.need("states");
  const auto count = st.line.tokens(st.col - 1);
  if (count.size() != 1) st.line.fail(st.col, "expected a state count");
  const int n = number(count[0], st.line);
  if (n <= 0) st.line.semantic("a DFA needs at least one state");
  auto state = [&](const Token& t, const Line& l) {
    const int q = number(t, l);
    if (q < 0 || q >= n) l.semantic("state " + t.text + " out of range");
    return q;
  };
  const auto& init = s.need("initial");
  const auto it = init.line.tokens(init.col - 1);
  if (it.size() != 1) init.line.fail(init.col, "expected one initial state");
  const int initial = state(it[0], init.line);
  std::vector<bool> finals(static_cast<std::size_t>(n), false);
  const auto& fin = s.need("final");
  for (const auto& t : fin.line.tokens(fin.col - 1)) finals[static_cast<std::size_t>(state(t, fin.line))] = true;
  const int letters = static_cast<int>(base.size()) << tracks;
  std::vector<int> table(static_cast<std::size_t>(n * letters), -1);
  for (const Line& l : s.body) {
    const auto tok = l.tokens();
    if (tok.size() != 4 || tok[2].text != "->") l.fail(1, "expected 'q letter -> q''");
    const int q = state(tok[0], l);
    std::string sym = tok[1].text;
    unsigned bits = 0;
    if (auto c = sym.find(':'); c != std::string::npos) {
      bits = static_cast<unsigned>(number(Token{sym.substr(c + 1), tok[1].col + c + 1}, l));
      sym.erase(c);
    }
    if (bits >= (1u << tracks)) l.semantic("track bits out of range");
    const auto a = base.find(sym);
    if (!a) l.semantic("letter '" + sym + "' not in the alphabet");
    auto& cell = table[static_cast<std::size_t>(q * letters) + bits * base.size() + static_cast<std::size_t>(*a)];
    if (cell >= 0) l.semantic("second transition on '" + tok[1].text + "'");
    cell = state(tok[3], l);
  }
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] < 0)
      throw Error(ErrorCode::SemanticError, "line " + std::to_string(s.last_line) + ": DFA transition missing for state " +
                                                std::to_string(i / static_cast<std::size_t>(letters)));
  return Dfa(base, tracks, n, initial, std::move(finals), std::move(table));
}

Formula formula(const Line& l, std::size_t col, const std::string& text, const MonoidRegistry& reg) {
  try {
    return parse_formula(text, reg);
  } catch (const Error& e) {
    constexpr std::string_view prefix = "formula offset ";
    std::size_t offset = 0;
    if (e.code() == ErrorCode::SyntaxError && e.detail().rfind(prefix, 0) == 0) {
      const char* b = e.detail().data() + prefix.size();
      auto [p, ec] = std::from_chars(b, e.detail().data() + e.detail().size(), offset);
      l.fail(col + offset, p[0] == ':' ? std::string(p + 2) : e.detail());
    }
    throw Error(e.code(), "line " + std::to_string(l.number) + ": " + e.detail());
  }
}

void read_monoids(const Section& s, const Alphabet& in, MonoidRegistry& reg) {
  for (const auto& [open, lines] : s.blocks) {
    const auto tok = open.tokens();
    if (tok[0].text != "monoid") open.fail(1, "unexpected 'lang' block");
    const Section inner = sectionize(lines, open.number);
    const TwoWayTransducer t = twoway(inner, in, in, false);
    if (reg.contains(tok[1].text)) open.semantic("duplicate monoid '" + tok[1].text + "'");
    open.guard([&] {
      reg.add(certify_monoid(tok[1].text, transition_monoid(t)));
      return 0;
    });
  }
}

void expect_no_blocks(const Section& s) {
  if (!s.blocks.empty()) s.blocks.front().first.fail(1, "blocks are not allowed in this artifact");
}

void expect_no_body(const Section& s) {
  if (!s.body.empty()) s.body.front().fail(1, "unexpected line");
}

SequentialTransducer read_seq(const Section& s) {
  expect_no_blocks(s);
  const Alphabet in = alphabet(s.need("input")), out = alphabet(s.need("output"));
  const Machine m = machine(s);
  SequentialTransducer t = s.need("states").line.guard([&] { return SequentialTransducer(in, out, m.states, m.initial, m.finals); });
  for (const Line& l : s.body) {
    const auto tok = l.tokens();
    if (tok.size() < 6 || tok[2].text != "->" || tok[4].text != "/") l.fail(1, "expected 'q a -> q' / prod'");
    const int q = index_of(m.states, tok[0], l, "state");
    const Symbol a = l.guard([&] { return in.at(tok[1].text); });
    if (t.at(q, a)) l.semantic("second transition for state '" + tok[0].text + "' on '" + tok[1].text + "'");
    Word prod = parse_production({tok.begin() + 5, tok.end()}, out, l);
    t.set(q, a, index_of(m.states, tok[3], l, "state"), std::move(prod));
  }
  s.need("states").line.guard([&] {
    t.validate();
    return 0;
  });
  return t;
}

FoTransduction read_fot(const Section& s) {
  const Alphabet in = alphabet(s.need("input")), out = alphabet(s.need("output"));
  MonoidRegistry reg;
  read_monoids(s, in, reg);
  const auto& copies = s.need("copies");
  FoTransduction t = copies.line.guard([&] { return FoTransduction(in, out, words(copies)); });
  const auto& dom = s.need("dom");
  t.domain = formula(dom.line, dom.col, dom.value, reg);
  for (const Line& l : s.body) {
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) l.fail(1, "expected 'pos c b: formula' or 'le c d: formula'");
    const auto tok = l.tokens(0, colon);
    if (tok.size() != 3 || (tok[0].text != "pos" && tok[0].text != "le")) l.fail(1, "expected 'pos c b:' or 'le c d:'");
    std::size_t v = colon + 1;
    while (v < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[v]))) ++v;
    const Formula f = formula(l, v + 1, l.text.substr(v), reg);
    const int c = index_of(t.copies, tok[1], l, "copy");
    if (tok[0].text == "pos") {
      const Symbol b = l.guard([&] { return out.at(tok[2].text); });
      if (t.pos(c, b)) l.semantic("duplicate position formula");
      t.set_pos(c, b, f);
    } else {
      const int d = index_of(t.copies, tok[2], l, "copy");
      if (t.le(c, d)) l.semantic("duplicate order formula");
      t.set_le(c, d, f);
    }
  }
  s.need("dom").line.guard([&] {
    t.validate();
    return 0;
  });
  return t;
}

SfLookAroundTransducer read_sf(const Section& s) {
  SfLookAroundTransducer t;
  t.input = alphabet(s.need("input"));
  t.output = alphabet(s.need("output"));
  const Machine m = machine(s);
  t.states = m.states;
  t.initial = m.initial;
  t.finals = m.finals;
  std::map<std::string, int> langs;
  for (const auto& [open, lines] : s.blocks) {
    const auto tok = open.tokens();
    if (tok[0].text != "lang") open.fail(1, "unexpected 'monoid' block");
    if (langs.count(tok[1].text)) open.semantic("duplicate language '" + tok[1].text + "'");
    const Section inner = sectionize(lines, open.number);
    // Pool indices follow declaration order so serialization round-trips.
    langs[tok[1].text] = static_cast<int>(t.languages.size());
    t.languages.push_back(dfa(inner, t.input, 0));
  }
  auto lang = [&](const Token& tk, const Line& l) {
    auto it = langs.find(tk.text);
    if (it == langs.end()) l.semantic("unknown language '" + tk.text + "'");
    return it->second;
  };
  for (const Line& l : s.body) {
    const auto tok = l.tokens();
    if (tok.size() < 9 || tok[4].text != "->" || tok[6].text != "/") l.fail(1, "expected 'q Lp a Ls -> q' / prod move'");
    SfLaTransition tr;
    tr.from = index_of(t.states, tok[0], l, "state");
    tr.test = SfTest{lang(tok[1], l), l.guard([&] { return Tape::parse(t.input, tok[2].text); }), lang(tok[3], l)};
    tr.to = index_of(t.states, tok[5], l, "state");
    tr.production = parse_production({tok.begin() + 7, tok.end() - 1}, t.output, l);
    tr.move = parse_direction(tok.back(), l);
    t.transitions.push_back(std::move(tr));
  }
  s.need("states").line.guard([&] {
    t.validate();
    return 0;
  });
  return t;
}

FoLookAroundTransducer read_fo_la(const Section& s) {
  FoLookAroundTransducer t;
  t.input = alphabet(s.need("input"));
  t.output = alphabet(s.need("output"));
  MonoidRegistry reg;
  read_monoids(s, t.input, reg);
  const Machine m = machine(s);
  t.states = m.states;
  t.initial = m.initial;
  t.finals = m.finals;
  for (const Line& l : s.body) {
    const auto bar = l.text.find('|');
    const auto bar2 = bar == std::string::npos ? bar : l.text.find('|', bar + 1);
    if (bar2 == std::string::npos) l.fail(1, "expected 'q -> q' / prod | test | move'");
    const auto tok = l.tokens(0, bar);
    if (tok.size() < 5 || tok[1].text != "->" || tok[3].text != "/") l.fail(1, "expected 'q -> q' / prod'");
    FoLaTransition tr;
    tr.from = index_of(t.states, tok[0], l, "state");
    tr.to = index_of(t.states, tok[2], l, "state");
    tr.production = parse_production({tok.begin() + 4, tok.end()}, t.output, l);
    auto part = [&](std::size_t from, std::size_t to) {
      while (from < to && std::isspace(static_cast<unsigned char>(l.text[from]))) ++from;
      while (to > from && std::isspace(static_cast<unsigned char>(l.text[to - 1]))) --to;
      return formula(l, from + 1, l.text.substr(from, to - from), reg);
    };
    tr.test = part(bar + 1, bar2);
    tr.move = part(bar2 + 1, l.text.size());
    t.transitions.push_back(std::move(tr));
  }
  s.need("states").line.guard([&] {
    t.validate();
    return 0;
  });
  return t;
}

Dfa read_dfa(const Section& s) {
  expect_no_blocks(s);
  Alphabet base = alphabet(s.need("input"));
  if (const Header* m = s.find("marked")) {
    if (m->value != "yes" && m->value != "no") m->line.fail(m->col, "expected 'yes' or 'no'");
    if (m->value == "yes") base = Alphabet::with_endmarkers(base);
  }
  int tracks = 0;
  if (const Header* h = s.find("tracks")) {
    const auto tok = h->line.tokens(h->col - 1);
    if (tok.size() != 1) h->line.fail(h->col, "expected a track count");
    tracks = number(tok[0], h->line);
    if (tracks < 0 || tracks > 8) h->line.semantic("track count out of range");
  }
  return dfa(s, base, tracks);
}

FormulaArtifact read_formula(const Section& s) {
  expect_no_body(s);
  FormulaArtifact f{alphabet(s.need("input")), nullptr};
  MonoidRegistry reg;
  read_monoids(s, f.input, reg);
  const auto& h = s.need("formula");
  f.formula = formula(h.line, h.col, h.value, reg);
  return f;
}

MonoidArtifact read_monoid(const Section& s) {
  expect_no_blocks(s);
  const Alphabet in = alphabet(s.need("input"));
  TwoWayTransducer t = twoway(s, in, in, false);
  return make_monoid_artifact(t);
}

const std::set<std::string>& allowed_headers(const std::string& kind) {
  static const std::map<std::string, std::set<std::string>> table{
      {"2wt", {"type", "name", "input", "output", "states", "initial", "final"}},
      {"seq", {"type", "name", "input", "output", "states", "initial", "final"}},
      {"fot", {"type", "name", "input", "output", "copies", "dom"}},
      {"sf-la", {"type", "name", "input", "output", "states", "initial", "final"}},
      {"fo-la", {"type", "name", "input", "output", "states", "initial", "final"}},
      {"dfa", {"type", "name", "input", "marked", "tracks", "states", "initial", "final"}},
      {"formula", {"type", "name", "input", "formula"}},
      {"monoid", {"type", "name", "input", "states", "initial", "final"}},
  };
  static const std::set<std::string> none;
  auto it = table.find(kind);
  return it == table.end() ? none : it->second;
}

}  // namespace

const char* kind_name(const ArtifactValue& v) {
  static constexpr const char* names[] = {"2wt", "seq", "fot", "sf-la", "fo-la", "dfa", "formula", "monoid"};
  return names[v.index()];
}

MonoidArtifact make_monoid_artifact(const TwoWayTransducer& t) {
  TwoWayTransducer a(t.input(), t.input(), t.state_names(), t.initial(), t.finals());
  for (int q = 0; q < t.num_states(); ++q)
    for (int s = 0; s < Tape::width(t.input()); ++s)
      if (const auto& mv = t.at(q, s)) a.set(q, s, Move{mv->target, mv->dir, {}});
  TransitionMonoid m = transition_monoid(a);
  return MonoidArtifact{std::move(a), std::move(m)};
}

std::string serialize(const ArtifactValue& v, const std::string& name) {
  std::ostringstream os;
  std::visit(Writer{os, name}, v);
  return os.str();
}

std::string serialize(const Artifact& a) { return serialize(a.value, a.name); }

Artifact parse_artifact(std::string_view text, std::string source) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "line 1, column 1: empty artifact");
  const auto first = as_header(lines.front());
  if (!first || header_key(lines.front()) != "type") lines.front().fail(1, "expected 'type:' first");
  const std::string kind = first->value;
  const auto& allowed = allowed_headers(kind);
  if (allowed.empty()) lines.front().fail(first->col, "unknown artifact type '" + kind + "'");
  const Section s = sectionize(lines, lines.back().number);
  for (const auto& [key, h] : s.headers)
    if (!allowed.count(key)) h.line.fail(1, "unknown header '" + key + "' for " + kind);

  Artifact a;
  a.source = std::move(source);
  if (const Header* n = s.find("name")) a.name = n->value;
  if (kind == "2wt") {
    expect_no_blocks(s);
    a.value = twoway(s, alphabet(s.need("input")), alphabet(s.need("output")), true);
  } else if (kind == "seq") {
    a.value = read_seq(s);
  } else if (kind == "fot") {
    a.value = read_fot(s);
  } else if (kind == "sf-la") {
    a.value = read_sf(s);
  } else if (kind == "fo-la") {
    a.value = read_fo_la(s);
  } else if (kind == "dfa") {
    a.value = read_dfa(s);
  } else if (kind == "formula") {
    a.value = read_formula(s);
  } else {
    a.value = read_monoid(s);
  }
  return a;
}

Artifact load_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SemanticError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Artifact a = parse_artifact(buf.str(), path);
  if (a.name.empty()) a.name = std::filesystem::path(path).stem().string();
  return a;
}

}  // namespace twfo
