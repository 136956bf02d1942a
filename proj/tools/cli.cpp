#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>

#include "twfo/equiv.hpp"
#include "twfo/error.hpp"
#include "twfo/io.hpp"
#include "twfo/translate.hpp"

namespace twfo::cli {
namespace {

using Json = nlohmann::ordered_json;

template <class T>
const T& expect(const Artifact& a) {
  if (const T* v = std::get_if<T>(&a.value)) return *v;
  throw Error(ErrorCode::SemanticError, "'" + a.source + "' is a " + kind_name(a.value) + " artifact");
}

// Monoid commands accept a machine or a monoid file.
TransitionMonoid monoid_of(const Artifact& a, std::vector<std::string>& states) {
  if (const auto* m = std::get_if<MonoidArtifact>(&a.value)) {
    states = m->automaton.state_names();
    return m->monoid;
  }
  const auto& t = expect<TwoWayTransducer>(a);
  states = t.state_names();
  return transition_monoid(t);
}

Json pairs(const BehaviorProfile& p, Side from, Side to, const std::vector<std::string>& states) {
  Json out = Json::array();
  for (auto [x, y] : p.behavior(from, to))
    out.push_back({states[static_cast<std::size_t>(x)], states[static_cast<std::size_t>(y)]});
  return out;
}

std::string set_text(const Json& pairs) {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    s += (i ? ", (" : "(") + pairs[i][0].get<std::string>() + "," + pairs[i][1].get<std::string>() + ")";
  return s + "}";
}

Json rendered(const Rendered& r) {
  if (!r) return nullptr;
  std::string s;
  for (const auto& t : *r) s += t;
  return s;
}

struct Context {
  std::ostream& out;
  bool json = false;
  std::string output_path;

  void emit(const Json& j, const std::string& text) const { out << (json ? j.dump(2) : text) << '\n'; }

  void artifact(const ArtifactValue& v, const std::string& name, const std::string& command) const {
    const std::string text = serialize(v, name);
    if (!output_path.empty()) {
      std::ofstream f(output_path);
      if (!f) throw Error(ErrorCode::SemanticError, "cannot write '" + output_path + "'");
      f << text;
    }
    if (json) {
      out << Json{{"command", command}, {"type", kind_name(v)}, {"artifact", text}}.dump(2) << '\n';
    } else if (output_path.empty()) {
      out << text;
    }
  }
};

int simulate_cmd(const Context& c, const std::string& path, const std::string& input, bool trace) {
  const Artifact a = load_artifact(path);
  if (const auto* t = std::get_if<TwoWayTransducer>(&a.value)) {
    const Word w = t->input().parse_word(input);
    const SimResult r = simulate(*t, w);
    Json j{{"command", "simulate"}, {"input", input}, {"defined", r.output.has_value()},
           {"output", r.output ? Json(t->output().format(*r.output)) : Json(nullptr)}, {"halt", to_string(r.halt)}};
    std::string text = r.output ? t->output().format(*r.output) : std::string("undefined (") + to_string(r.halt) + ")";
    if (trace) {
      const std::string run = format_run(*t, w, r.run);
      j["trace"] = run;
      text += "\n" + run;
      while (!text.empty() && text.back() == '\n') text.pop_back();
    }
    c.emit(j, text);
    return r.output ? 0 : 1;
  }
  const WordFunction f = word_function(a.value);
  const Rendered r = f.apply(f.input.parse_word(input));
  c.emit(Json{{"command", "simulate"}, {"input", input}, {"defined", r.has_value()}, {"output", rendered(r)}},
         r ? rendered(r).get<std::string>() : "undefined");
  return r ? 0 : 1;
}

int behaviors_cmd(const Context& c, const std::string& path, const std::string& input) {
  const Artifact a = load_artifact(path);
  const auto& t = expect<TwoWayTransducer>(a);
  const BehaviorProfile p = behaviors(t, t.input().parse_word(input));
  const auto& s = t.state_names();
  Json j{{"command", "behaviors"},
         {"input", input},
         {"ll", pairs(p, kLeft, kLeft, s)},
         {"lr", pairs(p, kLeft, kRight, s)},
         {"rl", pairs(p, kRight, kLeft, s)},
         {"rr", pairs(p, kRight, kRight, s)}};
  c.emit(j, "bh_ll = " + set_text(j["ll"]) + "\nbh_lr = " + set_text(j["lr"]) + "\nbh_rl = " + set_text(j["rl"]) +
                "\nbh_rr = " + set_text(j["rr"]));
  return 0;
}

int monoid_cmd(const Context& c, const std::string& path, const std::vector<std::string>& same) {
  std::vector<std::string> states;
  const TransitionMonoid m = monoid_of(load_artifact(path), states);
  Json j{{"command", "monoid"}, {"elements", m.size()}, {"classes", Json::array()}, {"checks", Json::array()}};
  for (int e = 0; e < static_cast<int>(m.size()); ++e) {
    const BehaviorProfile& p = m.element(e);
    const PowerData d = power_data(m, e);
    j["classes"].push_back(Json{{"element", e},
                                {"representative", m.alphabet().format(m.representative(e))},
                                {"ll", pairs(p, kLeft, kLeft, states)},
                                {"lr", pairs(p, kLeft, kRight, states)},
                                {"rl", pairs(p, kRight, kLeft, states)},
                                {"rr", pairs(p, kRight, kRight, states)},
                                {"threshold", d.threshold},
                                {"period", d.period}});
  }
  std::string text = dump_monoid(m, states) + std::to_string(m.size()) + " elements";
  bool all = true;
  for (const std::string& pair : same) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SyntaxError, "--same expects u=v, got '" + pair + "'");
    const std::string u = pair.substr(0, eq), v = pair.substr(eq + 1);
    const int cu = class_of(m, m.alphabet().parse_word(u)), cv = class_of(m, m.alphabet().parse_word(v));
    all = all && cu == cv;
    j["checks"].push_back(Json{{"u", u}, {"v", v}, {"u_class", cu}, {"v_class", cv}, {"same", cu == cv}});
    text += "\n" + u + (cu == cv ? " ~ " : " !~ ") + v + " (e" + std::to_string(cu) + ", e" + std::to_string(cv) + ")";
  }
  c.emit(j, text);
  return all ? 0 : 1;
}

int aperiodic_cmd(const Context& c, const std::string& path) {
  std::vector<std::string> states;
  const TransitionMonoid m = monoid_of(load_artifact(path), states);
  const MonoidAperiodicity ap = is_aperiodic(m);
  Json j{{"command", "aperiodic"}, {"aperiodic", ap.aperiodic}, {"elements", m.size()}};
  std::string text;
  if (ap.aperiodic) {
    j["index"] = *ap.index;
    text = "aperiodic (" + std::to_string(m.size()) + " elements, index " + std::to_string(*ap.index) + ")";
  } else {
    const PowerData d = power_data(m, *ap.witness);
    const std::string rep = m.alphabet().format(m.representative(*ap.witness));
    j["witness"] = Json{{"element", *ap.witness}, {"representative", rep}, {"period", d.period}};
    text = "not aperiodic (" + std::to_string(m.size()) + " elements, witness [" + rep + "] with period " +
           std::to_string(d.period) + ")";
  }
  c.emit(j, text);
  return ap.aperiodic ? 0 : 1;
}

int equiv_cmd(const Context& c, const std::string& x, const std::string& y, std::size_t max_len, std::size_t min_len) {
  const Artifact a = load_artifact(x), b = load_artifact(y);
  const EquivalenceReport r = check_equiv(a.value, b.value, max_len, min_len);
  const Alphabet input = word_function(a.value).input;
  Json j{{"command", "check-equiv"},
         {"verdict", r.equivalent ? "equivalent-up-to-" + std::to_string(max_len) : std::string("counterexample")},
         {"min_len", min_len},
         {"max_len", max_len},
         {"words_tested", r.words_tested}};
  if (!r.equivalent) {
    j["counterexample"] = input.format(*r.counterexample);
    j["left"] = rendered(r.left);
    j["right"] = rendered(r.right);
  }
  c.emit(j, describe(r, input));
  return r.equivalent ? 0 : 1;
}

int eval_cmd(const Context& c, const std::string& path, const std::string& input, const std::vector<std::string>& assign,
             bool marked) {
  const Artifact a = load_artifact(path);
  const auto& f = expect<FormulaArtifact>(a);
  Assignment sigma;
  for (const std::string& s : assign) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SyntaxError, "--assign expects x=position, got '" + s + "'");
    try {
      sigma[s.substr(0, eq)] = std::stoi(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::SyntaxError, "bad position in '" + s + "'");
    }
  }
  const bool v = eval(f.formula, f.input, f.input.parse_word(input), sigma, marked ? Positions::Marked : Positions::Plain);
  c.emit(Json{{"command", "eval-formula"}, {"input", input}, {"value", v}}, v ? "true" : "false");
  return v ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-way transducers and first-order transductions", "twfo"};
  app.require_subcommand(1);
  Context ctx{out};
  app.add_flag("--json", ctx.json, "Machine-readable output");

  std::string path, path2, input, stage = "plain";
  std::vector<std::string> same, assign;
  bool trace = false, right = false, marked = false;
  std::size_t max_len = 5, min_len = 1;

  auto* sim = app.add_subcommand("simulate", "Run an artifact on one word");
  sim->add_option("file", path)->required();
  sim->add_option("--input", input, "Input word")->required();
  sim->add_flag("--trace", trace, "Print the run of a two-way machine");

  auto* beh = app.add_subcommand("behaviors", "The four behaviors of a word");
  beh->add_option("file", path)->required();
  beh->add_option("--input", input)->required();

  auto* mon = app.add_subcommand("monoid", "Dump the transition monoid");
  mon->add_option("file", path)->required();
  mon->add_option("--same", same, "Check that u and v have the same class (u=v)");

  auto* ape = app.add_subcommand("aperiodic", "Decide aperiodicity of the transition monoid");
  ape->add_option("file", path)->required();

  auto* com = app.add_subcommand("compose", "Sequential transducer followed by a two-way machine");
  com->add_option("sequential", path)->required();
  com->add_option("twoway", path2)->required();
  com->add_flag("--right", right, "Read the sequential transducer right to left");

  auto* tof = app.add_subcommand("to-fot", "Two-way machine to first-order transduction");
  tof->add_option("file", path)->required();

  auto* fro = app.add_subcommand("from-fot", "First-order transduction to two-way machine");
  fro->add_option("file", path)->required();
  fro->add_option("--stage", stage, "Stop after: fo-la, sf-la or plain")->check(CLI::IsMember({"fo-la", "sf-la", "plain"}));

  auto* nor = app.add_subcommand("normalize", "Productions of length at most one");
  nor->add_option("file", path)->required();

  auto* mir = app.add_subcommand("mirror", "Machine reading the input reversed");
  mir->add_option("file", path)->required();

  auto* equ = app.add_subcommand("check-equiv", "Compare two artifacts on all short words");
  equ->add_option("first", path)->required();
  equ->add_option("second", path2)->required();
  equ->add_option("--max-len", max_len, "Longest word tested");
  equ->add_option("--min-len", min_len, "Shortest word tested (the empty word needs 0)");

  auto* evf = app.add_subcommand("eval-formula", "Evaluate a formula on a word");
  evf->add_option("file", path)->required();
  evf->add_option("--input", input)->required();
  evf->add_option("--assign", assign, "Variable assignment x=position");
  evf->add_flag("--marked", marked, "Positions include the endmarkers");

  for (auto* s : {com, tof, fro, nor, mir}) s->add_option("-o,--output", ctx.output_path, "Also write the artifact here");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (sim->parsed()) return simulate_cmd(ctx, path, input, trace);
    if (beh->parsed()) return behaviors_cmd(ctx, path, input);
    if (mon->parsed()) return monoid_cmd(ctx, path, same);
    if (ape->parsed()) return aperiodic_cmd(ctx, path);
    if (equ->parsed()) return equiv_cmd(ctx, path, path2, max_len, min_len);
    if (evf->parsed()) return eval_cmd(ctx, path, input, assign, marked);
    const Artifact a = load_artifact(path);
    if (com->parsed()) {
      const Artifact b = load_artifact(path2);
      const auto& seq = expect<SequentialTransducer>(a);
      const auto& tw = expect<TwoWayTransducer>(b);
      ctx.artifact(right ? compose_right_seq_2w(seq, tw) : compose_seq_2w(seq, tw), a.name + "-" + b.name, "compose");
    } else if (tof->parsed()) {
      ctx.artifact(twoway_to_fot(expect<TwoWayTransducer>(a)), a.name, "to-fot");
    } else if (fro->parsed()) {
      const auto la = fot_to_fo_lookaround(expect<FoTransduction>(a));
      if (stage == "fo-la") {
        ctx.artifact(la, a.name, "from-fot");
      } else {
        const auto sf = fo_la_to_sf_la(la);
        if (stage == "sf-la") ctx.artifact(sf, a.name, "from-fot");
        else ctx.artifact(sf_la_to_plain(sf), a.name, "from-fot");
      }
    } else if (nor->parsed()) {
      ctx.artifact(normalize(expect<TwoWayTransducer>(a)), a.name, "normalize");
    } else {
      ctx.artifact(mirror(expect<TwoWayTransducer>(a)), a.name, "mirror");
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace twfo::cli
