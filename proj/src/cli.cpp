#include "lcatch/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lcatch/confluence.hpp"
#include "lcatch/metatheory.hpp"
#include "lcatch/reduction.hpp"
#include "lcatch/stdlib.hpp"
#include "lcatch/surface.hpp"
#include "lcatch/typing.hpp"

namespace lcatch {

namespace {

struct Options {
  std::string file;
  std::string expr;
  bool trace = false;
  std::int64_t max_steps = kDefaultFuel;
  bool count = false;
  bool sugar = false;
  bool eval_sugar = true;
  std::string prelude;
  bool no_prelude = false;
  std::vector<std::string> conts;
  int rounds = 1;
  std::string props;
  std::int64_t cases = 100;
  std::uint64_t seed = 0;
  int size = 20;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(std::ostream& err, const ParseError& e) {
  err << "parse error at " << e.line() << ":" << e.column() << ": " << e.message();
  if (!e.expected().empty()) {
    err << " (expected";
    for (std::size_t i = 0; i < e.expected().size(); ++i) err << (i ? ", " : " ") << e.expected()[i];
    err << ")";
  }
  err << "\n";
}

void report(std::ostream& err, const TypeError& e) {
  err << "type error: " << e.what() << "\n";
}

std::vector<Definition> scope_defs(const Options& o) {
  if (o.no_prelude) return {};
  if (o.prelude.empty()) return prelude_definitions();
  return expand_definitions(parse_program(read_file(o.prelude)).defs);
}

// The subject term of eval/redexes/develop: `-e` text or the main of a file.
Term subject(const Options& o) {
  std::vector<Definition> defs = scope_defs(o);
  if (!o.expr.empty() || o.file.empty()) return expand_with(parse_term(o.expr), defs);
  SourceProgram prog = parse_program(read_file(o.file));
  if (!prog.main) throw std::runtime_error(o.file + " has no main");
  return expand_with(expand_with(*prog.main, expand_definitions(prog.defs)), defs);
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  SourceProgram prog = parse_program(read_file(o.file));
  std::vector<Definition> defs = expand_definitions(prog.defs);
  if (prog.main) defs.push_back({"main", expand_with(*prog.main, defs)});
  for (const Definition& d : defs) {
    try {
      Typing ty = derive(TypingEnv{}, d.term, std::nullopt);
      out << d.name << " : " << print_type(ty.type) << "\n";
    } catch (const TypeError& e) {
      err << d.name << ": ";
      report(err, e);
      return kExitType;
    }
  }
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Term t = subject(o);
  TypingEnv env;
  for (const std::string& c : o.conts) {
    auto colon = c.find(':');
    if (colon == std::string::npos || colon == 0) {
      err << "--cont expects NAME:TYPE, got " << c << "\n";
      return kExitUsage;
    }
    try {
      env.bind_cont(c.substr(0, colon), parse_type(c.substr(colon + 1)));
    } catch (const std::invalid_argument& e) {
      err << "--cont " << c << ": " << e.what() << "\n";
      return kExitType;
    }
  }
  try {
    derive(env, t, std::nullopt);
  } catch (const TypeError& e) {
    report(err, e);
    return kExitType;
  }
  PrintOptions po{o.sugar};
  Outcome res = evaluate(t, o.max_steps, o.trace);
  if (o.trace)
    for (const std::string& line : format_trace(res, po.sugar)) out << line << "\n";
  switch (res.kind) {
    case OutcomeKind::Value:
    case OutcomeKind::UncaughtThrow:
      out << print_term(res.term, po) << "\n";
      if (o.count) out << "steps: " << res.steps << "\n";
      if (res.kind == OutcomeKind::Value) return kExitOk;
      err << "uncaught throw to " << res.cont << "\n";
      return kExitUncaught;
    case OutcomeKind::OutOfFuel:
      err << "out of fuel after " << res.steps << " steps\n";
      return kExitFuel;
    case OutcomeKind::Stuck:
      err << "stuck after " << res.steps << " steps: " << print_term(res.term, po) << "\n";
      return kExitStuck;
  }
  return kExitStuck;
}

int cmd_redexes(const Options& o, std::ostream& out) {
  PrintOptions po{o.sugar};
  for (const ReductionEvent& ev : enumerate_redexes(subject(o)))
    out << "[" << rule_name(ev.rule) << "] @ " << path_to_string(ev.path) << " -> "
        << print_term(ev.result, po) << "\n";
  return kExitOk;
}

int cmd_develop(const Options& o, std::ostream& out) {
  Term t = subject(o);
  for (int i = 0; i < o.rounds; ++i) t = complete_development(t);
  out << print_term(t, PrintOptions{o.sugar}) << "\n";
  return kExitOk;
}

int cmd_meta(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<Property> props;
  if (o.props.empty()) {
    props.assign(std::begin(kAllProperties), std::end(kAllProperties));
  } else {
    std::stringstream ss(o.props);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto p = parse_property(name);
      if (!p) {
        err << "unknown property: " << name << "\n";
        return kExitUsage;
      }
      props.push_back(*p);
    }
  }
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.max_size = o.size;
  bool ok = true;
  for (Property p : props) {
    PropertyReport r = run_property(p, o.cases, cfg);
    for (const std::string& line : report_lines(r)) out << line << "\n";
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitMeta;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typed lambda calculus with catch and throw", "lcatch"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Type every definition of a .lc file");
  check->add_option("file", o.file, "Source file")->required();

  auto add_subject = [&](CLI::App* sub) {
    auto* e = sub->add_option("-e,--expr", o.expr, "Expression");
    auto* f = sub->add_option("file", o.file, "Source file with a main");
    e->excludes(f);
    sub->add_option("--prelude", o.prelude, "Prelude file (default: bundled)");
    sub->add_flag("--no-prelude", o.no_prelude, "Do not load a prelude");
  };

  auto* eval = app.add_subcommand("eval", "Type-check and evaluate call-by-value");
  add_subject(eval);
  eval->add_flag("--trace", o.trace, "Print every step");
  eval->add_option("--max-steps", o.max_steps, "Fuel")->check(CLI::NonNegativeNumber);
  eval->add_flag("--count", o.count, "Print the step count");
  eval->add_option("--cont", o.conts, "Free continuation NAME:TYPE (arrow-free)");
  eval->add_flag("--sugar,!--no-sugar", o.eval_sugar, "Print numerals as #n");

  auto* redexes = app.add_subcommand("redexes", "List every one-step reduct");
  add_subject(redexes);
  redexes->add_flag("--sugar", o.sugar, "Print numerals as #n");

  auto* develop = app.add_subcommand("develop", "Apply complete development");
  add_subject(develop);
  develop->add_option("-n,--rounds", o.rounds, "Rounds")->check(CLI::PositiveNumber);
  develop->add_flag("--sugar", o.sugar, "Print numerals as #n");

  auto* meta = app.add_subcommand("meta", "Run the property suites");
  meta->add_option("--props", o.props, "Comma-separated properties (default: all)");
  meta->add_option("--cases", o.cases, "Cases per property")->check(CLI::NonNegativeNumber);
  meta->add_option("--seed", o.seed, "Base seed");
  meta->add_option("--size", o.size, "Maximum term size")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (eval->parsed()) o.sugar = o.eval_sugar;

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (eval->parsed()) return cmd_eval(o, out, err);
    if (redexes->parsed()) return cmd_redexes(o, out);
    if (develop->parsed()) return cmd_develop(o, out);
    return cmd_meta(o, out, err);
  } catch (const ParseError& e) {
    report(err, e);
    return kExitParse;
  } catch (const TypeError& e) {
    report(err, e);
    return kExitType;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace lcatch
