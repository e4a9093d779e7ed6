// Command-line front end for the elam checker: type-checking of program
// files, inference, seeded evaluation, lowering, type normalization, and
// subtyping queries. Exit codes: 0 success/true, 1 failure/false/unknown,
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elam/betadelta.hpp"
#include "elam/eval.hpp"
#include "elam/frontend.hpp"
#include "elam/infer.hpp"
#include "elam/lower.hpp"
#include "elam/normalize.hpp"
#include "elam/oracle.hpp"
#include "elam/subtype.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace elam;

constexpr long kDefaultFuel = 10000;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int parse_error(const std::string& where, const ParseError& e) {
  std::cerr << where << ":" << e.line << ":" << e.column << ": error: " << e.what();
  if (!e.expected.empty()) std::cerr << " (expected " << e.expected << ")";
  std::cerr << "\n";
  return 2;
}

const char* kind_name(SourceItem::Kind k) {
  switch (k) {
    case SourceItem::Kind::Def:
      return "def";
    case SourceItem::Kind::Check:
      return "check";
    case SourceItem::Kind::Eval:
      return "eval";
  }
  return "?";
}

void print_report_text(const ProgramReport& rep) {
  for (const ItemResult& r : rep.items) {
    std::cout << "line " << r.line << " " << kind_name(r.kind);
    if (!r.name.empty()) std::cout << " " << r.name;
    std::cout << ": " << (r.ok ? "ok" : "FAIL");
    if (!r.detail.empty()) std::cout << " " << r.detail;
    if (!r.message.empty()) std::cout << " -- " << r.message;
    std::cout << "\n";
  }
  std::cout << (rep.all_ok ? "all items ok" : "some items failed") << "\n";
}

void print_report_json(const std::string& command, const std::string& file, long fuel,
                       std::uint64_t seed, const ProgramReport& rep) {
  json items = json::array();
  for (const ItemResult& r : rep.items) {
    items.push_back({{"kind", kind_name(r.kind)},
                     {"name", r.name},
                     {"line", r.line},
                     {"ok", r.ok},
                     {"message", r.message},
                     {"detail", r.detail}});
  }
  json out = {{"command", command}, {"file", file},     {"fuel", fuel},
              {"seed", seed},       {"ok", rep.all_ok}, {"items", items}};
  std::cout << out.dump(2) << "\n";
}

int run_check(const std::string& file, long fuel, std::uint64_t seed, bool as_json,
              bool parallel, bool infer_only) {
  SourceFile src;
  try {
    src = parse_file(read_file(file));
  } catch (const ParseError& e) {
    return parse_error(file, e);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  ProgramReport rep = infer_only ? infer_annotated_program(src, fuel, parallel)
                                 : check_annotated_program(src, fuel, seed, parallel);
  if (as_json) {
    print_report_json(infer_only ? "infer" : "check", file, fuel, seed, rep);
  } else {
    print_report_text(rep);
  }
  return rep.all_ok ? 0 : 1;
}

int run_eval(const std::string& file, long fuel, std::uint64_t seed,
             const std::string& script, bool as_json) {
  SourceFile src;
  try {
    src = parse_file(read_file(file));
  } catch (const ParseError& e) {
    return parse_error(file, e);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::unique_ptr<Chooser> chooser;
  if (!script.empty()) {
    std::vector<TermPtr> values;
    try {
      std::istringstream in(read_file(script));
      std::string line;
      int ln = 0;
      while (std::getline(in, line)) {
        ++ln;
        std::string trimmed = line.substr(line.find_first_not_of(" \t") == std::string::npos
                                              ? line.size()
                                              : line.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        try {
          values.push_back(parse_term(trimmed));
        } catch (const ParseError& e) {
          return parse_error(script, ParseError(ln, e.column, e.what(), e.expected));
        }
      }
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    chooser = std::make_unique<ScriptedChooser>(std::move(values));
  } else {
    chooser = std::make_unique<SeededChooser>(seed);
  }
  std::vector<std::pair<Name, TermPtr>> defs;
  json jitems = json::array();
  bool ok = true;
  for (const SourceItem& item : src.items) {
    if (item.kind == SourceItem::Kind::Def) {
      defs.emplace_back(item.name, item.term);
      continue;
    }
    if (item.kind != SourceItem::Kind::Eval) continue;
    TermPtr t = item.term;
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
      t = subst(t, it->first, it->second);
    }
    std::string err;
    EvalResult res;
    try {
      res = eval(t, *chooser, fuel);
    } catch (const OutOfFuel&) {
      err = "out of fuel";
    } catch (const StuckTerm& e) {
      err = e.what();
    } catch (const std::out_of_range&) {
      err = "choice script exhausted";
    }
    if (as_json) {
      json choices = json::array();
      if (err.empty()) {
        for (const ChoiceEntry& c : res.log.entries) {
          choices.push_back({{"path", print_path(c.path)},
                             {"value", print_term(c.value)},
                             {"tag", to_string(c.tag)}});
        }
      }
      jitems.push_back({{"line", item.line},
                        {"ok", err.empty()},
                        {"message", err},
                        {"value", err.empty() ? print_term(res.value) : ""},
                        {"choices", choices}});
    } else if (err.empty()) {
      std::cout << "value: " << print_term(res.value) << "\n";
      for (const ChoiceEntry& c : res.log.entries) {
        std::cout << "  choose " << print_path(c.path) << " := " << print_term(c.value)
                  << " : " << to_string(c.tag) << "\n";
      }
    } else {
      std::cout << "error: " << err << "\n";
    }
    ok = ok && err.empty();
  }
  if (as_json) {
    json out = {{"command", "eval"}, {"file", file},   {"fuel", fuel},
                {"seed", seed},      {"ok", ok},       {"items", jitems}};
    std::cout << out.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int run_lower(const std::string& file, bool as_json) {
  SourceFile src;
  try {
    src = parse_file(read_file(file));
  } catch (const ParseError& e) {
    return parse_error(file, e);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::set<Name> names;
  for (const SourceItem& item : src.items) {
    if (item.term) all_names(item.term, names);
    if (item.annot) all_names(item.annot, names);
  }
  json jitems = json::array();
  for (const SourceItem& item : src.items) {
    Session s(kDefaultFuel * 100);
    s.reserve(names);
    TermPtr lowered = lower_program(s, item.term);
    std::string lannot;
    if (item.annot) lannot = print_type(lower_type(s, item.annot));
    if (as_json) {
      jitems.push_back({{"kind", kind_name(item.kind)},
                        {"name", item.name},
                        {"line", item.line},
                        {"term", print_term(lowered)},
                        {"annot", lannot}});
    } else {
      std::cout << kind_name(item.kind);
      if (!item.name.empty()) std::cout << " " << item.name;
      std::cout << ": " << print_term(lowered);
      if (!lannot.empty()) std::cout << " : " << lannot;
      std::cout << "\n";
    }
  }
  if (as_json) {
    json out = {{"command", "lower"}, {"file", file}, {"items", jitems}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int run_norm(const std::string& type_text, const std::string& ctx_text, bool do_untangle,
             long fuel, bool as_json, bool oracle_dump) {
  TypePtr ty;
  Context g;
  try {
    ty = parse_type(type_text);
    if (!ctx_text.empty()) {
      for (auto& [x, t] : parse_bindings(ctx_text)) g = g.extended(x, t);
    }
  } catch (const ParseError& e) {
    return parse_error("<arg>", e);
  }
  try {
    Session s(fuel);
    TypePtr n = normalize(g, ty, s);
    if (do_untangle) n = untangle(n, s);
    if (as_json) {
      json out = {{"command", "norm"},
                  {"input", print_type(ty)},
                  {"untangle", do_untangle},
                  {"result", print_type(n)}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << print_type(n) << "\n";
    }
    if (oracle_dump) {
      EnumBudget b;
      try {
        for (const TermPtr& v : enumerate_type(n, b)) {
          std::cerr << "oracle value: " << print_term(v) << "\n";
        }
      } catch (const NotEnumerable& e) {
        std::cerr << "oracle: not enumerable: " << e.what() << "\n";
      }
    }
    return 0;
  } catch (const OutOfFuel&) {
    std::cerr << "error: out of fuel\n";
    return 1;
  } catch (const InferFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_sub(const std::string& t1_text, const std::string& t2_text, bool trace, long fuel,
            bool as_json, bool oracle_check) {
  TypePtr t1, t2;
  try {
    t1 = parse_type(t1_text);
    t2 = parse_type(t2_text);
  } catch (const ParseError& e) {
    return parse_error("<arg>", e);
  }
  // Types written with choice constructs are lowered before the query.
  if (!check_dialect(t1, Dialect::Core) || !check_dialect(t2, Dialect::Core)) {
    Session ls(fuel * 100);
    std::set<Name> names;
    all_names(t1, names);
    all_names(t2, names);
    ls.reserve(names);
    if (!check_dialect(t1, Dialect::Core)) t1 = lower_type(ls, t1);
    if (!check_dialect(t2, Dialect::Core)) t2 = lower_type(ls, t2);
  }
  Session s(fuel);
  s.trace_enabled = trace;
  bool verdict = false;
  bool unknown = false;
  try {
    verdict = subtype(Context(), t1, t2, s);
  } catch (const OutOfFuel&) {
    unknown = true;
  } catch (const InferFailure&) {
    unknown = true;
  }
  for (const std::string& line : s.trace) std::cerr << "trace: " << line << "\n";
  std::string oracle_verdict;
  if (oracle_check) {
    EnumBudget b;
    try {
      bool all_in = true;
      bool undecided = false;
      for (const TermPtr& v : enumerate_type(t1, b)) {
        Tri m = member(v, t2, b);
        if (m == Tri::False) all_in = false;
        if (m == Tri::Undecided) undecided = true;
      }
      oracle_verdict = !all_in ? "not-included" : (undecided ? "undecided" : "included");
    } catch (const NotEnumerable& e) {
      oracle_verdict = std::string("not-enumerable: ") + e.what();
    }
    std::cerr << "oracle: " << oracle_verdict << "\n";
  }
  if (as_json) {
    json out = {{"command", "sub"},
                {"left", print_type(t1)},
                {"right", print_type(t2)},
                {"result", unknown ? "unknown" : (verdict ? "true" : "false")},
                {"oracle", oracle_verdict}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (unknown ? "unknown" : (verdict ? "true" : "false")) << "\n";
  }
  return verdict && !unknown ? 0 : 1;
}

int run_repl(long fuel, std::uint64_t seed) {
  std::cout << "elam repl -- lines: def x = t | check t : T | eval t | :q\n";
  SourceFile accum;
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    std::string trimmed = line;
    size_t start = trimmed.find_first_not_of(" \t");
    trimmed = start == std::string::npos ? "" : trimmed.substr(start);
    if (trimmed.empty()) continue;
    if (trimmed == ":q" || trimmed == ":quit") break;
    SourceFile one;
    try {
      if (trimmed.rfind("def ", 0) == 0 || trimmed.rfind("check ", 0) == 0 ||
          trimmed.rfind("eval ", 0) == 0) {
        one = parse_file(trimmed);
      } else {
        one = parse_file("eval " + trimmed);
      }
    } catch (const ParseError& e) {
      std::cout << "parse error at column " << e.column << ": " << e.what() << "\n";
      continue;
    }
    SourceFile trial = accum;
    for (const SourceItem& it : one.items) trial.items.push_back(it);
    ProgramReport rep = check_annotated_program(trial, fuel, seed);
    size_t first_new = accum.items.size();
    bool keep = true;
    for (size_t i = first_new; i < rep.items.size(); ++i) {
      const ItemResult& r = rep.items[i];
      std::cout << (r.ok ? "ok" : "FAIL");
      if (!r.detail.empty()) std::cout << " " << r.detail;
      if (!r.message.empty()) std::cout << " -- " << r.message;
      std::cout << "\n";
      keep = keep && r.ok;
    }
    // Only keep definitions that went through; checks/evals are not
    // re-run on later lines either way.
    if (keep) {
      for (const SourceItem& it : one.items) {
        if (it.kind == SourceItem::Kind::Def) accum.items.push_back(it);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elam: a checker and evaluator for a small dependently typed calculus "
               "with logged non-deterministic choice"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  long fuel = kDefaultFuel;
  std::uint64_t seed = 0;
  bool as_json = false;
  bool parallel = false;
  bool oracle_flag = false;
  std::string file, script, type_text, ctx_text, t1_text, t2_text;
  bool do_untangle = false, trace = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--fuel", fuel, "step budget shared across reduction, normalization, "
                                  "and subtyping (default 10000)");
    c->add_flag("--json", as_json, "machine-readable report on stdout");
  };

  CLI::App* ccheck = app.add_subcommand("check", "type-check a program file");
  ccheck->add_option("file", file, "program file")->required();
  ccheck->add_option("--seed", seed, "seed for eval items");
  ccheck->add_flag("--parallel", parallel, "check items concurrently");
  add_common(ccheck);

  CLI::App* cinfer = app.add_subcommand("infer", "infer types for a program file");
  cinfer->add_option("file", file, "program file")->required();
  cinfer->add_flag("--parallel", parallel, "check items concurrently");
  add_common(cinfer);

  CLI::App* ceval = app.add_subcommand("eval", "run the eval items of a program file");
  ceval->add_option("file", file, "program file")->required();
  ceval->add_option("--seed", seed, "seed for random choices");
  ceval->add_option("--script", script, "file of values replayed for choices, one per line");
  add_common(ceval);

  CLI::App* clower = app.add_subcommand("lower", "print the lowered (core) program");
  clower->add_option("file", file, "program file")->required();
  add_common(clower);

  CLI::App* cnorm = app.add_subcommand("norm", "normalize a type");
  cnorm->add_option("--type", type_text, "type to normalize")->required();
  cnorm->add_option("--ctx", ctx_text, "context bindings, e.g. \"x : List, y : Top\"");
  cnorm->add_flag("--untangle", do_untangle, "also untangle trail existentials");
  cnorm->add_flag("--oracle", oracle_flag, "dump the enumerated values of the result to stderr");
  add_common(cnorm);

  CLI::App* csub = app.add_subcommand("sub", "decide a subtyping query");
  csub->add_option("left", t1_text, "left type")->required();
  csub->add_option("right", t2_text, "right type")->required();
  csub->add_flag("--trace", trace, "print the applied rules to stderr");
  csub->add_flag("--oracle", oracle_flag, "compare against enumeration-based inclusion");
  add_common(csub);

  CLI::App* crepl = app.add_subcommand("repl", "interactive session");
  crepl->add_option("--seed", seed, "seed for eval lines");
  add_common(crepl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (ccheck->parsed()) return run_check(file, fuel, seed, as_json, parallel, false);
  if (cinfer->parsed()) return run_check(file, fuel, seed, as_json, parallel, true);
  if (ceval->parsed()) return run_eval(file, fuel, seed, script, as_json);
  if (clower->parsed()) return run_lower(file, as_json);
  if (cnorm->parsed()) return run_norm(type_text, ctx_text, do_untangle, fuel, as_json, oracle_flag);
  if (csub->parsed()) return run_sub(t1_text, t2_text, trace, fuel, as_json, oracle_flag);
  if (crepl->parsed()) return run_repl(fuel, seed);
  return 2;
}
