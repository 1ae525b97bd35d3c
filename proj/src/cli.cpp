#include "rederiv/cli.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rederiv/automata.hpp"
#include "rederiv/defs.hpp"
#include "rederiv/derivation.hpp"
#include "rederiv/dspace.hpp"
#include "rederiv/oracle.hpp"
#include "rederiv/parse.hpp"
#include "rederiv/pretty.hpp"
#include "rederiv/transducer.hpp"

namespace rederiv {

namespace {

/// "hamming[1]" -> resolve("hamming", {1}); "upclose" -> resolve("upclose").
const OperatorDef& resolve_op_name(const std::string& name,
                                   OperatorRegistry& reg) {
  auto bracket = name.find('[');
  if (bracket == std::string::npos) return reg.resolve(name, {});
  if (name.back() != ']')
    throw operator_error(name, "operator name: missing ']' in " + name);
  std::string base = name.substr(0, bracket);
  std::string inner = name.substr(bracket + 1, name.size() - bracket - 2);
  std::vector<OpParam> params;
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    auto comma = inner.find(',', pos);
    std::string item = inner.substr(
        pos, comma == std::string::npos ? inner.size() - pos : comma - pos);
    pos = comma == std::string::npos ? inner.size() + 1 : comma + 1;
    if (item.empty())
      throw operator_error(name, "operator name: empty parameter in " + name);
    if (std::all_of(item.begin(), item.end(),
                    [](unsigned char c) { return std::isdigit(c); }))
      params.push_back(OpParam::num(std::stol(item)));
    else
      params.push_back(OpParam::tab(item));
  }
  return reg.resolve(base, params);
}

std::string fst_summary(const Transducer& fst) {
  std::string out;
  out += "states: " + std::to_string(fst.states.size()) + "\n";
  out += "initial: " + fst.states[fst.initial] + "\n";
  out += "transitions: " + std::to_string(fst.transitions.size()) + "\n";
  for (const FstTransition& t : fst.transitions)
    out += fst.states[t.from] + " " + show_word(t.input) + "/" +
           show_word(t.output) + " " + fst.states[t.to] + "\n";
  return out;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"derivative engine for regular expressions with extra operators"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --defs/--alphabet follow the subcommand

  std::string defs_path;
  std::string alphabet;
  app.add_option("--defs", defs_path, "definitions file (alphabet, hom tables)");
  app.add_option("--alphabet", alphabet,
                 "alphabet symbols, e.g. 'abc' (overrides the defs file)");

  std::string expr_text, other_text, word_text, op_name;
  std::size_t max_states = 10000;
  std::size_t max_len = 6;
  std::size_t closure_len = 3;
  std::size_t max_steps = 200000;
  std::size_t max_out = 0;  // 0: pick from the input length
  std::size_t cap = 2000;
  bool dot = false, do_enum = false, do_closure = false;

  CLI::App* match = app.add_subcommand("match", "test a word for membership");
  match->add_option("-e,--expr", expr_text, "expression")->required();
  match->add_option("-w,--word", word_text, "word (@e for the empty word)")
      ->required();

  CLI::App* derive_cmd =
      app.add_subcommand("derive", "left derivative by a word");
  derive_cmd->add_option("-e,--expr", expr_text, "expression")->required();
  derive_cmd->add_option("-w,--word", word_text, "word (@e for the empty word)")
      ->required();

  bool do_minimize = false;
  CLI::App* compile_cmd =
      app.add_subcommand("compile", "build the derivative automaton");
  compile_cmd->add_option("-e,--expr", expr_text, "expression")->required();
  compile_cmd->add_flag("--dot", dot, "print DOT instead of the state count");
  compile_cmd->add_flag("--minimize", do_minimize, "Hopcroft-minimize first");
  compile_cmd->add_option("--max-states", max_states, "state cap")
      ->check(CLI::PositiveNumber);

  CLI::App* equiv_cmd =
      app.add_subcommand("equiv", "decide equivalence of two expressions");
  equiv_cmd->add_option("-e,--expr", expr_text, "first expression")->required();
  equiv_cmd->add_option("-f,--other", other_text, "second expression")
      ->required();

  CLI::App* enum_cmd =
      app.add_subcommand("enum", "list accepted words up to a length");
  enum_cmd->add_option("-e,--expr", expr_text, "expression")->required();
  enum_cmd->add_option("--max-len", max_len, "length bound")->required();

  CLI::App* fst_cmd =
      app.add_subcommand("fst", "build the transducer of a unary operator");
  fst_cmd->add_option("--op", op_name, "operator name, e.g. hamming[1]")
      ->required();
  fst_cmd->add_flag("--dot", dot, "print DOT instead of the summary");

  CLI::App* transduce_cmd =
      app.add_subcommand("transduce", "apply an operator transducer to a word");
  transduce_cmd->add_option("--op", op_name, "operator name")->required();
  transduce_cmd->add_option("-w,--word", word_text, "input word")->required();
  transduce_cmd->add_option("--max-steps", max_steps, "search budget")
      ->check(CLI::PositiveNumber);
  transduce_cmd
      ->add_option("--max-out", max_out, "output length cap (default |w|+8)")
      ->check(CLI::PositiveNumber);

  CLI::App* dspace_cmd = app.add_subcommand(
      "dspace", "derivative space of an expression, closed under sums");
  dspace_cmd->add_option("-e,--expr", expr_text, "expression")->required();
  dspace_cmd->add_flag("--enumerate", do_enum, "list the space, one per line");
  dspace_cmd->add_option("--cap", cap, "enumeration size cap")
      ->check(CLI::PositiveNumber);
  dspace_cmd->add_flag("--check-closure", do_closure,
                       "verify derivatives stay inside the space");
  dspace_cmd->add_option("--max-len", closure_len,
                         "sampled word length for --check-closure");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "brute-force language slice (independent of derivatives)");
  oracle_cmd->add_option("-e,--expr", expr_text, "expression")->required();
  oracle_cmd->add_option("--max-len", max_len, "length bound")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    DefinitionsFile defs;
    if (!defs_path.empty()) defs = DefinitionsFile::load(defs_path);
    if (!alphabet.empty()) {
      defs.alphabet.clear();
      for (char c : alphabet) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (std::find(defs.alphabet.begin(), defs.alphabet.end(), c) ==
            defs.alphabet.end())
          defs.alphabet.push_back(c);
      }
      if (defs.alphabet.empty()) throw defs_error("empty alphabet");
    }
    OperatorRegistry reg = build_registry(defs);
    ExprPool pool;

    if (app.got_subcommand(match)) {
      ExprId e = parse(expr_text, reg, pool);
      std::string w = parse_word(word_text, reg);
      bool ok = matches(e, w, reg, pool);
      out << (ok ? "accept" : "reject") << "\n";
      return ok ? 0 : 1;
    }
    if (app.got_subcommand(derive_cmd)) {
      ExprId e = parse(expr_text, reg, pool);
      std::string w = parse_word(word_text, reg);
      out << pretty(derive_word(w, e, reg, pool), pool) << "\n";
      return 0;
    }
    if (app.got_subcommand(compile_cmd)) {
      ExprId e = parse(expr_text, reg, pool);
      Dfa d = compile(e, reg, pool, max_states);
      if (do_minimize) d = minimize(d);
      if (dot)
        out << to_dot(d, pool);
      else
        out << "states: " << d.states.size() << "\n";
      return 0;
    }
    if (app.got_subcommand(equiv_cmd)) {
      ExprId e1 = parse(expr_text, reg, pool);
      ExprId e2 = parse(other_text, reg, pool);
      EquivResult r = equiv(e1, e2, reg, pool);
      if (r.equivalent) {
        out << "equivalent\n";
        return 0;
      }
      out << "counterexample: " << show_word(r.counterexample) << "\n";
      return 1;
    }
    if (app.got_subcommand(enum_cmd)) {
      ExprId e = parse(expr_text, reg, pool);
      for (const std::string& w : enumerate_words(e, reg, pool, max_len))
        out << show_word(w) << "\n";
      return 0;
    }
    if (app.got_subcommand(fst_cmd)) {
      const OperatorDef& def = resolve_op_name(op_name, reg);
      Transducer fst = build_fst(def, reg);
      out << (dot ? fst_to_dot(fst) : fst_summary(fst));
      return 0;
    }
    if (app.got_subcommand(transduce_cmd)) {
      const OperatorDef& def = resolve_op_name(op_name, reg);
      Transducer fst = build_fst(def, reg);
      std::string w = parse_word(word_text, reg);
      if (max_out == 0) max_out = w.size() + 8;
      TransduceResult r = transduce(fst, w, max_steps, max_out);
      for (const std::string& v : r.words) out << show_word(v) << "\n";
      if (r.possibly_incomplete) out << "INCOMPLETE\n";
      return 0;
    }
    if (app.got_subcommand(dspace_cmd)) {
      ExprId e = parse(expr_text, reg, pool);
      std::vector<ExprId> space = dplus_enumerate(e, reg, pool, cap);
      out << "size: " << space.size() << "\n";
      if (do_enum)
        for (ExprId x : space) out << pretty(x, pool) << "\n";
      if (do_closure) {
        std::vector<std::string> samples;
        std::vector<std::string> frontier{""};
        for (std::size_t len = 1; len <= closure_len; ++len) {
          std::vector<std::string> next;
          for (const std::string& w : frontier)
            for (char a : reg.alphabet()) next.push_back(w + a);
          for (const std::string& w : next) samples.push_back(w);
          frontier = std::move(next);
        }
        ClosureReport report = check_closure(e, reg, pool, samples);
        out << report.text();
        return report.all_pass() ? 0 : 1;
      }
      return 0;
    }
    if (app.got_subcommand(oracle_cmd)) {
      ExprId e = parse(expr_text, reg, pool);
      oracle::Slice s = oracle::slice(e, max_len, reg, pool);
      std::vector<std::string> words(s.words.begin(), s.words.end());
      std::stable_sort(words.begin(), words.end(),
                       [](const std::string& a, const std::string& b) {
                         return a.size() != b.size() ? a.size() < b.size()
                                                     : a < b;
                       });
      for (const std::string& w : words) out << show_word(w) << "\n";
      if (s.possibly_incomplete) out << "INCOMPLETE\n";
      return 0;
    }
    err << "error: no subcommand\n";
    return 2;
  } catch (const capability_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const state_cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const dspace_cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rederiv
