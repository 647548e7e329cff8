// lsnet: terms with explicit substitutions, their nets, and the machinery
// connecting the two. Subcommands are thin wrappers over the library.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lsnet/equivalence.hpp"
#include "lsnet/net_io.hpp"
#include "lsnet/net_rewrite.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/suite.hpp"
#include "lsnet/term_rewrite.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  out << text;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Net load_net(const std::string& path) { return net_from_json(slurp(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terms with explicit substitutions and their proof nets"};
  app.require_subcommand(1);

  // parse
  std::string parse_input;
  auto* cmd_parse = app.add_subcommand("parse", "parse a term and print it back");
  cmd_parse->add_option("expr", parse_input, "expression (or @file)")->required();

  // translate
  std::string tr_input, tr_weaken, tr_format = "json", tr_out;
  auto* cmd_translate = app.add_subcommand("translate", "translate an expression to a net");
  cmd_translate->add_option("expr", tr_input, "expression")->required();
  cmd_translate->add_option("--weaken", tr_weaken, "extra weakened names, comma separated");
  cmd_translate->add_option("--format", tr_format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  cmd_translate->add_option("-o,--output", tr_out, "output file (default stdout)");

  // check
  std::string check_input;
  bool check_correct = false;
  auto* cmd_check = app.add_subcommand("check", "validate a net from json");
  cmd_check->add_option("net", check_input, "net json file (- for stdin)")->required();
  cmd_check->add_flag("--correctness", check_correct, "also run the correctness criterion");

  // readback
  std::string rb_input;
  bool rb_all = false;
  auto* cmd_readback = app.add_subcommand("readback", "read a correct net back to an expression");
  cmd_readback->add_option("net", rb_input, "net json file (- for stdin)")->required();
  cmd_readback->add_flag("--all", rb_all, "list every read back");

  // reduce
  std::string red_side = "term", red_strategy = "leftmost-outermost", red_input;
  long red_fuel = 1000;
  auto* cmd_reduce = app.add_subcommand("reduce", "reduce a term or a net, tracing steps");
  cmd_reduce->add_option("--side", red_side, "term|net")->check(CLI::IsMember({"term", "net"}));
  cmd_reduce->add_option("--strategy", red_strategy,
                         "leftmost-outermost|gc-eager|exhaustive-enumeration (term side)");
  cmd_reduce->add_option("--fuel", red_fuel, "maximum number of steps");
  cmd_reduce->add_option("input", red_input, "expression, or net json file")->required();

  // equiv
  std::string eq_left, eq_right, eq_method = "nets";
  long eq_bound = 0;
  auto* cmd_equiv = app.add_subcommand("equiv", "decide structural equivalence of two terms");
  cmd_equiv->add_option("left", eq_left)->required();
  cmd_equiv->add_option("right", eq_right)->required();
  cmd_equiv->add_option("--method", eq_method, "nets|closure")
      ->check(CLI::IsMember({"nets", "closure"}));
  cmd_equiv->add_option("--bound", eq_bound, "closure expansion bound (0 = size^2)");

  // bisim-check
  int bs_size = 6;
  bool bs_mutated = false;
  unsigned bs_threads = 0;
  auto* cmd_bisim = app.add_subcommand(
      "bisim-check", "strong bisimulation and redex-square checks over the corpus");
  cmd_bisim->add_option("--max-size", bs_size, "corpus bound");
  cmd_bisim->add_option("--threads", bs_threads, "worker threads");
  cmd_bisim->add_flag("--mutated", bs_mutated,
                      "use the broken variant with the right-application axiom");

  // export
  std::string ex_input, ex_format = "dot", ex_out;
  auto* cmd_export = app.add_subcommand("export", "export a net");
  cmd_export->add_option("net", ex_input, "net json file (- for stdin)")->required();
  cmd_export->add_option("--format", ex_format, "dot|json")->check(CLI::IsMember({"dot", "json"}));
  cmd_export->add_option("-o,--output", ex_out, "output file (default stdout)");

  // corpus
  int co_size = 5;
  std::string co_pool = "x,y,z";
  bool co_count = false;
  auto* cmd_corpus = app.add_subcommand("corpus", "enumerate well-named terms");
  cmd_corpus->add_option("--max-size", co_size, "constructor bound");
  cmd_corpus->add_option("--pool", co_pool, "free name pool, comma separated");
  cmd_corpus->add_flag("--count-only", co_count, "print only the count");

  // suite
  std::string su_name = "all";
  SuiteOptions su_opts;
  std::string su_json;
  auto* cmd_suite = app.add_subcommand("suite", "run the property suites");
  cmd_suite->add_option("name", su_name, "static|quotient|dynamic|bisim|all");
  cmd_suite->add_option("--max-size", su_opts.term_size, "corpus bound");
  cmd_suite->add_option("--pair-size", su_opts.pair_size, "bound for the quotient pairs");
  cmd_suite->add_option("--context-size", su_opts.context_size, "bound for context checks");
  cmd_suite->add_option("--threads", su_opts.threads, "worker threads");
  cmd_suite->add_option("--json", su_json, "write a machine-readable summary here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_parse) {
      std::string text = parse_input.rfind('@', 0) == 0 ? slurp(parse_input.substr(1)) : parse_input;
      std::cout << print_expr(parse_expr(text)) << "\n";
      return kOk;
    }

    if (*cmd_translate) {
      ExprPtr e = parse_expr(tr_input);
      Net n = translate(e, split_names(tr_weaken));
      emit(tr_out, tr_format == "dot" ? net_to_dot(n) : net_to_json(n));
      return kOk;
    }

    if (*cmd_check) {
      Net n = load_net(check_input);
      auto viol = validate(n);
      for (const auto& v : viol) std::cout << "violation: " << v.condition << ": " << v.detail << "\n";
      if (!viol.empty()) return kCheckFailed;
      std::cout << "valid\n";
      if (check_correct) {
        auto rep = check_correctness(n);
        if (!rep.ok) {
          std::cout << "not correct: " << rep.clause << ": " << rep.detail << "\n";
          for (const auto& w : rep.witness) std::cout << "  witness: " << w << "\n";
          return kCheckFailed;
        }
        std::cout << "correct\n";
      }
      return kOk;
    }

    if (*cmd_readback) {
      Net n = load_net(rb_input);
      if (!validate(n).empty() || !is_correct(n)) {
        std::cout << "net is not a correct net; nothing to read back\n";
        return kCheckFailed;
      }
      if (rb_all) {
        for (const auto& e : read_back_all(n, 100000)) std::cout << print_expr(e) << "\n";
      } else {
        auto rb = read_back_full(n);
        std::cout << print_expr(rb.expr) << "\n";
        if (!rb.weakened.empty()) {
          std::cout << "weakened:";
          for (const auto& w : rb.weakened) std::cout << " " << w;
          std::cout << "\n";
        }
      }
      return kOk;
    }

    if (*cmd_reduce) {
      if (red_side == "term") {
        auto strat = strategy_from_name(red_strategy);
        if (!strat) {
          std::cerr << "unknown strategy '" << red_strategy << "'\n";
          return kUsage;
        }
        ExprPtr t = well_name(parse_expr(red_input));
        auto res = normalize(t, *strat, red_fuel,
                             [&](long i, const TermRedex& r, const ExprPtr& u) {
                               std::cout << i << " " << rule_name(r.kind) << " "
                                         << path_to_string(r.at) << " " << print_expr(u) << "\n";
                             });
        std::cout << (res.reached_normal_form ? "normal form: " : "fuel exhausted: ")
                  << print_expr(res.term) << "\n";
        if (*strat != Strategy::ExhaustiveEnumeration)
          std::cout << "steps: m=" << res.steps_m << " e=" << res.steps_e
                    << " gc=" << res.steps_gc << "\n";
        return res.reached_normal_form ? kOk : kCheckFailed;
      }
      Net cur = load_net(red_input);
      if (!validate(cur).empty() || !is_correct(cur)) {
        std::cerr << "input net is not a correct net\n";
        return kCheckFailed;
      }
      long steps_m = 0, steps_e = 0, steps_gc = 0;
      bool nf = false;
      for (long i = 1; i <= red_fuel; ++i) {
        auto rs = find_net_redexes(cur);
        if (rs.empty()) {
          nf = true;
          break;
        }
        const NetRedex& r = rs[pick_net_redex(rs)];
        std::string cut_id = cur.nodes[r.cut].id;
        cur = apply_net_redex(cur, r);
        std::cout << i << " " << rule_name(r.kind) << " cut=" << cut_id << " hash=" << std::hex
                  << net_hash(cur) << std::dec << "\n";
        (r.kind == RuleKind::M ? steps_m : r.kind == RuleKind::E ? steps_e : steps_gc) += 1;
      }
      nf = nf || find_net_redexes(cur).empty();
      std::cout << (nf ? "normal form reached" : "fuel exhausted") << "\n";
      std::cout << "steps: m=" << steps_m << " e=" << steps_e << " gc=" << steps_gc << "\n";
      emit("", net_to_json(cur, false));
      return nf ? kOk : kCheckFailed;
    }

    if (*cmd_equiv) {
      ExprPtr a = well_name(parse_expr(eq_left));
      ExprPtr b = well_name(parse_expr(eq_right));
      bool related = eq_method == "nets" ? equiv_via_nets(a, b) : equiv_oracle(a, b, eq_bound);
      std::cout << (related ? "equivalent" : "not equivalent") << "\n";
      return related ? kOk : kCheckFailed;
    }

    if (*cmd_bisim) {
      auto corpus = enumerate_terms_vec({bs_size, {"x", "y", "z"}});
      auto sys = bs_mutated ? lsc_system_appr() : lsc_system();
      auto rep = check_strong_bisimulation(sys, corpus);
      std::cout << "system: " << sys.name << "\n"
                << "objects: " << rep.objects << ", pairs: " << rep.pairs
                << ", steps: " << rep.steps << "\n";
      for (const auto& cx : rep.counterexamples)
        std::cout << "counterexample: " << cx.object << " ~ " << cx.neighbor << " : " << cx.kind
                  << "-step to " << cx.reduct << " unmatched\n";
      auto jstr = [](const std::string& s) {
        std::string o = "\"";
        for (char c : s) {
          if (c == '"' || c == '\\') o += '\\';
          o += c;
        }
        return o + "\"";
      };
      std::cout << "{\"system\":\"" << sys.name << "\",\"objects\":" << rep.objects
                << ",\"pairs\":" << rep.pairs << ",\"steps\":" << rep.steps
                << ",\"counterexamples\":[";
      for (size_t i = 0; i < rep.counterexamples.size(); ++i) {
        const auto& cx = rep.counterexamples[i];
        std::cout << (i ? "," : "") << "{\"object\":" << jstr(cx.object)
                  << ",\"neighbor\":" << jstr(cx.neighbor) << ",\"kind\":" << jstr(cx.kind)
                  << ",\"reduct\":" << jstr(cx.reduct) << "}";
      }
      std::cout << "]}\n";
      return rep.ok() ? kOk : kCheckFailed;
    }

    if (*cmd_export) {
      Net n = load_net(ex_input);
      emit(ex_out, ex_format == "dot" ? net_to_dot(n) : net_to_json(n));
      return kOk;
    }

    if (*cmd_corpus) {
      CorpusSpec spec{co_size, split_names(co_pool)};
      if (co_count) {
        std::cout << count_terms(spec) << "\n";
      } else {
        enumerate_terms(spec, [](const ExprPtr& t) {
          std::cout << print_expr(t) << "\n";
          return true;
        });
      }
      return kOk;
    }

    if (*cmd_suite) {
      auto results = run_suite(su_name, su_opts, std::cerr);
      std::ostringstream json;
      json << "[";
      for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::cout << "criterion " << r.number << " (" << r.name << "): "
                  << (r.pass ? "PASS" : "FAIL") << " (" << r.checked << " checks, "
                  << static_cast<long>(r.seconds * 1000) << " ms)";
        if (!r.detail.empty()) std::cout << " " << r.detail;
        std::cout << "\n";
        json << (i ? "," : "") << "{\"criterion\":" << r.number << ",\"pass\":"
             << (r.pass ? "true" : "false") << ",\"checked\":" << r.checked << "}";
      }
      json << "]";
      if (!su_json.empty()) emit(su_json, json.str());
      return all_passed(results) ? kOk : kCheckFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "malformed net: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
