// Command-line front-end for the separation engine.
//
//   bpolsep decide   --class bpol-mod --alphabet ab --regex "(aa)*" --regex "a(aa)*"
//   bpolsep quads    --class bpol-st --nfa automaton.nfa
//   bpolsep oracle   --class gr --nfa pair.nfa --src 0 --dst 1
//   bpolsep selftest [--threads N] [--json]
//
// Exit status: 0 separable, 1 inseparable, 2 error or undecided.
// `oracle` uses the same convention; `selftest` exits 1 on any violation.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpolsep/bpolsep.hpp"
#include "bpolsep/selftest.hpp"

namespace {

using namespace bpolsep;

constexpr int kExitSeparable = 0;
constexpr int kExitInseparable = 1;
constexpr int kExitError = 2;

struct CommonArgs {
  std::string cls = "";
  std::string alphabet;
  std::vector<std::string> regex;
  std::vector<std::string> nfa;
  bool json = false;
  bool trace = false;
  unsigned threads = 1;
  std::size_t budget = OracleOptions{}.amt_budget;
};

SeparationProblem load_problem(const CommonArgs& a) {
  if (!a.regex.empty() && !a.nfa.empty()) throw std::invalid_argument("give either --regex or --nfa, not both");
  if (!a.regex.empty()) {
    if (a.regex.size() != 2) throw std::invalid_argument("--regex must be given exactly twice");
    if (a.alphabet.empty()) throw std::invalid_argument("--regex needs --alphabet");
    return problem_from_regexes(a.regex[0], a.regex[1], Alphabet(a.alphabet));
  }
  if (a.nfa.size() == 1) return problem_from_nfa_text(read_text_file(a.nfa[0]));
  if (a.nfa.size() == 2) return problem_from_nfa_texts(read_text_file(a.nfa[0]), read_text_file(a.nfa[1]));
  throw std::invalid_argument("give two --regex or one or two --nfa files");
}

void print_trace(const FixpointTrace& t) {
  std::cout << "iterations:";
  for (auto s : t.iterations) std::cout << ' ' << s;
  std::cout << "\noracle calls: " << t.oracle_calls << '\n';
}

int cmd_decide(const CommonArgs& a) {
  const ClassSpec cls = ClassSpec::parse(a.cls);
  const SeparationProblem p = load_problem(a);
  const Oracle oracle(cls.base, OracleOptions{a.budget});
  DecisionRecord rec;
  std::optional<Verdict> v;
  try {
    v = decide(p.nfa, p.i1, p.f1, p.i2, p.f2, cls, oracle, FixpointOptions{a.threads});
    rec = DecisionRecord::from_verdict(*v, cls);
  } catch (const BudgetExceeded& e) {
    rec = DecisionRecord::undecided(cls);
    if (!a.json) std::cerr << "undecided: " << e.what() << '\n';
  }
  if (a.json) {
    std::cout << rec.to_json().dump() << '\n';
  } else {
    std::cout << rec.verdict;
    if (rec.witness) {
      const auto& w = *rec.witness;
      std::cout << " witness (" << w[0] << "," << w[1] << "," << w[2] << "," << w[3] << ")";
    }
    std::cout << '\n';
    if (a.trace && v) {
      print_trace(v->trace);
      std::cout << "controlled: " << rec.controlled_size << "\nfull: " << rec.full_size << '\n';
    }
  }
  if (!v) return kExitError;
  return v->separable() ? kExitSeparable : kExitInseparable;
}

int cmd_quads(const CommonArgs& a) {
  const ClassSpec cls = ClassSpec::parse(a.cls);
  if (a.nfa.size() != 1) throw std::invalid_argument("quads takes exactly one --nfa file");
  const NfaFile f = parse_nfa_file(read_text_file(a.nfa[0]));
  const Oracle oracle(cls.base, OracleOptions{a.budget});
  FixpointTrace trace;
  QuadSet controlled;
  QuadSet full;
  try {
    full = full_inseparable_quads(f.nfa, cls, oracle, &trace, FixpointOptions{a.threads}, &controlled);
  } catch (const BudgetExceeded& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return kExitError;
  }
  if (a.json) {
    nlohmann::json j{{"class", cls.name()},
                     {"controlled", controlled.members()},
                     {"full", full.members()},
                     {"iterations", trace.rounds()},
                     {"sizes", trace.iterations},
                     {"oracle_calls", trace.oracle_calls}};
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << "class: " << cls.name() << '\n'
            << "controlled (" << controlled.size() << "): " << format_quads(controlled) << '\n'
            << "full (" << full.size() << "): " << format_quads(full) << '\n'
            << "iterations: " << trace.rounds() << '\n';
  if (a.trace) print_trace(trace);
  return 0;
}

int cmd_oracle(const CommonArgs& a, StateId src, StateId dst) {
  const auto g = parse_group_class(a.cls);
  if (!g) throw std::invalid_argument("unknown class '" + a.cls + "' (expected st, mod, amt or gr)");
  if (a.nfa.size() != 1) throw std::invalid_argument("oracle takes exactly one --nfa file");
  const EpsNfaFile f = parse_eps_nfa_file(read_text_file(a.nfa[0]));
  if (src >= f.nfa.state_count() || dst >= f.nfa.state_count())
    throw std::invalid_argument("--src/--dst out of range");
  OracleAnswer ans;
  try {
    ans = eps_inseparable(*g, f.nfa, src, dst, OracleOptions{a.budget});
  } catch (const BudgetExceeded& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return kExitError;
  }
  if (a.json) {
    nlohmann::json j{{"class", std::string(to_string(*g))},
                     {"inseparable", ans.inseparable},
                     {"evidence", ans.evidence},
                     {"modulus", ans.modulus ? nlohmann::json(*ans.modulus) : nlohmann::json(nullptr)},
                     {"modulus_vector",
                      ans.modulus_vector ? nlohmann::json(*ans.modulus_vector) : nlohmann::json(nullptr)}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << (ans.inseparable ? "inseparable" : "separable") << '\n';
    if (ans.modulus) std::cout << "m=" << *ans.modulus << '\n';
    if (ans.modulus_vector) {
      std::cout << "moduli=";
      for (std::size_t i = 0; i < ans.modulus_vector->size(); ++i)
        std::cout << (i ? "," : "") << (*ans.modulus_vector)[i];
      std::cout << '\n';
    }
    if (!ans.evidence.empty()) std::cout << "evidence: " << ans.evidence << '\n';
  }
  return ans.inseparable ? kExitInseparable : kExitSeparable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separation of regular languages by BPol(G) and BPol(G+)"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, bool class_required) {
    auto* opt = sub->add_option("--class", args.cls, "class, e.g. bpol-st, bpol-mod+ (oracle: st|mod|amt|gr)");
    if (class_required) opt->required();
    sub->add_option("--nfa", args.nfa, "NFA file(s)");
    sub->add_flag("--json", args.json, "machine-readable output");
    sub->add_option("--budget", args.budget, "AMT search-state budget");
  };

  auto* decide_cmd = app.add_subcommand("decide", "decide separability of two languages");
  add_common(decide_cmd, true);
  decide_cmd->add_option("--alphabet", args.alphabet, "alphabet for --regex");
  decide_cmd->add_option("--regex", args.regex, "regular expression (give twice)");
  decide_cmd->add_flag("--trace", args.trace, "print the fixpoint trace");
  decide_cmd->add_option("--threads", args.threads, "worker threads per round")->check(CLI::Range(1U, 256U));

  auto* quads_cmd = app.add_subcommand("quads", "print the inseparable quadruples of an automaton");
  add_common(quads_cmd, true);
  quads_cmd->add_flag("--trace", args.trace, "print the fixpoint trace");
  quads_cmd->add_option("--threads", args.threads, "worker threads per round")->check(CLI::Range(1U, 256U));

  StateId src = 0, dst = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "query a group-class oracle on an epsilon-NFA");
  add_common(oracle_cmd, true);
  oracle_cmd->add_option("--src", src, "source state")->required();
  oracle_cmd->add_option("--dst", dst, "target state")->required();

  SelftestOptions st;
  bool st_json = false, no_timing = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suites and the curated table");
  selftest_cmd->add_option("--threads", st.threads, "worker threads per round")->check(CLI::Range(1U, 256U));
  selftest_cmd->add_flag("--json", st_json, "machine-readable summary");
  selftest_cmd->add_flag("--no-timing", no_timing, "omit timing fields");
  selftest_cmd->add_option("--seed", st.seed, "random seed");
  selftest_cmd->add_option("--samples", st.invariant_samples, "random 3-state automata for the invariant suite");
  selftest_cmd->add_flag("--inject-fault", st.inject_fault, "replace the ST oracle by a broken one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*decide_cmd) return cmd_decide(args);
    if (*quads_cmd) return cmd_quads(args);
    if (*oracle_cmd) return cmd_oracle(args, src, dst);
    if (*selftest_cmd) {
      const SelftestReport rep = run_selftest(st);
      if (st_json)
        std::cout << rep.to_json(!no_timing).dump(2) << '\n';
      else
        std::cout << rep.to_text(!no_timing);
      return rep.passed() ? 0 : 1;
    }
  } catch (const RegexError& e) {
    std::cerr << "error: regex at offset " << e.offset() << ": " << e.what() << '\n';
  } catch (const NfaFileError& e) {
    std::cerr << "error: " << (e.line() ? "line " + std::to_string(e.line()) + ": " : "") << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
