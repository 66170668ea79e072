// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--cli path/to/bpolsep] [--threads N]
//
// With --cli, the scaling and determinism criteria drive the command-line
// tool; otherwise they call the library directly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <sys/wait.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpolsep/bpolsep.hpp"
#include "bpolsep/random.hpp"
#include "bpolsep/selftest.hpp"

namespace {

using namespace bpolsep;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Line {
  int id;
  bool pass;
  std::string detail;
};

void print(const Line& l) {
  std::cout << (l.pass ? "PASS" : "FAIL") << " criterion " << l.id << ": " << l.detail << std::endl;
}

std::string first_note(const CheckResult& r) {
  for (const auto& n : r.notes)
    if (n.rfind("violation", 0) == 0) return " [" + n + "]";
  return "";
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Line curated(const SelftestOptions& base) {
  const CheckResult r = run_curated(base);
  const double s = r.wall_ms / 1000;
  return {1, r.passed() && s < 5,
          "curated table, " + std::to_string(r.cases) + " verdicts, " + std::to_string(r.violations) +
              " mismatches, " + fmt("%.2fs (limit 5s)", s) + first_note(r)};
}

Line tiny(SelftestOptions o) {
  o.invariant_samples = 1800;
  const CheckResult r = run_engine_invariants(o);
  const double s = r.wall_ms / 1000;
  return {2, r.passed() && s < 600,
          r.notes.front() + ", " + std::to_string(r.cases) + " invariant checks, " + std::to_string(r.violations) +
              " violations, " + fmt("%.1fs (limit 600s)", s) + first_note(r)};
}

Line oracles(SelftestOptions o) {
  o.mod_samples = 1000;
  o.amt_samples = 1000;
  o.gr_samples = 400;
  const CheckResult mod = run_mod_crosscheck(o), amt = run_amt_crosscheck(o), gr = run_gr_crosscheck(o);
  std::size_t undecided = 0;
  for (const auto& n : amt.notes) undecided += n.rfind("undecided", 0) == 0;
  const bool pass = mod.passed() && amt.passed() && gr.passed() && gr.cases >= 1000 && undecided == 0;
  return {3, pass,
          "MOD " + std::to_string(mod.cases) + " queries/" + std::to_string(mod.violations) + " contradictions, AMT " +
              std::to_string(amt.cases) + "/" + std::to_string(amt.violations) + " (" + std::to_string(undecided) +
              " undecided), GR " + std::to_string(gr.cases) + "/" + std::to_string(gr.violations) +
              first_note(mod) + first_note(amt) + first_note(gr)};
}

Line monotone(SelftestOptions o) {
  o.tau_pairs = 10000;
  const CheckResult r = run_tau_monotonicity(o);
  return {4, r.passed() && r.notes.empty(),
          std::to_string(o.tau_pairs) + " pairs, " + std::to_string(r.cases) + " containments, " +
              std::to_string(r.violations) + " violations, " + std::to_string(r.notes.size()) + " undecided, " +
              fmt("%.1fs", r.wall_ms / 1000) + first_note(r)};
}

struct Run {
  double seconds = 0;
  std::uint64_t oracle_calls = 0;
  std::size_t rounds = 0;
};

std::string run_command(const std::string& cmd, int* status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  const int st = pclose(p);
  *status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

std::string problem_file(const SeparationProblem& p) {
  std::ostringstream os;
  os << format_nfa(p.nfa);
  auto set = [&](const char* key, const StateSet& s) {
    os << key;
    s.for_each([&](std::size_t q) { os << ' ' << q; });
    os << '\n';
  };
  set("initial", p.i1);
  set("final", p.f1);
  set("initial2", p.i2);
  set("final2", p.f2);
  return os.str();
}

Run decide_once(const SeparationProblem& p, ClassSpec cls, const std::string& cli, unsigned threads) {
  Run r;
  const auto start = Clock::now();
  if (cli.empty()) {
    const Verdict v = decide(p.nfa, p.i1, p.f1, p.i2, p.f2, cls, Oracle(cls.base), FixpointOptions{threads});
    r.seconds = seconds_since(start);
    r.oracle_calls = v.trace.oracle_calls;
    r.rounds = v.trace.rounds();
    return r;
  }
  const auto path = std::filesystem::temp_directory_path() / "bpolsep_acceptance.nfa";
  std::ofstream(path) << problem_file(p);
  int status = 0;
  const std::string out = run_command(cli + " decide --class " + cls.name() + " --json --threads " +
                                          std::to_string(threads) + " --nfa " + path.string(),
                                      &status);
  r.seconds = seconds_since(start);
  if (status != 0 && status != 1) throw std::runtime_error("decide exited with " + std::to_string(status));
  const auto j = nlohmann::json::parse(out);
  r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
  r.rounds = j.at("iterations").get<std::size_t>();
  return r;
}

Line scaling(const std::string& cli, unsigned threads) {
  const std::vector<std::size_t> sizes{4, 6, 8, 10, 12};
  constexpr int kInstances = 5;
  bool pass = true;
  std::string detail;
  for (const ClassSpec cls : {ClassSpec{GroupClass::ST, false}, ClassSpec{GroupClass::MOD, false}}) {
    Rng rng(777);
    std::vector<double> xs, ys;
    std::string medians;
    double worst = 0;
    for (auto n : sizes) {
      const std::uint64_t n4 = static_cast<std::uint64_t>(n) * n * n * n;
      std::vector<double> times;
      for (int i = 0; i < kInstances; ++i) {
        const auto p = random_trimmed_problem(rng, n, Alphabet("ab"), 1.0);
        const Run r = decide_once(p, cls, cli, threads);
        times.push_back(r.seconds);
        worst = std::max(worst, r.seconds);
        if (r.oracle_calls > n4 * r.rounds || r.rounds > n4 + 1 || r.seconds > 60) {
          pass = false;
          detail += " [n=" + std::to_string(n) + " calls=" + std::to_string(r.oracle_calls) +
                    " rounds=" + std::to_string(r.rounds) + fmt(" %.1fs]", r.seconds);
        }
      }
      std::nth_element(times.begin(), times.begin() + kInstances / 2, times.end());
      const double median = times[kInstances / 2];
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(std::max(median, 1e-6)));
      medians += (medians.empty() ? "" : " ") + fmt("%.3g", median);
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    pass = pass && slope <= 8;
    detail += (detail.empty() ? "" : "; ") + cls.name() + " medians(s) " + medians + fmt(", exponent %.2f", slope) +
              fmt(", slowest %.2fs", worst);
  }
  return {5, pass, detail + (cli.empty() ? " (library)" : " (cli)")};
}

Line determinism(const SelftestOptions& base, const std::string& cli) {
  std::string out[2];
  bool ok = true;
  const unsigned counts[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    if (cli.empty()) {
      SelftestOptions o = base;
      o.threads = counts[i];
      const auto rep = run_selftest(o);
      ok = ok && rep.passed();
      out[i] = rep.to_text(false);
    } else {
      int status = 0;
      out[i] = run_command(cli + " selftest --no-timing --threads " + std::to_string(counts[i]), &status);
      ok = ok && status == 0;
    }
  }
  const bool same = out[0] == out[1];
  return {6, ok && same,
          std::string("selftest reports with 1 and 8 threads ") + (same ? "identical" : "differ") + ", " +
              std::to_string(out[0].size()) + " bytes" + (ok ? "" : ", selftest failed") +
              (cli.empty() ? " (library)" : " (cli)")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cli;
  unsigned threads = 1;
  app.add_option("--cli", cli, "path to the bpolsep executable");
  app.add_option("--threads", threads, "worker threads for the scaling runs");
  CLI11_PARSE(app, argc, argv);

  const SelftestOptions base;
  const auto start = Clock::now();
  std::vector<Line> lines;
  auto step = [&](Line l) {
    print(l);
    lines.push_back(std::move(l));
  };
  try {
    step(curated(base));
    step(tiny(base));
    step(oracles(base));
    step(monotone(base));
    step(scaling(cli, threads));
    step(determinism(base, cli));
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  const bool all = std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.pass; });
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILED") << fmt(" (%.0fs)", seconds_since(start))
            << std::endl;
  return all ? 0 : 1;
}
