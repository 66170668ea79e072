#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixpoint.hpp"
#include "problem.hpp"
#include "random.hpp"
#include "validation.hpp"

namespace bpolsep {

// ---------------------------------------------------------------------------
// Curated instances

struct CuratedExpectation {
  ClassSpec cls;
  bool separable;
};

struct CuratedInstance {
  std::string name;
  std::string alphabet;
  std::string r0, r1;
  std::vector<CuratedExpectation> expected;
};

inline std::vector<CuratedExpectation> expect_all(bool separable) {
  std::vector<CuratedExpectation> out;
  for (auto c : all_class_specs()) out.push_back({c, separable});
  return out;
}

inline std::vector<CuratedInstance> curated_instances() {
  using G = GroupClass;
  return {
      // A common word defeats every separator.
      {"a-vs-a", "ab", "a", "a", expect_all(false)},
      // Even length vs odd length: the parity language separates whenever
      // the class can count; piecewise testable languages cannot.
      {"even-vs-odd", "ab", "(aa)*", "a(aa)*",
       {{{G::ST, false}, false},
        {{G::MOD, false}, true},
        {{G::MOD, true}, true},
        {{G::AMT, false}, true},
        {{G::AMT, true}, true},
        {{G::GR, false}, true},
        {{G::GR, true}, true}}},
      // (ab)^k and (ab)^k aa (ab)^k share all subwords of length <= k, but
      // "contains the factor aa" is a dot-depth-one property, and "an a at an
      // even position" is available as soon as the class can count length.
      {"alternating-vs-aa-factor", "ab", "(ab)*", "(a|b)*aa(a|b)*",
       {{{G::ST, false}, false},
        {{G::ST, true}, true},
        {{G::MOD, false}, true},
        {{G::MOD, true}, true},
        {{G::AMT, false}, true},
        {{G::AMT, true}, true},
        {{G::GR, false}, true},
        {{G::GR, true}, true}}},
      // The subword aba occurs in every word of the second language only.
      {"ab-vs-abab-plus", "ab", "ab", "(ab)(ab)+", expect_all(true)},
  };
}

// ---------------------------------------------------------------------------
// Independent reference checks (deliberately naive, no shared code with the
// backends beyond the automaton type).

namespace reference {

/// Residues mod m of the lengths of L_b(src, dst), by Kleene iteration.
inline std::vector<std::vector<bool>> length_residues(const EpsNfa& b, StateId src, std::uint64_t m) {
  std::vector<std::vector<bool>> r(b.state_count(), std::vector<bool>(m, false));
  r[src][0] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : b.transitions())
      for (std::uint64_t x = 0; x < m; ++x) {
        if (!r[t.src][x]) continue;
        const std::uint64_t y = t.symbol == kEpsilon ? x : (x + 1) % m;
        if (!r[t.dst][y]) r[t.dst][y] = changed = true;
      }
  }
  return r;
}

/// MOD inseparability by sweeping every modulus up to max_m.
inline bool mod_sweep_inseparable(const EpsNfa& b, StateId src, StateId dst, std::uint64_t max_m = 64) {
  for (std::uint64_t m = 1; m <= max_m; ++m)
    if (!length_residues(b, src, m)[dst][0]) return false;
  return true;
}

/// Some word of L_b(src, dst) has every letter count divisible by its modulus.
inline bool parikh_zero(const EpsNfa& b, StateId src, StateId dst, const std::vector<std::uint64_t>& mod) {
  const std::size_t k = mod.size();
  std::uint64_t cells = 1;
  for (auto m : mod) cells *= m;
  std::vector<std::vector<bool>> r(b.state_count(), std::vector<bool>(cells, false));
  auto digit = [&](std::uint64_t code, std::size_t i) {
    for (std::size_t j = k; j-- > i + 1;) code /= mod[j];
    return code % mod[i];
  };
  auto bump = [&](std::uint64_t code, std::size_t i) {
    std::uint64_t weight = 1;
    for (std::size_t j = k; j-- > i + 1;) weight *= mod[j];
    const std::uint64_t d = digit(code, i);
    return code - d * weight + ((d + 1) % mod[i]) * weight;
  };
  r[src][0] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : b.transitions())
      for (std::uint64_t x = 0; x < cells; ++x) {
        if (!r[t.src][x]) continue;
        const std::uint64_t y = t.symbol == kEpsilon ? x : bump(x, t.symbol);
        if (!r[t.dst][y]) r[t.dst][y] = changed = true;
      }
  }
  return r[dst][0];
}

inline bool amt_sweep_inseparable(const EpsNfa& b, StateId src, StateId dst, std::uint64_t max_m = 12) {
  const std::size_t k = b.alphabet().size();
  std::vector<std::uint64_t> mod(k, 1);
  while (true) {
    if (!parikh_zero(b, src, dst, mod)) return false;
    std::size_t i = 0;
    while (i < k && ++mod[i] > max_m) mod[i++] = 1;
    if (i == k) return true;
  }
}

/// Group elements alpha(w) for w in L_b(src, dst).
inline bool morphism_hits_identity(const EpsNfa& b, StateId src, StateId dst, const GroupCatalogEntry& g,
                                   const std::vector<std::uint32_t>& images) {
  std::vector<std::vector<bool>> r(b.state_count(), std::vector<bool>(g.order(), false));
  r[src][g.identity()] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : b.transitions())
      for (std::uint32_t x = 0; x < g.order(); ++x) {
        if (!r[t.src][x]) continue;
        const std::uint32_t y = t.symbol == kEpsilon ? x : g.mul(x, images[t.symbol]);
        if (!r[t.dst][y]) r[t.dst][y] = changed = true;
      }
  }
  return r[dst][g.identity()];
}

/// common[(q*n + s)] = set of (r*n + t) with L(q, r) and L(s, t) sharing a word.
inline std::vector<DenseBitset> common_word_pairs(const Nfa& a) {
  const std::size_t n = a.state_count();
  std::vector<DenseBitset> out(n * n, DenseBitset(n * n));
  for (std::size_t start = 0; start < n * n; ++start) {
    auto& seen = out[start];
    std::vector<std::size_t> stack{start};
    seen.set(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      for (const auto& x : a.out(static_cast<StateId>(c / n)))
        for (const auto& y : a.out(static_cast<StateId>(c % n)))
          if (x.symbol == y.symbol && seen.insert(x.dst * n + y.dst)) stack.push_back(x.dst * n + y.dst);
    }
  }
  return out;
}

}  // namespace reference

// ---------------------------------------------------------------------------
// Report

struct CheckResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> notes;
  double wall_ms = 0;

  bool passed() const { return violations == 0; }

  void fail(const std::string& msg) {
    ++violations;
    if (notes.size() < 20) notes.push_back("violation: " + msg);
  }
};

struct SelftestReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }

  nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json e{{"name", c.name}, {"passed", c.passed()}, {"cases", c.cases}, {"violations", c.violations},
                       {"notes", c.notes}};
      if (with_timing) e["wall_ms"] = c.wall_ms;
      j["checks"].push_back(std::move(e));
    }
    return j;
  }

  std::string to_text(bool with_timing = true) const {
    std::string out;
    for (const auto& c : checks) {
      out += (c.passed() ? "PASS " : "FAIL ") + c.name + " cases=" + std::to_string(c.cases) +
             " violations=" + std::to_string(c.violations);
      if (with_timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.1fms", c.wall_ms);
        out += buf;
      }
      out += '\n';
      for (const auto& n : c.notes) out += "  " + n + '\n';
    }
    out += passed() ? "selftest: all checks passed\n" : "selftest: FAILED\n";
    return out;
  }
};

template <class F>
CheckResult timed_check(std::string name, F&& body) {
  CheckResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Suites

struct SelftestOptions {
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  /// Random automata with 3 states for the invariant suite (all 1- and
  /// 2-state automata over two letters are always included).
  std::size_t invariant_samples = 300;
  std::size_t mod_samples = 300;
  std::size_t amt_samples = 150;
  std::size_t gr_samples = 150;
  std::size_t tau_pairs = 500;
  /// Replace the ST backend by one that separates everything.
  bool inject_fault = false;
};

inline Oracle selftest_oracle(GroupClass g, const SelftestOptions& o) {
  if (!o.inject_fault || g != GroupClass::ST) return Oracle(g);
  struct Broken final : OracleSession {
    std::size_t n;
    explicit Broken(std::size_t states) : n(states) {}
    StateSet inseparable_targets(StateId) const override { return StateSet(n); }
  };
  return Oracle(g, [](const EpsNfa& b) -> std::unique_ptr<OracleSession> {
    return std::make_unique<Broken>(b.state_count());
  });
}

inline std::string quad_string(const Quad& x) {
  return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
         std::to_string(x[3]) + ")";
}

inline CheckResult run_curated(const SelftestOptions& o) {
  return timed_check("curated-instances", [&](CheckResult& r) {
    const FixpointOptions fo{o.threads};
    for (const auto& inst : curated_instances()) {
      const Alphabet alphabet(inst.alphabet);
      const auto p = problem_from_regexes(inst.r0, inst.r1, alphabet);
      for (const auto& e : inst.expected) {
        ++r.cases;
        const Oracle oracle = selftest_oracle(e.cls.base, o);
        FixpointTrace trace;
        const QuadSet full = full_inseparable_quads(p.nfa, e.cls, oracle, &trace, fo);
        const auto witness = least_witness(full, p.i1, p.f1, p.i2, p.f2);
        const bool separable = !witness;
        // Same quadruple set with the languages exchanged.
        const bool swapped_separable = !least_witness(full, p.i2, p.f2, p.i1, p.f1);
        std::string line = inst.name + " " + e.cls.name() + ": " + (separable ? "separable" : "inseparable");
        if (witness) line += " witness " + quad_string(*witness);
        line += " rounds " + std::to_string(trace.rounds());
        r.notes.push_back(line);
        if (separable != e.separable) r.fail(inst.name + " " + e.cls.name() + " has the wrong verdict");
        if (separable != swapped_separable) r.fail(inst.name + " " + e.cls.name() + " depends on the input order");
      }
    }
    // Piecewise-testable reference and saturation families.
    const Alphabet ab("ab");
    const auto parity = problem_from_regexes("(aa)*", "a(aa)*", ab);
    const auto alternating = problem_from_regexes("(ab)*", "(a|b)*aa(a|b)*", ab);
    for (std::size_t k = 1; k <= 3; ++k) {
      r.cases += 2;
      if (pt_separable_at_k(parity.nfa, parity.i1, parity.f1, parity.i2, parity.f2, k))
        r.fail("(aa)* vs a(aa)* separated by subwords of length " + std::to_string(k));
      if (pt_separable_at_k(alternating.nfa, alternating.i1, alternating.f1, alternating.i2, alternating.f2, k))
        r.fail("(ab)* vs A*aaA* separated by subwords of length " + std::to_string(k));
    }
    for (std::size_t k = 1; k <= 8; ++k) {
      r.cases += 2;
      const std::string even(2 * k, 'a');
      if (!(subword_profile(even, k) == subword_profile(even + "a", k)))
        r.fail("a^2k and a^(2k+1) differ at k = " + std::to_string(k));
      std::string u;
      for (std::size_t i = 0; i < k; ++i) u += "ab";
      if (!(subword_profile(u, k) == subword_profile(u + "aa" + u, k)))
        r.fail("(ab)^k and (ab)^k aa (ab)^k differ at k = " + std::to_string(k));
    }
    // The complement of A*aaA* contains (ab)*: the two languages are disjoint.
    ++r.cases;
    {
      const auto& p = alternating;
      bool meet = false;
      p.i1.for_each([&](std::size_t i) {
        p.f1.for_each([&](std::size_t f) {
          p.i2.for_each([&](std::size_t j) {
            p.f2.for_each([&](std::size_t g) {
              meet |= intersect_nonempty(p.nfa,
                                         {{static_cast<StateId>(i), static_cast<StateId>(f)},
                                          {static_cast<StateId>(j), static_cast<StateId>(g)}},
                                         false);
            });
          });
        });
      });
      if (meet) r.fail("(ab)* meets A*aaA*");
    }
    ++r.cases;
    if (dd1_collision_search(alternating.nfa, alternating.i1, alternating.f1, alternating.i2, alternating.f2, 2, 10))
      r.fail("dot-depth-one profile collision between (ab)* and A*aaA*");
  });
}

/// Every engine invariant on one automaton.
inline void check_engine_invariants(const Nfa& a, Rng& rng, const SelftestOptions& o, CheckResult& r) {
  const std::size_t n = a.state_count();
  const FixpointOptions fo{o.threads};
  const std::string tag = "[" + format_nfa(a) + "]";
  const auto common = reference::common_word_pairs(a);
  const QuadSet letters = letter_quads(a);
  std::vector<StateSet> reach(n);
  for (StateId q = 0; q < n; ++q) reach[q] = reachable_from(a, make_state_set(n, {q}));

  std::map<std::string, QuadSet> full_of;
  for (auto cls : all_class_specs()) {
    const Oracle oracle = selftest_oracle(cls.base, o);
    FixpointTrace trace;
    QuadSet controlled;
    QuadSet full;
    try {
      full = full_inseparable_quads(a, cls, oracle, &trace, fo, &controlled);
    } catch (const BudgetExceeded&) {
      r.notes.push_back("undecided within budget: " + cls.name() + " " + tag);
      continue;
    }
    const std::string where = cls.name() + " " + tag;
    r.cases += 8;
    const QuadSet again = cls.plus ? tau_plus(a, controlled, oracle, fo) : tau(a, controlled, oracle, fo);
    if (!(again == controlled)) r.fail("controlled set is not a fixpoint: " + where);
    if (!controlled.is_symmetric() || !full.is_symmetric()) r.fail("asymmetric quadruple set: " + where);
    if (!letters.is_subset_of(full)) r.fail("letter quadruples missing: " + where);
    if (!(compose_closure(full) == full)) r.fail("full set not closed under composition: " + where);
    if (!std::is_sorted(trace.iterations.rbegin(), trace.iterations.rend())) r.fail("iteration sizes grow: " + where);
    if (trace.rounds() > n * n * n * n + 1) r.fail("too many rounds: " + where);
    bool lower = true, upper = true;
    for (StateId q = 0; q < n; ++q)
      for (StateId rr = 0; rr < n; ++rr)
        for (StateId s = 0; s < n; ++s)
          for (StateId t = 0; t < n; ++t) {
            const bool in = full.contains(q, rr, s, t);
            if (common[q * n + s].test(rr * n + t) && !in) lower = false;
            if (in && !(reach[q].test(rr) && reach[s].test(t))) upper = false;
          }
    if (!lower) r.fail("a quadruple with a common word is missing: " + where);
    if (!upper) r.fail("a quadruple with an empty side is present: " + where);
    full_of.emplace(cls.name(), std::move(full));
  }

  auto sub = [&](const std::string& small, const std::string& big) {
    if (!full_of.count(small) || !full_of.count(big)) return;
    ++r.cases;
    if (!full_of.at(small).is_subset_of(full_of.at(big)))
      r.fail("class monotonicity I[" + small + "] within I[" + big + "] fails: " + tag);
  };
  for (const char* g : {"st", "mod", "amt", "gr"}) sub(std::string("bpol-") + g + "+", std::string("bpol-") + g);
  for (const char* p : {"", "+"}) {
    const std::string s = p;
    sub("bpol-gr" + s, "bpol-mod" + s);
    sub("bpol-mod" + s, "bpol-st" + s);
    sub("bpol-gr" + s, "bpol-amt" + s);
    sub("bpol-amt" + s, "bpol-st" + s);
  }

  // Subword reference against the BPol(ST) decision on random language pairs.
  if (full_of.count("bpol-st")) {
    const QuadSet& st = full_of.at("bpol-st");
    const StateSet i1 = random_state_set(rng, n, 0.5), f1 = random_state_set(rng, n, 0.5);
    const StateSet i2 = random_state_set(rng, n, 0.5), f2 = random_state_set(rng, n, 0.5);
    const bool separable = !least_witness(st, i1, f1, i2, f2);
    for (std::size_t k = 1; k <= 3; ++k) {
      ++r.cases;
      if (pt_separable_at_k(a, i1, f1, i2, f2, k) && !separable)
        r.fail("subwords of length " + std::to_string(k) + " separate a BPol(ST)-inseparable pair: " + tag);
    }
    if (separable) {
      ++r.cases;
      std::set<std::set<std::string>> left;
      for (const auto& u : enumerate_words(a, i1, f1, 8, 2000)) left.insert(subword_profile(u, 3).subwords);
      for (const auto& v : enumerate_words(a, i2, f2, 8, 2000))
        if (left.count(subword_profile(v, 3).subwords)) {
          r.fail("subword collision on a BPol(ST)-separable pair: " + tag);
          break;
        }
    }
  }
}

inline std::vector<Nfa> tiny_automata(Rng& rng, std::size_t samples) {
  const Alphabet ab("ab");
  std::vector<Nfa> out;
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t slots = n * 2 * n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
      std::vector<Transition> ts;
      for (std::size_t i = 0; i < slots; ++i)
        if (mask >> i & 1U)
          ts.push_back({static_cast<StateId>(i / (2 * n)), static_cast<Symbol>((i / n) % 2),
                        static_cast<StateId>(i % n)});
      out.emplace_back(n, ab, std::move(ts));
    }
  }
  std::uniform_real_distribution<double> density(0.1, 0.6);
  for (std::size_t i = 0; i < samples; ++i) out.push_back(random_nfa(rng, 3, ab, density(rng)));
  return out;
}

inline CheckResult run_engine_invariants(const SelftestOptions& o) {
  return timed_check("engine-invariants", [&](CheckResult& r) {
    Rng rng(o.seed);
    const auto automata = tiny_automata(rng, o.invariant_samples);
    for (const auto& a : automata) check_engine_invariants(a, rng, o, r);
    r.notes.insert(r.notes.begin(), std::to_string(automata.size()) + " automata");
  });
}

inline CheckResult run_tau_monotonicity(const SelftestOptions& o) {
  return timed_check("tau-monotonicity", [&](CheckResult& r) {
    Rng rng(o.seed + 1);
    const Alphabet ab("ab");
    std::uniform_int_distribution<std::size_t> size(1, 4);
    std::uniform_real_distribution<double> density(0.1, 0.5);
    const FixpointOptions fo{o.threads};
    for (std::size_t i = 0; i < o.tau_pairs; ++i) {
      const Nfa a = random_nfa(rng, size(rng), ab, density(rng));
      const auto [small, big] = random_nested_quadsets(rng, a.state_count());
      const GroupClass g = kAllGroupClasses[i % 4];
      const Oracle oracle = selftest_oracle(g, o);
      const std::string where = std::string(to_string(g)) + " [" + format_nfa(a) + "]";
      try {
        const QuadSet t_small = tau(a, small, oracle, fo), t_big = tau(a, big, oracle, fo);
        const QuadSet p_small = tau_plus(a, small, oracle, fo), p_big = tau_plus(a, big, oracle, fo);
        r.cases += 4;
        if (!t_small.is_subset_of(t_big)) r.fail("tau is not monotone: " + where);
        if (!p_small.is_subset_of(p_big)) r.fail("tau+ is not monotone: " + where);
        if (!p_small.is_subset_of(t_small) || !p_big.is_subset_of(t_big)) r.fail("tau+ exceeds tau: " + where);
        if (!t_big.is_symmetric() && big.is_symmetric()) r.fail("tau breaks symmetry: " + where);
      } catch (const BudgetExceeded&) {
        r.notes.push_back("undecided within budget: " + where);
      }
    }
  });
}

inline CheckResult run_mod_crosscheck(const SelftestOptions& o) {
  return timed_check("oracle-mod-vs-sweep", [&](CheckResult& r) {
    Rng rng(o.seed + 2);
    const Alphabet ab("ab");
    std::uniform_int_distribution<std::size_t> size(1, 4);
    std::uniform_real_distribution<double> density(0.05, 0.4);
    for (std::size_t i = 0; i < o.mod_samples; ++i) {
      const std::size_t n = size(rng);
      const EpsNfa b = random_eps_nfa(rng, n, ab, density(rng), 0.15);
      const ModSession mod(b);
      for (StateId src = 0; src < n; ++src) {
        const StateSet targets = mod.inseparable_targets(src);
        for (StateId dst = 0; dst < n; ++dst) {
          ++r.cases;
          if (targets.test(dst) != reference::mod_sweep_inseparable(b, src, dst))
            r.fail("MOD disagrees with the modulus sweep on (" + std::to_string(src) + "," + std::to_string(dst) +
                   ") [" + format_nfa(b) + "]");
          const OracleAnswer ans = mod.answer(src, dst);
          if (ans.modulus && reference::length_residues(b, src, *ans.modulus)[dst][0])
            r.fail("MOD evidence modulus divides a word length [" + format_nfa(b) + "]");
        }
      }
    }
  });
}

inline CheckResult run_amt_crosscheck(const SelftestOptions& o) {
  return timed_check("oracle-amt-vs-sweep", [&](CheckResult& r) {
    Rng rng(o.seed + 3);
    std::uniform_int_distribution<std::size_t> size(1, 3), letters(1, 2);
    std::uniform_real_distribution<double> density(0.05, 0.45);
    for (std::size_t i = 0; i < o.amt_samples; ++i) {
      const std::size_t n = size(rng);
      const EpsNfa b = random_eps_nfa(rng, n, Alphabet(letters(rng) == 1 ? "a" : "ab"), density(rng), 0.15);
      try {
        const AmtSession amt(b, {});
        for (StateId src = 0; src < n; ++src) {
          const StateSet targets = amt.inseparable_targets(src);
          for (StateId dst = 0; dst < n; ++dst) {
            ++r.cases;
            if (targets.test(dst) != reference::amt_sweep_inseparable(b, src, dst))
              r.fail("AMT disagrees with the modulus sweep on (" + std::to_string(src) + "," + std::to_string(dst) +
                     ") [" + format_nfa(b) + "]");
          }
        }
      } catch (const BudgetExceeded&) {
        r.notes.push_back("undecided within budget [" + format_nfa(b) + "]");
      }
    }
  });
}

inline CheckResult run_gr_crosscheck(const SelftestOptions& o) {
  return timed_check("oracle-gr-vs-catalog", [&](CheckResult& r) {
    Rng rng(o.seed + 4);
    const Alphabet ab("ab");
    std::uniform_int_distribution<std::size_t> size(1, 4);
    std::uniform_real_distribution<double> density(0.05, 0.4);
    const auto catalog = default_group_catalog();
    std::uint64_t warnings = 0, separated = 0;
    for (std::size_t i = 0; i < o.gr_samples; ++i) {
      const std::size_t n = size(rng);
      const EpsNfa b = random_eps_nfa(rng, n, ab, density(rng), 0.15);
      const GrSession gr(b);
      const auto loop = gr_loop_rule_relation(b);
      for (StateId src = 0; src < n; ++src) {
        const StateSet targets = gr.inseparable_targets(src);
        if (!loop[src].is_subset_of(targets)) r.fail("loop rule derives a pair the closure misses [" + format_nfa(b) + "]");
        for (StateId dst = 0; dst < n; ++dst) {
          ++r.cases;
          GroupSearchOptions gso;
          gso.seed = o.seed + i;
          const auto m = brute_force_group_search(b, src, dst, catalog, gso);
          if (m) {
            ++separated;
            if (reference::morphism_hits_identity(b, src, dst, catalog[m->catalog_index], m->images))
              r.fail("catalog morphism does not separate [" + format_nfa(b) + "]");
            if (targets.test(dst))
              r.fail("GR says inseparable but " + m->group + " separates (" + std::to_string(src) + "," +
                     std::to_string(dst) + ") [" + format_nfa(b) + "]");
          } else if (!targets.test(dst)) {
            ++warnings;
          }
        }
      }
    }
    r.notes.push_back(std::to_string(separated) + " queries separated by a catalog group");
    r.notes.push_back(std::to_string(warnings) + " completeness warnings (separable, no catalog morphism found)");
  });
}

inline SelftestReport run_selftest(const SelftestOptions& o) {
  SelftestReport rep;
  rep.checks.push_back(run_curated(o));
  rep.checks.push_back(run_engine_invariants(o));
  rep.checks.push_back(run_tau_monotonicity(o));
  rep.checks.push_back(run_mod_crosscheck(o));
  rep.checks.push_back(run_amt_crosscheck(o));
  rep.checks.push_back(run_gr_crosscheck(o));
  return rep;
}

}  // namespace bpolsep
