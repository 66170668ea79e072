#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "algorithms.hpp"
#include "class_spec.hpp"
#include "oracle.hpp"
#include "quadset.hpp"

namespace bpolsep {

inline StateId encode_triple(StateId q1, StateId q2, StateId q3, std::size_t n) {
  if (q1 >= n || q2 >= n || q3 >= n) throw std::out_of_range("encode_triple: component out of range");
  return static_cast<StateId>((q1 * n + q2) * n + q3);
}

inline std::array<StateId, 3> decode_triple(StateId x, std::size_t n) {
  if (x >= n * n * n) throw std::out_of_range("decode_triple: index out of range");
  return {static_cast<StateId>(x / (n * n)), static_cast<StateId>((x / n) % n), static_cast<StateId>(x % n)};
}

/// Memo for "some nonempty word loops at every state of this set", keyed by
/// the sorted set of distinct states. Bound to one automaton.
class LoopWordCache {
 public:
  explicit LoopWordCache(const Nfa& a) : a_(a) {}

  bool common_loop(std::initializer_list<StateId> states) {
    std::vector<StateId> key(states);
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::pair<StateId, StateId>> pairs;
    for (auto q : key) pairs.emplace_back(q, q);
    const bool r = intersect_nonempty(a_, pairs, true);
    memo_.emplace(std::move(key), r);
    return r;
  }

  const Nfa& automaton() const { return a_; }

 private:
  const Nfa& a_;
  std::map<std::vector<StateId>, bool> memo_;
};

namespace detail {

inline std::vector<Transition> triple_letter_transitions(const Nfa& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<std::pair<StateId, StateId>>> by_symbol(a.alphabet().size());
  for (const auto& t : a.transitions()) by_symbol[t.symbol].emplace_back(t.src, t.dst);
  std::vector<Transition> out;
  for (Symbol c = 0; c < by_symbol.size(); ++c) {
    const auto& d = by_symbol[c];
    for (const auto& [s1, t1] : d)
      for (const auto& [s2, t2] : d)
        for (const auto& [s3, t3] : d)
          out.push_back({encode_triple(s1, s2, s3, n), c, encode_triple(t1, t2, t3, n)});
  }
  return out;
}

template <class Guard>
EpsNfa build_aux(const Nfa& a, const QuadSet& s, Guard&& guard) {
  const std::size_t n = a.state_count();
  if (s.state_count() != n) throw std::invalid_argument("quadruple set does not match the automaton");
  auto ts = triple_letter_transitions(a);
  s.for_each([&](const Quad& x) {
    // x = (q2, r2, q3, r3)
    for (StateId q1 = 0; q1 < n; ++q1)
      if (guard(q1, x))
        ts.push_back({encode_triple(q1, x[0], x[2], n), kEpsilon, encode_triple(q1, x[1], x[3], n)});
  });
  return EpsNfa(n * n * n, a.alphabet(), std::move(ts));
}

}  // namespace detail

/// Auxiliary automaton B_S over Q^3: synchronous letter moves, plus an
/// epsilon edge (q1,q2,q3) -> (q1,r2,r3) for every q1 and (q2,r2,q3,r3) in S.
inline EpsNfa build_bs(const Nfa& a, const QuadSet& s) {
  return detail::build_aux(a, s, [](StateId, const Quad&) { return true; });
}

/// B_S restricted to the epsilon edges whose five states q1,q2,q3,r2,r3 share
/// a nonempty loop word.
inline EpsNfa build_bs_plus(const Nfa& a, const QuadSet& s, LoopWordCache& cache) {
  if (&cache.automaton() != &a) throw std::invalid_argument("loop cache bound to another automaton");
  return detail::build_aux(a, s, [&](StateId q1, const Quad& x) {
    return cache.common_loop({q1, x[0], x[2], x[1], x[3]});
  });
}

inline EpsNfa build_bs_plus(const Nfa& a, const QuadSet& s) {
  LoopWordCache cache(a);
  return build_bs_plus(a, s, cache);
}

struct FixpointOptions {
  unsigned threads = 1;
};

/// Quadruples (q,r,s,t) such that {eps} is inseparable both from
/// L_b((s,q,s),(t,r,t)) and from L_b((q,s,q),(r,t,r)).
/// Every source (x,y,x) is one oracle session query, spread over threads.
inline QuadSet tau_on(const Nfa& a, const EpsNfa& b, const Oracle& oracle, const FixpointOptions& options = {}) {
  const std::size_t n = a.state_count();
  const auto session = oracle.bind(b);
  std::vector<StateSet> targets(n * n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next++) < n * n;) {
        const auto x = static_cast<StateId>(i / n), y = static_cast<StateId>(i % n);
        targets[i] = session->inseparable_targets(encode_triple(x, y, x, n));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n * n;
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(n * n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  QuadSet out(n);
  for (StateId q = 0; q < n; ++q)
    for (StateId r = 0; r < n; ++r)
      for (StateId s = 0; s < n; ++s)
        for (StateId t = 0; t < n; ++t)
          if (targets[s * n + q].test(encode_triple(t, r, t, n)) && targets[q * n + s].test(encode_triple(r, t, r, n)))
            out.insert(q, r, s, t);
  return out;
}

inline QuadSet tau(const Nfa& a, const QuadSet& s, const Oracle& oracle, const FixpointOptions& options = {}) {
  return tau_on(a, build_bs(a, s), oracle, options);
}

inline QuadSet tau_plus(const Nfa& a, const QuadSet& s, const Oracle& oracle, const FixpointOptions& options = {}) {
  return tau_on(a, build_bs_plus(a, s), oracle, options);
}

struct FixpointTrace {
  /// |S_0|, |S_1|, ... up to and including the repeated fixpoint size.
  std::vector<std::size_t> iterations;
  std::uint64_t oracle_calls = 0;
  std::chrono::nanoseconds wall_time{0};

  std::size_t rounds() const { return iterations.empty() ? 0 : iterations.size() - 1; }
};

/// S_0 = Q^4, S_k = tau(S_{k-1}) (tau_plus for a "+" class) until stable.
inline QuadSet greatest_fixpoint(const Nfa& a, ClassSpec cls, const Oracle& oracle, FixpointTrace* trace = nullptr,
                                 const FixpointOptions& options = {}) {
  if (oracle.base() != cls.base) throw std::invalid_argument("oracle does not match the class");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = a.state_count();
  LoopWordCache cache(a);
  QuadSet s = QuadSet::full(n);
  FixpointTrace local;
  local.iterations.push_back(s.size());
  while (true) {
    const EpsNfa b = cls.plus ? build_bs_plus(a, s, cache) : build_bs(a, s);
    QuadSet next = tau_on(a, b, oracle, options);
    local.oracle_calls += static_cast<std::uint64_t>(n) * n * n * n;
    local.iterations.push_back(next.size());
    if (next == s) break;
    s = std::move(next);
  }
  local.wall_time = std::chrono::steady_clock::now() - start;
  if (trace) {
    trace->iterations = std::move(local.iterations);
    trace->oracle_calls += local.oracle_calls;
    trace->wall_time += local.wall_time;
  }
  return s;
}

/// {(q,r,s,t) : some letter c has q -c-> r and s -c-> t}.
inline QuadSet letter_quads(const Nfa& a) {
  QuadSet out(a.state_count());
  for (const auto& x : a.transitions())
    for (const auto& y : a.transitions())
      if (x.symbol == y.symbol) out.insert(x.src, x.dst, y.src, y.dst);
  return out;
}

/// Least superset closed under (q1,r1,s1,t1), (r1,r2,t1,t2) -> (q1,r2,s1,t2).
inline QuadSet compose_closure(const QuadSet& seed) {
  const std::size_t n = seed.state_count();
  QuadSet out(n);
  // by_start[(q,s)] and by_end[(r,t)] list the members with that first / second pair.
  std::vector<std::vector<Quad>> by_start(n * n), by_end(n * n);
  std::vector<Quad> work;
  auto add = [&](const Quad& x) {
    if (!out.insert(x)) return;
    by_start[x[0] * n + x[2]].push_back(x);
    by_end[x[1] * n + x[3]].push_back(x);
    work.push_back(x);
  };
  seed.for_each(add);
  while (!work.empty()) {
    const Quad x = work.back();
    work.pop_back();
    const auto& right = by_start[x[1] * n + x[3]];
    for (std::size_t i = 0, m = right.size(); i < m; ++i) {
      const Quad y = right[i];
      add({x[0], y[1], x[2], y[3]});
    }
    const auto& left = by_end[x[0] * n + x[2]];
    for (std::size_t i = 0, m = left.size(); i < m; ++i) {
      const Quad y = left[i];
      add({y[0], x[1], y[2], x[3]});
    }
  }
  return out;
}

/// Inseparable quadruples of the class: the controlled set closed under
/// letter steps and composition.
inline QuadSet full_inseparable_quads(const Nfa& a, ClassSpec cls, const Oracle& oracle,
                                      FixpointTrace* trace = nullptr, const FixpointOptions& options = {},
                                      QuadSet* controlled = nullptr) {
  QuadSet c = greatest_fixpoint(a, cls, oracle, trace, options);
  QuadSet full = compose_closure(c | letter_quads(a));
  if (controlled) *controlled = std::move(c);
  return full;
}

enum class Outcome { Separable, Inseparable };

struct Verdict {
  Outcome outcome = Outcome::Separable;
  /// Lexicographically least quadruple of I1 x F1 x I2 x F2 in the full set.
  std::optional<Quad> witness;
  std::size_t controlled_size = 0;
  std::size_t full_size = 0;
  FixpointTrace trace;

  bool separable() const { return outcome == Outcome::Separable; }
};

inline std::optional<Quad> least_witness(const QuadSet& full, const StateSet& i1, const StateSet& f1,
                                         const StateSet& i2, const StateSet& f2) {
  for (auto q : i1.members())
    for (auto r : f1.members())
      for (auto s : i2.members())
        for (auto t : f2.members()) {
          const Quad x{static_cast<StateId>(q), static_cast<StateId>(r), static_cast<StateId>(s),
                       static_cast<StateId>(t)};
          if (full.contains(x)) return x;
        }
  return std::nullopt;
}

/// Is L_a(i1, f1) separable from L_a(i2, f2) by the class?
/// Throws BudgetExceeded when the AMT backend gives up.
inline Verdict decide(const Nfa& a, const StateSet& i1, const StateSet& f1, const StateSet& i2, const StateSet& f2,
                      ClassSpec cls, const Oracle& oracle, const FixpointOptions& options = {}) {
  const std::size_t n = a.state_count();
  for (const auto* set : {&i1, &f1, &i2, &f2})
    if (set->universe() != n) throw std::invalid_argument("state set does not match the automaton");
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  QuadSet controlled;
  const QuadSet full = full_inseparable_quads(a, cls, oracle, &v.trace, options, &controlled);
  v.controlled_size = controlled.size();
  v.full_size = full.size();
  v.witness = least_witness(full, i1, f1, i2, f2);
  v.outcome = v.witness ? Outcome::Inseparable : Outcome::Separable;
  v.trace.wall_time = std::chrono::steady_clock::now() - start;
  return v;
}

}  // namespace bpolsep
