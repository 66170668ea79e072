#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "automaton.hpp"

namespace bpolsep {

/// States reachable from `sources` (letters and epsilon edges alike).
template <bool E>
StateSet reachable_from(const BasicNfa<E>& a, const StateSet& sources) {
  StateSet seen = sources;
  std::vector<StateId> stack;
  sources.for_each([&](std::size_t q) { stack.push_back(static_cast<StateId>(q)); });
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const auto& t : a.out(q))
      if (seen.insert(t.dst)) stack.push_back(t.dst);
  }
  return seen;
}

/// States from which some state of `sinks` is reachable.
template <bool E>
StateSet coreachable_to(const BasicNfa<E>& a, const StateSet& sinks) {
  StateSet seen = sinks;
  std::vector<StateId> stack;
  sinks.for_each([&](std::size_t q) { stack.push_back(static_cast<StateId>(q)); });
  const auto all = a.transitions();
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (auto i : a.in(q))
      if (seen.insert(all[i].src)) stack.push_back(all[i].src);
  }
  return seen;
}

/// L_a(q, r) is nonempty. Always true for q == r (empty run).
template <bool E>
bool pair_nonempty(const BasicNfa<E>& a, StateId q, StateId r) {
  if (q >= a.state_count() || r >= a.state_count()) throw std::out_of_range("pair_nonempty: state out of range");
  if (q == r) return true;
  StateSet src(a.state_count());
  src.set(q);
  return reachable_from(a, src).test(r);
}

/// L_a(I, F) is nonempty.
template <bool E>
bool language_nonempty(const BasicNfa<E>& a, const StateSet& initial, const StateSet& final_states) {
  return reachable_from(a, initial).intersects(final_states);
}

/// Is there one word w with w in L_a(q_i, r_i) for every pair, and w nonempty
/// when `require_nonempty_word`? Explored on the fly in the k-fold product.
template <bool E>
bool intersect_nonempty(const BasicNfa<E>& a, const std::vector<std::pair<StateId, StateId>>& pairs,
                        bool require_nonempty_word) {
  if (pairs.empty()) throw std::invalid_argument("intersect_nonempty: no pairs");
  const std::size_t n = a.state_count();
  const std::size_t k = pairs.size();
  for (auto [q, r] : pairs)
    if (q >= n || r >= n) throw std::out_of_range("intersect_nonempty: state out of range");

  // Cheap necessary condition: each component pair must be nonempty on its own.
  for (auto [q, r] : pairs)
    if (!pair_nonempty(a, q, r)) return false;

  std::uint64_t stride = 1;
  {
    long double cap = 2.0L;
    for (std::size_t i = 0; i < k; ++i) cap *= static_cast<long double>(n);
    if (cap > 9.0e18L) throw std::length_error("intersect_nonempty: product too large to index");
    for (std::size_t i = 0; i < k; ++i) stride *= n;
  }
  auto pack = [&](const std::vector<StateId>& t, bool stepped) {
    std::uint64_t code = 0;
    for (auto s : t) code = code * n + s;
    return code + (stepped ? stride : 0);
  };

  std::vector<StateId> start(k), goal(k);
  for (std::size_t i = 0; i < k; ++i) {
    start[i] = pairs[i].first;
    goal[i] = pairs[i].second;
  }
  if (!require_nonempty_word && start == goal) return true;

  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<std::vector<StateId>, bool>> queue;
  seen.insert(pack(start, false));
  queue.emplace_back(start, false);
  const std::uint64_t goal_code = pack(goal, true);
  const std::uint64_t goal_code_unstepped = pack(goal, false);

  auto visit = [&](std::vector<StateId> t, bool stepped) {
    const auto code = pack(t, stepped);
    if (code == goal_code || (!require_nonempty_word && code == goal_code_unstepped)) return true;
    if (seen.insert(code).second) queue.emplace_back(std::move(t), stepped);
    return false;
  };

  while (!queue.empty()) {
    auto [tuple, stepped] = std::move(queue.front());
    queue.pop_front();
    if constexpr (E) {
      // Each component may take an epsilon move independently.
      for (std::size_t i = 0; i < k; ++i) {
        for (const auto& t : a.out(tuple[i])) {
          if (t.symbol != kEpsilon) continue;
          auto next = tuple;
          next[i] = t.dst;
          if (visit(std::move(next), stepped)) return true;
        }
      }
    }
    // Synchronous letter move: enumerate successor combinations letter by letter.
    for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
      std::vector<std::vector<StateId>> succ(k);
      bool dead = false;
      for (std::size_t i = 0; i < k && !dead; ++i) {
        for (const auto& t : a.out(tuple[i]))
          if (t.symbol == sym) succ[i].push_back(t.dst);
        dead = succ[i].empty();
      }
      if (dead) continue;
      std::vector<std::size_t> odometer(k, 0);
      while (true) {
        std::vector<StateId> next(k);
        for (std::size_t i = 0; i < k; ++i) next[i] = succ[i][odometer[i]];
        if (visit(std::move(next), true)) return true;
        std::size_t i = 0;
        while (i < k && ++odometer[i] == succ[i].size()) odometer[i++] = 0;
        if (i == k) break;
      }
    }
  }
  return false;
}

/// The second operand's states appear shifted by `offset` in the union.
struct UnionResult {
  Nfa nfa;
  StateId offset;
};

inline UnionResult disjoint_union(const Nfa& n1, const Nfa& n2) {
  if (!(n1.alphabet() == n2.alphabet())) throw std::invalid_argument("disjoint_union: alphabet mismatch");
  const auto offset = static_cast<StateId>(n1.state_count());
  std::vector<Transition> ts(n1.transitions().begin(), n1.transitions().end());
  for (const auto& t : n2.transitions()) ts.push_back({t.src + offset, t.symbol, t.dst + offset});
  return {Nfa(n1.state_count() + n2.state_count(), n1.alphabet(), std::move(ts)), offset};
}

inline StateSet shift_state_set(const StateSet& s, std::size_t new_universe, StateId offset) {
  StateSet out(new_universe);
  s.for_each([&](std::size_t q) { out.set(q + offset); });
  return out;
}

struct TrimResult {
  Nfa nfa;
  /// old state -> new state, for kept states only.
  std::vector<std::optional<StateId>> renumbering;
};

/// Keeps the states lying on some sources->sinks path, plus the sources
/// themselves. Renumbering preserves the original order.
inline TrimResult trim(const Nfa& a, const StateSet& sources, const StateSet& sinks) {
  const StateSet useful = reachable_from(a, sources) & coreachable_to(a, sinks);
  const StateSet kept = useful | sources;
  std::vector<std::optional<StateId>> map(a.state_count());
  StateId next = 0;
  kept.for_each([&](std::size_t q) { map[q] = next++; });
  std::vector<Transition> ts;
  for (const auto& t : a.transitions())
    if (useful.test(t.src) && useful.test(t.dst)) ts.push_back({*map[t.src], t.symbol, *map[t.dst]});
  return {Nfa(next, a.alphabet(), std::move(ts)), std::move(map)};
}

/// All words of L_a(I, F) of length at most `max_len`, shortest first and
/// lexicographic (alphabet order) within a length.
inline std::vector<std::string> enumerate_words(const Nfa& a, const StateSet& initial, const StateSet& final_states,
                                                std::size_t max_len, std::size_t max_words = 1u << 20) {
  const StateSet live = coreachable_to(a, final_states);
  std::vector<std::string> out;
  std::vector<std::pair<std::string, StateSet>> layer;
  if (initial.intersects(live)) layer.emplace_back(std::string{}, initial & live);
  for (std::size_t len = 0; !layer.empty(); ++len) {
    for (const auto& [w, states] : layer) {
      if (states.intersects(final_states)) {
        out.push_back(w);
        if (out.size() >= max_words) return out;
      }
    }
    if (len == max_len) break;
    std::vector<std::pair<std::string, StateSet>> next;
    for (const auto& [w, states] : layer) {
      for (Symbol sym = 0; sym < a.alphabet().size(); ++sym) {
        StateSet succ(a.state_count());
        states.for_each([&](std::size_t q) {
          for (const auto& t : a.out(static_cast<StateId>(q)))
            if (t.symbol == sym && live.test(t.dst)) succ.set(t.dst);
        });
        if (!succ.empty()) next.emplace_back(w + a.alphabet().symbol(sym), std::move(succ));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// Membership of a word in L_a(I, F).
inline bool accepts(const Nfa& a, const StateSet& initial, const StateSet& final_states, std::string_view word) {
  StateSet cur = initial;
  for (char c : word) {
    auto sym = a.alphabet().index_of(c);
    if (!sym) return false;
    StateSet next(a.state_count());
    cur.for_each([&](std::size_t q) {
      for (const auto& t : a.out(static_cast<StateId>(q)))
        if (t.symbol == *sym) next.set(t.dst);
    });
    cur = std::move(next);
  }
  return cur.intersects(final_states);
}

}  // namespace bpolsep
