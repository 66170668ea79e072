#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "automaton.hpp"
#include "problem.hpp"
#include "quadset.hpp"

namespace bpolsep {

using Rng = std::mt19937_64;

/// Every (q, a, r) present independently with probability `density`.
inline Nfa random_nfa(Rng& rng, std::size_t n, const Alphabet& alphabet, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Transition> ts;
  for (StateId q = 0; q < n; ++q)
    for (Symbol a = 0; a < alphabet.size(); ++a)
      for (StateId r = 0; r < n; ++r)
        if (coin(rng)) ts.push_back({q, a, r});
  return Nfa(n, alphabet, std::move(ts));
}

inline EpsNfa random_eps_nfa(Rng& rng, std::size_t n, const Alphabet& alphabet, double density, double eps_density) {
  std::bernoulli_distribution coin(density), eps_coin(eps_density);
  std::vector<Transition> ts;
  for (StateId q = 0; q < n; ++q)
    for (StateId r = 0; r < n; ++r) {
      for (Symbol a = 0; a < alphabet.size(); ++a)
        if (coin(rng)) ts.push_back({q, a, r});
      if (q != r && eps_coin(rng)) ts.push_back({q, kEpsilon, r});
    }
  return EpsNfa(n, alphabet, std::move(ts));
}

/// Random automaton in which every state lies on a path from state 0 to
/// state n-1: a random Hamiltonian path 0 -> ... -> n-1 plus about
/// `out_degree` further transitions per state.
inline Nfa random_trimmed_nfa(Rng& rng, std::size_t n, const Alphabet& alphabet, double out_degree) {
  std::vector<StateId> order(n);
  std::iota(order.begin(), order.end(), 0U);
  if (n > 2) std::shuffle(order.begin() + 1, order.end() - 1, rng);
  std::uniform_int_distribution<Symbol> letter(0, static_cast<Symbol>(alphabet.size() - 1));
  std::uniform_int_distribution<StateId> state(0, static_cast<StateId>(n - 1));
  std::vector<Transition> ts;
  for (std::size_t i = 0; i + 1 < n; ++i) ts.push_back({order[i], letter(rng), order[i + 1]});
  std::poisson_distribution<int> extra(out_degree);
  for (StateId q = 0; q < n; ++q)
    for (int k = extra(rng); k > 0; --k) ts.push_back({q, letter(rng), state(rng)});
  return Nfa(n, alphabet, std::move(ts));
}

/// Two languages over a random trimmed automaton: L(0, n-1) and L(j, n-1).
inline SeparationProblem random_trimmed_problem(Rng& rng, std::size_t n, const Alphabet& alphabet,
                                                double out_degree) {
  Nfa a = random_trimmed_nfa(rng, n, alphabet, out_degree);
  std::uniform_int_distribution<StateId> state(0, static_cast<StateId>(n - 1));
  const StateId j = state(rng);
  return {a, make_state_set(n, {0}), make_state_set(n, {static_cast<StateId>(n - 1)}), make_state_set(n, {j}),
          make_state_set(n, {static_cast<StateId>(n - 1)})};
}

inline StateSet random_state_set(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  StateSet s(n);
  for (StateId q = 0; q < n; ++q)
    if (coin(rng)) s.set(q);
  return s;
}

inline QuadSet random_quadset(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  QuadSet s(n);
  for (std::size_t i = 0; i < n * n * n * n; ++i)
    if (coin(rng)) s.insert(s.decode(i));
  return s;
}

/// S subset of S', both random.
inline std::pair<QuadSet, QuadSet> random_nested_quadsets(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuadSet big = random_quadset(rng, n, u(rng));
  QuadSet keep = random_quadset(rng, n, u(rng));
  QuadSet small = big & keep;
  return {std::move(small), std::move(big)};
}

}  // namespace bpolsep
