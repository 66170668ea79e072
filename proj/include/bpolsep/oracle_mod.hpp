#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "oracle_types.hpp"
#include "scc.hpp"

namespace bpolsep {

/// Per-SCC period of the length weighting (letters 1, epsilon 0): the gcd of
/// all cycle lengths inside the component, 0 when every cycle is an epsilon
/// cycle or the component is acyclic.
inline std::vector<std::uint64_t> length_periods(const EpsNfa& b, const SccDecomposition& scc) {
  const std::size_t n = b.state_count();
  std::vector<std::int64_t> pot(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<std::uint64_t> period(scc.count, 0);
  for (StateId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<StateId> stack{root};
    while (!stack.empty()) {
      const StateId u = stack.back();
      stack.pop_back();
      for (const auto& t : b.out(u)) {
        if (scc.component[t.dst] != scc.component[u] || seen[t.dst]) continue;
        seen[t.dst] = true;
        pot[t.dst] = pot[u] + (t.symbol == kEpsilon ? 0 : 1);
        stack.push_back(t.dst);
      }
    }
  }
  for (const auto& t : b.transitions()) {
    const auto c = scc.component[t.src];
    if (c != scc.component[t.dst]) continue;
    const std::int64_t delta = pot[t.src] + (t.symbol == kEpsilon ? 0 : 1) - pot[t.dst];
    period[c] = std::gcd(period[c], static_cast<std::uint64_t>(delta < 0 ? -delta : delta));
  }
  return period;
}

/// Some word of L_b(src, dst) has length divisible by m (product with Z/m).
inline bool length_residue_zero_reachable(const EpsNfa& b, StateId src, StateId dst, std::uint64_t m) {
  const std::size_t n = b.state_count();
  std::vector<bool> seen(n * m, false);
  std::vector<std::pair<StateId, std::uint64_t>> stack{{src, 0}};
  seen[src * m] = true;
  while (!stack.empty()) {
    auto [u, r] = stack.back();
    stack.pop_back();
    if (u == dst && r == 0) return true;
    for (const auto& t : b.out(u)) {
      const std::uint64_t r2 = t.symbol == kEpsilon ? r : (r + 1) % m;
      const std::size_t key = t.dst * m + r2;
      if (!seen[key]) {
        seen[key] = true;
        stack.emplace_back(t.dst, r2);
      }
    }
  }
  return false;
}

/// MOD: a MOD language containing eps contains every word whose length is
/// divisible by its modulus, so {eps} is separable from L iff some m misses
/// every length of L.
///
/// A run crossing the cyclic SCCs C1..Ck can be pumped by any cycle of those
/// components; its lengths are exactly len + D*N up to a finite prefix, with
/// D = gcd of the component periods, and every run through the same
/// components has the same length mod D. The search runs over
/// (state, D, length mod D), with D = 0 meaning "no cycle seen yet, exact
/// length". A target is inseparable iff it is reached with residue 0.
class ModSession final : public OracleSession {
 public:
  explicit ModSession(const EpsNfa& b) : b_(b), scc_(strongly_connected_components(b)) {
    period_ = length_periods(b_, scc_);
    lcm_ = 1;
    for (auto d : period_) {
      if (d == 0) continue;
      const std::uint64_t g = std::gcd(lcm_, d);
      if (lcm_ / g > (UINT64_MAX >> 8) / d) {
        lcm_ = 0;  // overflow: no explicit modulus
        break;
      }
      lcm_ = lcm_ / g * d;
    }
  }

  StateSet inseparable_targets(StateId src) const override {
    const std::uint64_t n = b_.state_count();
    const std::uint64_t radix = n + 2;
    auto pack = [radix](std::uint64_t v, std::uint64_t d, std::uint64_t r) { return (v * radix + d) * radix + r; };

    StateSet result(n);
    std::unordered_set<std::uint64_t> seen;
    struct Item {
      StateId v;
      std::uint64_t d, r;
    };
    std::vector<Item> stack;
    const std::uint64_t d0 = period_[scc_.component[src]];
    seen.insert(pack(src, d0, 0));
    stack.push_back({src, d0, 0});
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      if (it.r == 0) result.set(it.v);
      for (const auto& t : b_.out(it.v)) {
        const std::uint64_t d = std::gcd(it.d, period_[scc_.component[t.dst]]);
        std::uint64_t r = it.r + (t.symbol == kEpsilon ? 0 : 1);
        if (d != 0) r %= d;
        if (seen.insert(pack(t.dst, d, r)).second) stack.push_back({t.dst, d, r});
      }
    }
    return result;
  }

  OracleAnswer answer(StateId src, StateId dst) const override {
    OracleAnswer a;
    a.inseparable = inseparable_targets(src).test(dst);
    if (a.inseparable) {
      a.evidence = "every modulus divides the length of some word";
      return a;
    }
    // Every route has period dividing lcm_ and a residue that is nonzero
    // modulo it; cycle-free routes are shorter than n. A multiple of lcm_
    // that is at least n therefore divides no length.
    const std::uint64_t n = b_.state_count();
    if (lcm_ != 0) {
      const std::uint64_t m = lcm_ * ((n + lcm_ - 1) / lcm_);
      if (m * n <= 50'000'000 && !length_residue_zero_reachable(b_, src, dst, m)) {
        a.modulus = m;
        a.evidence = "no word length is divisible by " + std::to_string(m);
        return a;
      }
    }
    a.evidence = "no route has a length residue of 0";
    return a;
  }

  const std::vector<std::uint64_t>& periods() const { return period_; }

 private:
  const EpsNfa& b_;
  SccDecomposition scc_;
  std::vector<std::uint64_t> period_;
  std::uint64_t lcm_ = 1;
};

inline OracleAnswer mod_eps_inseparable(const EpsNfa& b, StateId src, StateId dst) {
  return ModSession(b).answer(src, dst);
}

}  // namespace bpolsep
