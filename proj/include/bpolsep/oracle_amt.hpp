#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "lattice.hpp"
#include "oracle_types.hpp"
#include "scc.hpp"

namespace bpolsep {

/// One linear component base + Z-span(periods) of a Parikh closure.
struct LinearComponent {
  IntVector base;
  std::vector<IntVector> periods;
};

/// Union of linear components over Z^|alphabet|. For a Parikh image P the
/// components produced by parikh_closure() satisfy: every base is the Parikh
/// vector of an actual word, and the union of base + Z-span(periods) has the
/// same closure as P in every product of cyclic groups.
struct SemilinearSet {
  std::size_t dim = 0;
  std::vector<LinearComponent> components;

  /// Some component has its base in the integer span of its periods, i.e.
  /// every modulus vector admits a vector of the set congruent to 0.
  bool closure_contains_zero() const {
    return std::any_of(components.begin(), components.end(), [&](const LinearComponent& c) {
      return Lattice(dim, c.periods).contains(c.base);
    });
  }
};

/// Some word of L_b(src, dst) has #_a(w) divisible by moduli[a] for every letter a.
inline bool parikh_residue_zero_reachable(const EpsNfa& b, StateId src, StateId dst,
                                          const std::vector<std::uint64_t>& moduli) {
  const std::size_t k = b.alphabet().size();
  std::uint64_t span = 1;
  for (auto m : moduli) span *= m;
  std::vector<bool> seen(b.state_count() * span, false);
  auto encode = [&](StateId v, const std::vector<std::uint64_t>& r) {
    std::uint64_t code = v;
    for (std::size_t i = 0; i < k; ++i) code = code * moduli[i] + r[i];
    return code;
  };
  std::vector<std::pair<StateId, std::vector<std::uint64_t>>> stack;
  stack.emplace_back(src, std::vector<std::uint64_t>(k, 0));
  seen[encode(src, stack.back().second)] = true;
  while (!stack.empty()) {
    auto [v, r] = std::move(stack.back());
    stack.pop_back();
    if (v == dst && std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; })) return true;
    for (const auto& t : b.out(v)) {
      auto r2 = r;
      if (t.symbol != kEpsilon) r2[t.symbol] = (r2[t.symbol] + 1) % moduli[t.symbol];
      const auto code = encode(t.dst, r2);
      if (!seen[code]) {
        seen[code] = true;
        stack.emplace_back(t.dst, std::move(r2));
      }
    }
  }
  return false;
}

/// AMT: an AMT language containing eps contains every word whose letter
/// counts are all divisible by some modulus m. {eps} is therefore
/// inseparable from L iff 0 lies in the profinite closure of the Parikh
/// image of L.
///
/// Same route argument as the MOD backend, one dimension per letter: a run
/// through cyclic SCCs C1..Ck has Parikh vectors w + (cycle lattice of
/// C1..Ck) in the closure, and every run through the same components agrees
/// with w modulo that lattice. The search runs over
/// (state, lattice, Parikh vector mod lattice); a target is inseparable iff
/// it is reached with residue 0.
class AmtSession final : public OracleSession {
 public:
  AmtSession(const EpsNfa& b, const OracleOptions& options)
      : b_(b), options_(options), dim_(b.alphabet().size()), scc_(strongly_connected_components(b)) {
    build_component_lattices();
  }

  StateSet inseparable_targets(StateId src) const override {
    StateSet out(b_.state_count());
    search<false>(src, [&](StateId v, std::uint32_t, const std::int64_t* residue, const std::int64_t*) {
      if (std::all_of(residue, residue + dim_, [](std::int64_t x) { return x == 0; })) out.set(v);
    });
    return out;
  }

  /// Closure-equivalent semilinear description of the Parikh image of L(src, dst).
  SemilinearSet parikh_closure(StateId src, StateId dst) const {
    SemilinearSet set{dim_, {}};
    search<true>(src, [&](StateId v, std::uint32_t l, const std::int64_t*, const std::int64_t* witness) {
      if (v == dst) set.components.push_back({IntVector(witness, witness + dim_), lattice(l).rows()});
    });
    return set;
  }

  OracleAnswer answer(StateId src, StateId dst) const override {
    OracleAnswer a;
    const SemilinearSet closure = parikh_closure(src, dst);
    a.inseparable = closure.closure_contains_zero();
    if (a.inseparable) {
      a.evidence = "Parikh closure contains 0 (" + std::to_string(closure.components.size()) + " components)";
      return a;
    }
    a.evidence = "no Parikh component has its base in the span of its periods";
    // Look for a concrete per-letter modulus vector among small moduli.
    std::uint64_t cells = b_.state_count();
    for (std::size_t i = 0; i < dim_; ++i) cells *= 12;
    if (cells > 20'000'000) return a;
    std::vector<std::uint64_t> moduli(dim_, 1);
    while (true) {
      if (!parikh_residue_zero_reachable(b_, src, dst, moduli)) {
        a.modulus_vector = moduli;
        return a;
      }
      std::size_t i = 0;
      while (i < dim_ && ++moduli[i] > 12) moduli[i++] = 1;
      if (i == dim_) break;
    }
    return a;
  }

 private:
  void build_component_lattices() {
    const std::size_t n = b_.state_count();
    // Forward potentials: Parikh vector of a path root -> v inside the SCC;
    // backward potentials: of a path v -> root.
    std::vector<IntVector> fwd(n, IntVector(dim_, 0)), bwd(n, IntVector(dim_, 0));
    std::vector<bool> seen_f(n, false), seen_b(n, false);
    const auto all = b_.transitions();
    for (StateId root = 0; root < n; ++root) {
      if (seen_f[root]) continue;
      seen_f[root] = seen_b[root] = true;
      std::vector<StateId> stack{root};
      while (!stack.empty()) {
        const StateId u = stack.back();
        stack.pop_back();
        for (const auto& t : b_.out(u)) {
          if (scc_.component[t.dst] != scc_.component[u] || seen_f[t.dst]) continue;
          seen_f[t.dst] = true;
          fwd[t.dst] = fwd[u];
          if (t.symbol != kEpsilon) ++fwd[t.dst][t.symbol];
          stack.push_back(t.dst);
        }
      }
      stack.push_back(root);
      while (!stack.empty()) {
        const StateId u = stack.back();
        stack.pop_back();
        for (auto idx : b_.in(u)) {
          const auto& t = all[idx];
          if (scc_.component[t.src] != scc_.component[u] || seen_b[t.src]) continue;
          seen_b[t.src] = true;
          bwd[t.src] = bwd[u];
          if (t.symbol != kEpsilon) ++bwd[t.src][t.symbol];
          stack.push_back(t.src);
        }
      }
    }
    // Closed walk root -> u -a-> v -> root for every edge inside a component.
    std::vector<std::vector<IntVector>> gens(scc_.count);
    for (const auto& t : all) {
      const auto c = scc_.component[t.src];
      if (c != scc_.component[t.dst]) continue;
      IntVector g = fwd[t.src];
      for (std::size_t i = 0; i < dim_; ++i) g[i] += bwd[t.dst][i];
      if (t.symbol != kEpsilon) ++g[t.symbol];
      gens[c].push_back(std::move(g));
    }
    component_lattice_.reserve(scc_.count);
    for (auto& g : gens) component_lattice_.push_back(intern(Lattice(dim_, std::move(g))));
  }

  std::uint32_t intern(Lattice l) const {
    auto it = lattice_ids_.find(l);
    if (it != lattice_ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(lattices_.size());
    lattices_.push_back(l);
    lattice_ids_.emplace(std::move(l), id);
    return id;
  }

  const Lattice& lattice(std::uint32_t id) const { return lattices_[id]; }

  std::uint32_t join(std::uint32_t lattice_id, std::uint32_t component) const {
    const std::uint64_t key = (static_cast<std::uint64_t>(lattice_id) << 32) | component;
    if (auto it = join_memo_.find(key); it != join_memo_.end()) return it->second;
    const std::uint32_t id = intern(lattices_[lattice_id].join(lattices_[component_lattice_[component]]));
    join_memo_.emplace(key, id);
    return id;
  }

  /// Search over (state, lattice, Parikh vector mod lattice). Nodes live in
  /// a flat arena of rows [state, lattice, residue..., witness...]; the
  /// witness (Parikh vector of the first run found) is kept only on request.
  template <bool Witness, class Visit>
  void search(StateId src, Visit&& visit) const {
    std::lock_guard<std::mutex> lock(mutex_);  // lattice tables are shared
    const std::size_t key_len = 2 + dim_;
    const std::size_t stride = key_len + (Witness ? dim_ : 0);
    std::vector<std::int64_t> arena;
    std::vector<std::uint32_t> table(1024, 0);  // node index + 1, open addressing
    std::size_t count = 0;

    auto hash_row = [&](const std::int64_t* row) {
      std::uint64_t h = 0x9E3779B97F4A7C15ULL;
      for (std::size_t i = 0; i < key_len; ++i) {
        h ^= static_cast<std::uint64_t>(row[i]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      }
      return h;
    };
    auto place = [&](std::uint32_t node) {
      const std::size_t mask = table.size() - 1;
      std::size_t i = hash_row(&arena[node * stride]) & mask;
      while (table[i] != 0) i = (i + 1) & mask;
      table[i] = node + 1;
    };
    auto insert = [&](const std::int64_t* row) {
      const std::size_t mask = table.size() - 1;
      for (std::size_t i = hash_row(row) & mask;; i = (i + 1) & mask) {
        if (table[i] == 0) break;
        if (std::equal(row, row + key_len, &arena[(table[i] - 1) * stride])) return;
      }
      if (count >= options_.amt_budget)
        throw BudgetExceeded("AMT oracle exceeded its budget of " + std::to_string(options_.amt_budget) +
                             " search states");
      arena.insert(arena.end(), row, row + stride);
      ++count;
      if (2 * count > table.size()) {
        table.assign(table.size() * 2, 0);
        for (std::uint32_t k = 0; k < count; ++k) place(k);
      } else {
        place(static_cast<std::uint32_t>(count - 1));
      }
    };

    std::vector<std::int64_t> cur(stride, 0), next(stride);
    cur[0] = src;
    cur[1] = component_lattice_[scc_.component[src]];
    insert(cur.data());
    for (std::size_t head = 0; head < count; ++head) {
      std::copy_n(&arena[head * stride], stride, cur.begin());
      const auto v = static_cast<StateId>(cur[0]);
      const auto l = static_cast<std::uint32_t>(cur[1]);
      visit(v, l, &cur[2], Witness ? &cur[key_len] : nullptr);
      for (const auto& t : b_.out(v)) {
        next = cur;
        next[0] = t.dst;
        const std::uint32_t l2 = join(l, scc_.component[t.dst]);
        next[1] = l2;
        if (t.symbol != kEpsilon) {
          ++next[2 + t.symbol];
          if constexpr (Witness) ++next[key_len + t.symbol];
        }
        lattices_[l2].reduce_in_place(&next[2]);
        insert(next.data());
      }
    }
  }

  const EpsNfa& b_;
  OracleOptions options_;
  std::size_t dim_;
  SccDecomposition scc_;
  std::vector<std::uint32_t> component_lattice_;
  mutable std::mutex mutex_;
  mutable std::vector<Lattice> lattices_;
  mutable std::map<Lattice, std::uint32_t> lattice_ids_;
  mutable std::unordered_map<std::uint64_t, std::uint32_t> join_memo_;
};

inline OracleAnswer amt_eps_inseparable(const EpsNfa& b, StateId src, StateId dst, const OracleOptions& options = {}) {
  return AmtSession(b, options).answer(src, dst);
}

inline SemilinearSet parikh_closure(const EpsNfa& b, StateId src, StateId dst, const OracleOptions& options = {}) {
  return AmtSession(b, options).parikh_closure(src, dst);
}

}  // namespace bpolsep
