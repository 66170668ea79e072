#pragma once

#include <string>
#include <utility>
#include <vector>

#include "group_catalog.hpp"
#include "oracle_types.hpp"
#include "scc.hpp"

namespace bpolsep {

/// GR: {eps} is inseparable from L iff 1 lies in the closure of L for the
/// pro-group topology.
///
/// Writing L(src, dst) as a rational expression and replacing every star X*
/// by the subgroup generated by X gives that closure inside the free group.
/// On the automaton this means: a transition lying inside an SCC may also be
/// traversed backwards reading its letter inverse; transitions between SCCs
/// may not. The relation R(p, q) = "some such walk p -> q reduces to 1" is the
/// least relation containing the diagonal and the epsilon edges (plus the
/// reversed epsilon edges inside an SCC) that is closed under composition and
/// under wrapping: R(p, q), x -a-> p, q -a^-1-> y gives R(x, y), and
/// symmetrically for x -a^-1-> p, q -a-> y.
class GrSession final : public OracleSession {
 public:
  explicit GrSession(const EpsNfa& b) : b_(b), rows_(), cols_() { saturate(); }

  StateSet inseparable_targets(StateId src) const override { return rows_[src]; }

  OracleAnswer answer(StateId src, StateId dst) const override {
    OracleAnswer a;
    a.inseparable = rows_[src].test(dst);
    if (a.inseparable) {
      a.evidence = "some walk with inverted cycle edges reduces to the identity";
      return a;
    }
    a.evidence = "no walk reduces to the identity";
    if (b_.state_count() <= 256) {
      GroupSearchOptions opts;
      opts.random_trials = 8;
      if (auto m = brute_force_group_search(b_, src, dst, default_group_catalog(), opts)) {
        a.evidence = "separated by a morphism into " + m->group + " with images [";
        for (std::size_t i = 0; i < m->images.size(); ++i)
          a.evidence += (i ? "," : "") + std::to_string(m->images[i]);
        a.evidence += "]";
      }
    }
    return a;
  }

 private:
  struct Edge {
    StateId other;
    Symbol symbol;
  };

  void saturate() {
    const std::size_t n = b_.state_count();
    const auto scc = strongly_connected_components(b_);
    rows_.assign(n, StateSet(n));
    cols_.assign(n, StateSet(n));
    // fwd_in[p]:  x -a-> p          inv_in[p]:  x -a^-1-> p  (p -a-> x inside an SCC)
    // fwd_out[q]: q -a-> y          inv_out[q]: q -a^-1-> y  (y -a-> q inside an SCC)
    std::vector<std::vector<Edge>> fwd_in(n), inv_in(n), fwd_out(n), inv_out(n);
    std::vector<std::pair<StateId, StateId>> work;
    auto add = [&](StateId p, StateId q) {
      if (!rows_[p].insert(q)) return;
      cols_[q].set(p);
      work.emplace_back(p, q);
    };
    for (StateId p = 0; p < n; ++p) add(p, p);
    for (const auto& t : b_.transitions()) {
      const bool inside = scc.component[t.src] == scc.component[t.dst];
      if (t.symbol == kEpsilon) {
        add(t.src, t.dst);
        if (inside) add(t.dst, t.src);
        continue;
      }
      fwd_in[t.dst].push_back({t.src, t.symbol});
      fwd_out[t.src].push_back({t.dst, t.symbol});
      if (inside) {
        inv_in[t.src].push_back({t.dst, t.symbol});
        inv_out[t.dst].push_back({t.src, t.symbol});
      }
    }
    while (!work.empty()) {
      const auto [p, q] = work.back();
      work.pop_back();
      (cols_[p] - cols_[q]).for_each([&](std::size_t x) { add(static_cast<StateId>(x), q); });
      (rows_[q] - rows_[p]).for_each([&](std::size_t y) { add(p, static_cast<StateId>(y)); });
      for (const auto& in : fwd_in[p])
        for (const auto& out : inv_out[q])
          if (in.symbol == out.symbol) add(in.other, out.other);
      for (const auto& in : inv_in[p])
        for (const auto& out : fwd_out[q])
          if (in.symbol == out.symbol) add(in.other, out.other);
    }
  }

  const EpsNfa& b_;
  std::vector<StateSet> rows_, cols_;
};

inline OracleAnswer gr_eps_inseparable(const EpsNfa& b, StateId src, StateId dst) {
  return GrSession(b).answer(src, dst);
}

/// Loop-rule saturation: the least relation E containing the diagonal and the
/// epsilon edges, closed under composition and under "if some word w has runs
/// p -> s, s -> s and s -> r (E edges free) then (p, r) in E". Every rule is
/// sound for GR, so E is contained in the relation computed by GrSession.
/// The search is cubic in the state count per pair; small inputs only.
inline std::vector<StateSet> gr_loop_rule_relation(const EpsNfa& b) {
  const std::size_t n = b.state_count();
  std::vector<StateSet> e(n, StateSet(n));
  for (StateId p = 0; p < n; ++p) e[p].set(p);
  for (const auto& t : b.transitions())
    if (t.symbol == kEpsilon) e[t.src].set(t.dst);

  auto close = [&] {
    for (StateId k = 0; k < n; ++k)
      for (StateId i = 0; i < n; ++i)
        if (e[i].test(k)) e[i] |= e[k];
  };
  auto code = [n](StateId x, StateId y, StateId z) { return (static_cast<std::size_t>(x) * n + y) * n + z; };

  std::vector<bool> seen(n * n * n);
  std::vector<std::size_t> stack;
  bool changed = true;
  while (changed) {
    changed = false;
    close();
    for (StateId s = 0; s < n; ++s)
      for (StateId p = 0; p < n; ++p) {
        std::fill(seen.begin(), seen.end(), false);
        stack.assign(1, code(p, s, s));
        seen[stack.back()] = true;
        StateSet found(n);
        while (!stack.empty()) {
          const std::size_t c = stack.back();
          stack.pop_back();
          const StateId z = c % n, y = (c / n) % n, x = c / (n * n);
          if (x == s && y == s) found.set(z);
          auto push = [&](StateId x2, StateId y2, StateId z2) {
            const std::size_t c2 = code(x2, y2, z2);
            if (!seen[c2]) {
              seen[c2] = true;
              stack.push_back(c2);
            }
          };
          e[x].for_each([&](StateId x2) { push(x2, y, z); });
          e[y].for_each([&](StateId y2) { push(x, y2, z); });
          e[z].for_each([&](StateId z2) { push(x, y, z2); });
          for (const auto& tx : b.out(x)) {
            if (tx.symbol == kEpsilon) break;
            for (const auto& ty : b.out(y)) {
              if (ty.symbol != tx.symbol) continue;
              for (const auto& tz : b.out(z))
                if (tz.symbol == tx.symbol) push(tx.dst, ty.dst, tz.dst);
            }
          }
        }
        if (!found.is_subset_of(e[p])) {
          e[p] |= found;
          changed = true;
        }
      }
  }
  return e;
}

inline bool gr_loop_rule_inseparable(const EpsNfa& b, StateId src, StateId dst) {
  return gr_loop_rule_relation(b)[src].test(dst);
}

}  // namespace bpolsep
