#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "automaton.hpp"

namespace bpolsep {

/// Strongly connected components (epsilon edges included). Component ids
/// are in reverse topological order: every edge goes from a component id to
/// an id no larger than it.
struct SccDecomposition {
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
};

template <bool E>
SccDecomposition strongly_connected_components(const BasicNfa<E>& a) {
  const std::size_t n = a.state_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  SccDecomposition out;
  out.component.assign(n, 0);
  std::uint32_t counter = 0;

  struct Frame {
    StateId v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto outs = a.out(f.v);
      if (f.edge < outs.size()) {
        const StateId w = outs[f.edge++].dst;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const StateId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        while (true) {
          const StateId w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
    }
  }
  return out;
}

}  // namespace bpolsep
