#pragma once

#include "algorithms.hpp"
#include "oracle_types.hpp"

namespace bpolsep {

/// ST = {empty, A*}: the only candidate separator containing eps is A*, so
/// {eps} is inseparable from L exactly when L is nonempty.
class StSession final : public OracleSession {
 public:
  explicit StSession(const EpsNfa& b) : b_(b) {}

  StateSet inseparable_targets(StateId src) const override {
    StateSet s(b_.state_count());
    s.set(src);
    return reachable_from(b_, s);
  }

  OracleAnswer answer(StateId src, StateId dst) const override {
    OracleAnswer a;
    a.inseparable = pair_nonempty(b_, src, dst);
    a.evidence = a.inseparable ? "pair language nonempty" : "pair language empty; A* separates";
    return a;
  }

 private:
  const EpsNfa& b_;
};

inline OracleAnswer st_eps_inseparable(const EpsNfa& b, StateId src, StateId dst) {
  return StSession(b).answer(src, dst);
}

}  // namespace bpolsep
