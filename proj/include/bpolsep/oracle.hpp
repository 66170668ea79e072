#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "oracle_amt.hpp"
#include "oracle_gr.hpp"
#include "oracle_mod.hpp"
#include "oracle_st.hpp"

namespace bpolsep {

inline std::unique_ptr<OracleSession> make_session(GroupClass g, const EpsNfa& b, const OracleOptions& options = {}) {
  switch (g) {
    case GroupClass::ST:
      return std::make_unique<StSession>(b);
    case GroupClass::MOD:
      return std::make_unique<ModSession>(b);
    case GroupClass::AMT:
      return std::make_unique<AmtSession>(b, options);
    case GroupClass::GR:
      return std::make_unique<GrSession>(b);
  }
  throw std::invalid_argument("unknown group class");
}

/// Is {eps} inseparable from L_b(src, dst) by the group class g?
/// Throws BudgetExceeded when the AMT backend gives up.
inline OracleAnswer eps_inseparable(GroupClass g, const EpsNfa& b, StateId src, StateId dst,
                                    const OracleOptions& options = {}) {
  return make_session(g, b, options)->answer(src, dst);
}

/// A group-class oracle as seen by the fixpoint engine: binds to one
/// epsilon-NFA at a time. A custom factory replaces the built-in backend
/// (used by tests to inject faults or count calls).
class Oracle {
 public:
  using Factory = std::function<std::unique_ptr<OracleSession>(const EpsNfa&)>;

  explicit Oracle(GroupClass g, OracleOptions options = {}) : base_(g), options_(options) {}
  Oracle(GroupClass g, Factory factory) : base_(g), factory_(std::move(factory)) {}

  GroupClass base() const { return base_; }
  const OracleOptions& options() const { return options_; }

  std::unique_ptr<OracleSession> bind(const EpsNfa& b) const {
    return factory_ ? factory_(b) : make_session(base_, b, options_);
  }

 private:
  GroupClass base_;
  OracleOptions options_;
  Factory factory_;
};

/// Answers keyed by (class, automaton fingerprint, src, dst). Concurrent
/// lookups; insertions take the exclusive lock.
class OracleMemo {
 public:
  std::optional<bool> find(GroupClass g, std::uint64_t fingerprint, StateId src, StateId dst) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find({g, fingerprint, src, dst});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  void insert(GroupClass g, std::uint64_t fingerprint, StateId src, StateId dst, bool inseparable) {
    std::unique_lock lock(mutex_);
    table_.emplace(Key{g, fingerprint, src, dst}, inseparable);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  using Key = std::tuple<GroupClass, std::uint64_t, StateId, StateId>;
  mutable std::shared_mutex mutex_;
  std::map<Key, bool> table_;
};

/// eps_inseparable through a memo table.
inline bool memoized_eps_inseparable(OracleMemo& memo, GroupClass g, const EpsNfa& b, StateId src, StateId dst,
                                     const OracleOptions& options = {}) {
  const auto fp = b.fingerprint();
  if (auto hit = memo.find(g, fp, src, dst)) return *hit;
  const bool r = eps_inseparable(g, b, src, dst, options).inseparable;
  memo.insert(g, fp, src, dst, r);
  return r;
}

}  // namespace bpolsep
