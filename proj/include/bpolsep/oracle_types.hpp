#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "class_spec.hpp"

namespace bpolsep {

/// Outcome of "is {eps} separable from L_b(src, dst) by the group class?".
struct OracleAnswer {
  bool inseparable = false;
  /// MOD: a modulus m such that no word of L has length divisible by m.
  std::optional<std::uint64_t> modulus;
  /// AMT: per-letter moduli such that no word of L has all letter counts
  /// divisible by the corresponding modulus.
  std::optional<std::vector<std::uint64_t>> modulus_vector;
  /// Free-form diagnostic (separating morphism, certificate, ...).
  std::string evidence;
};

/// The AMT backend gave up after exploring its configured number of states.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OracleOptions {
  /// Maximum number of search states the AMT backend explores per source.
  std::size_t amt_budget = 2'000'000;
};

/// Oracle bound to one epsilon-NFA. inseparable_targets() must be safe to
/// call concurrently from several threads.
class OracleSession {
 public:
  virtual ~OracleSession() = default;

  /// All dst such that {eps} is not separable from L(src, dst).
  virtual StateSet inseparable_targets(StateId src) const = 0;

  /// Single query with evidence where the backend can produce it.
  virtual OracleAnswer answer(StateId src, StateId dst) const {
    OracleAnswer a;
    a.inseparable = inseparable_targets(src).test(dst);
    return a;
  }
};

}  // namespace bpolsep
