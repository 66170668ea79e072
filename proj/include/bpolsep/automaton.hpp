#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bitset.hpp"

namespace bpolsep {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;

/// Label of an empty-word transition. Only EpsNfa accepts it.
inline constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();

/// Subset of the states of an automaton.
using StateSet = DenseBitset;

/// Ordered set of distinct single-character letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view symbols) : symbols_(symbols) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    index_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto c = static_cast<unsigned char>(symbols_[i]);
      if (c <= ' ' || c >= 0x7f) throw std::invalid_argument("alphabet symbols must be printable ASCII");
      if (is_reserved(symbols_[i]))
        throw std::invalid_argument(std::string("reserved character in alphabet: ") + symbols_[i]);
      if (index_[c] >= 0) throw std::invalid_argument(std::string("duplicate alphabet symbol: ") + symbols_[i]);
      index_[c] = static_cast<int>(i);
    }
  }

  /// Characters that carry meaning in the regex grammar or the file format.
  static bool is_reserved(char c) {
    return c == '(' || c == ')' || c == '|' || c == '*' || c == '+' || c == '?' || c == '#';
  }

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbols() const { return symbols_; }
  char symbol(Symbol s) const { return symbols_.at(s); }

  std::optional<Symbol> index_of(char c) const {
    if (symbols_.empty()) return std::nullopt;
    const int i = index_[static_cast<unsigned char>(c)];
    if (i < 0) return std::nullopt;
    return static_cast<Symbol>(i);
  }

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::string symbols_;
  std::array<int, 256> index_{};
};

struct Transition {
  StateId src;
  Symbol symbol;
  StateId dst;
  auto operator<=>(const Transition&) const = default;
};

/// Finite automaton (Q, delta) without designated initial or final states;
/// languages are always read between explicit state pairs.
///
/// Transitions are kept sorted by (src, symbol, dst) and duplicate-free, so
/// the outgoing transitions of a state form a contiguous range.
template <bool AllowEpsilon>
class BasicNfa {
 public:
  static constexpr bool allows_epsilon = AllowEpsilon;

  BasicNfa() = default;
  BasicNfa(std::size_t state_count, Alphabet alphabet, std::vector<Transition> transitions)
      : state_count_(state_count), alphabet_(std::move(alphabet)), transitions_(std::move(transitions)) {
    if (state_count_ > std::numeric_limits<StateId>::max() / 2)
      throw std::invalid_argument("too many states");
    for (const auto& t : transitions_) {
      if (t.src >= state_count_ || t.dst >= state_count_)
        throw std::out_of_range("transition state out of range");
      if (t.symbol == kEpsilon) {
        if constexpr (!AllowEpsilon) throw std::invalid_argument("epsilon transition in an epsilon-free NFA");
      } else if (t.symbol >= alphabet_.size()) {
        throw std::out_of_range("transition symbol outside the alphabet");
      }
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    index();
  }

  std::size_t state_count() const { return state_count_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const Transition> transitions() const { return transitions_; }

  std::span<const Transition> out(StateId q) const {
    return std::span<const Transition>(transitions_).subspan(out_offset_[q], out_offset_[q + 1] - out_offset_[q]);
  }
  /// Indices into transitions() of the transitions entering q.
  std::span<const std::uint32_t> in(StateId q) const {
    return std::span<const std::uint32_t>(in_index_).subspan(in_offset_[q], in_offset_[q + 1] - in_offset_[q]);
  }

  bool has_transition(StateId src, Symbol symbol, StateId dst) const {
    auto range = out(src);
    return std::binary_search(range.begin(), range.end(), Transition{src, symbol, dst});
  }

  /// Stable content hash, used to key oracle memo tables.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL ^ state_count_;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    };
    for (char c : alphabet_.symbols()) mix(static_cast<unsigned char>(c));
    for (const auto& t : transitions_) {
      mix(t.src);
      mix(t.symbol);
      mix(t.dst);
    }
    return h;
  }

  bool operator==(const BasicNfa& o) const {
    return state_count_ == o.state_count_ && alphabet_ == o.alphabet_ && transitions_ == o.transitions_;
  }

 private:
  void index() {
    out_offset_.assign(state_count_ + 1, 0);
    in_offset_.assign(state_count_ + 1, 0);
    for (const auto& t : transitions_) {
      ++out_offset_[t.src + 1];
      ++in_offset_[t.dst + 1];
    }
    for (std::size_t q = 0; q < state_count_; ++q) {
      out_offset_[q + 1] += out_offset_[q];
      in_offset_[q + 1] += in_offset_[q];
    }
    in_index_.assign(transitions_.size(), 0);
    std::vector<std::uint32_t> fill(in_offset_.begin(), in_offset_.end() - 1);
    for (std::uint32_t i = 0; i < transitions_.size(); ++i) in_index_[fill[transitions_[i].dst]++] = i;
  }

  std::size_t state_count_ = 0;
  Alphabet alphabet_;
  std::vector<Transition> transitions_;
  std::vector<std::uint32_t> out_offset_{0};
  std::vector<std::uint32_t> in_offset_{0};
  std::vector<std::uint32_t> in_index_;
};

using Nfa = BasicNfa<false>;
using EpsNfa = BasicNfa<true>;

inline EpsNfa to_eps_nfa(const Nfa& a) {
  return EpsNfa(a.state_count(), a.alphabet(), {a.transitions().begin(), a.transitions().end()});
}

inline StateSet make_state_set(std::size_t state_count, std::initializer_list<StateId> members) {
  StateSet s(state_count);
  for (auto m : members) {
    if (m >= state_count) throw std::out_of_range("state out of range");
    s.set(m);
  }
  return s;
}

}  // namespace bpolsep
