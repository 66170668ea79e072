#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "automaton.hpp"

namespace bpolsep {

using Quad = std::array<StateId, 4>;

/// Subset of Q^4, one bit per quadruple at index ((q*n + r)*n + s)*n + t.
class QuadSet {
 public:
  explicit QuadSet(std::size_t state_count = 0) : n_(state_count), bits_(checked_universe(state_count)) {}

  static QuadSet full(std::size_t state_count) {
    QuadSet s(state_count);
    s.bits_.fill();
    return s;
  }

  std::size_t state_count() const { return n_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.empty(); }
  const DenseBitset& bits() const { return bits_; }

  std::size_t index(StateId q, StateId r, StateId s, StateId t) const {
    if (q >= n_ || r >= n_ || s >= n_ || t >= n_) throw std::out_of_range("quadruple component out of range");
    return ((static_cast<std::size_t>(q) * n_ + r) * n_ + s) * n_ + t;
  }

  Quad decode(std::size_t i) const {
    Quad x{};
    for (int k = 3; k >= 0; --k) {
      x[k] = static_cast<StateId>(i % n_);
      i /= n_;
    }
    return x;
  }

  bool contains(StateId q, StateId r, StateId s, StateId t) const { return bits_.test(index(q, r, s, t)); }
  bool contains(const Quad& x) const { return contains(x[0], x[1], x[2], x[3]); }
  bool insert(StateId q, StateId r, StateId s, StateId t) { return bits_.insert(index(q, r, s, t)); }
  bool insert(const Quad& x) { return insert(x[0], x[1], x[2], x[3]); }
  void erase(const Quad& x) { bits_.reset(index(x[0], x[1], x[2], x[3])); }

  template <class F>
  void for_each(F&& f) const {
    bits_.for_each([&](std::size_t i) { f(decode(i)); });
  }

  /// Members in increasing index order, i.e. lexicographic order.
  std::vector<Quad> members() const {
    std::vector<Quad> out;
    out.reserve(size());
    for_each([&](const Quad& x) { out.push_back(x); });
    return out;
  }

  bool is_subset_of(const QuadSet& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const QuadSet& o) const { return bits_.intersects(o.bits_); }

  QuadSet& operator|=(const QuadSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  QuadSet& operator&=(const QuadSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  QuadSet& operator-=(const QuadSet& o) {
    bits_ -= o.bits_;
    return *this;
  }
  friend QuadSet operator|(QuadSet a, const QuadSet& b) { return a |= b; }
  friend QuadSet operator&(QuadSet a, const QuadSet& b) { return a &= b; }
  friend QuadSet operator-(QuadSet a, const QuadSet& b) { return a -= b; }
  bool operator==(const QuadSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }

  /// Image under (q, r, s, t) -> (s, t, q, r).
  QuadSet swapped() const {
    QuadSet out(n_);
    for_each([&](const Quad& x) { out.insert(x[2], x[3], x[0], x[1]); });
    return out;
  }

  bool is_symmetric() const { return swapped() == *this; }

 private:
  static std::size_t checked_universe(std::size_t n) {
    if (n > 256) throw std::length_error("QuadSet: too many states");
    return n * n * n * n;
  }

  std::size_t n_;
  DenseBitset bits_;
};

}  // namespace bpolsep
