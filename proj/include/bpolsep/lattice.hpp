#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bpolsep {

using IntVector = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline void axpy(IntVector& y, std::int64_t c, const IntVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    __int128 v = static_cast<__int128>(y[i]) - static_cast<__int128>(c) * x[i];
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("lattice arithmetic overflow");
    y[i] = static_cast<std::int64_t>(v);
  }
}

}  // namespace detail

/// Subgroup of Z^k held in row Hermite normal form: rows are in echelon
/// order, pivots positive, entries above each pivot reduced into [0, pivot).
/// Two lattices are equal iff their row lists are equal.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

  Lattice(std::size_t dim, std::vector<IntVector> generators) : dim_(dim) {
    for (const auto& g : generators)
      if (g.size() != dim) throw std::invalid_argument("lattice generator has wrong dimension");
    rows_ = hermite(std::move(generators));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& rows() const { return rows_; }
  std::size_t rank() const { return rows_.size(); }

  /// Canonical representative of v modulo the lattice: each pivot coordinate
  /// reduced into [0, pivot).
  IntVector reduce(IntVector v) const {
    reduce_in_place(v.data());
    return v;
  }

  /// reduce() on a raw array of dim() entries.
  void reduce_in_place(std::int64_t* v) const {
    for (const auto& row : rows_) {
      const std::size_t c = pivot_column(row);
      const std::int64_t q = detail::floor_div(v[c], row[c]);
      if (q == 0) continue;
      for (std::size_t i = c; i < dim_; ++i) {
        const __int128 x = static_cast<__int128>(v[i]) - static_cast<__int128>(q) * row[i];
        if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("lattice arithmetic overflow");
        v[i] = static_cast<std::int64_t>(x);
      }
    }
  }

  bool contains(const IntVector& v) const {
    const IntVector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
  }

  Lattice join(const Lattice& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("lattice dimension mismatch");
    if (o.rows_.empty()) return *this;
    std::vector<IntVector> gens = rows_;
    gens.insert(gens.end(), o.rows_.begin(), o.rows_.end());
    return Lattice(dim_, std::move(gens));
  }

  bool operator==(const Lattice&) const = default;
  auto operator<=>(const Lattice&) const = default;

 private:
  static std::size_t pivot_column(const IntVector& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != 0) return c;
    return row.size();
  }

  std::vector<IntVector> hermite(std::vector<IntVector> m) const {
    std::vector<IntVector> out;
    std::size_t top = 0;
    for (std::size_t col = 0; col < dim_ && top < m.size(); ++col) {
      // Euclid on column `col` over rows top..end until one nonzero remains.
      while (true) {
        std::size_t best = m.size();
        for (std::size_t i = top; i < m.size(); ++i)
          if (m[i][col] != 0 && (best == m.size() || std::llabs(m[i][col]) < std::llabs(m[best][col]))) best = i;
        if (best == m.size()) break;
        std::swap(m[top], m[best]);
        bool others = false;
        for (std::size_t i = top + 1; i < m.size(); ++i) {
          if (m[i][col] == 0) continue;
          detail::axpy(m[i], m[i][col] / m[top][col], m[top]);
          others |= m[i][col] != 0;
        }
        if (!others) break;
      }
      if (top == m.size() || m[top][col] == 0) continue;
      if (m[top][col] < 0)
        for (auto& x : m[top]) x = -x;
      for (std::size_t i = 0; i < top; ++i) {
        const std::int64_t q = detail::floor_div(m[i][col], m[top][col]);
        if (q != 0) detail::axpy(m[i], q, m[top]);
      }
      ++top;
    }
    m.resize(top);
    return m;
  }

  std::size_t dim_;
  std::vector<IntVector> rows_;
};

}  // namespace bpolsep
