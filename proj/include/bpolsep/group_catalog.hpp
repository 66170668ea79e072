#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "automaton.hpp"

namespace bpolsep {

/// Finite group given by its multiplication table; the group laws are
/// checked at construction.
class GroupCatalogEntry {
 public:
  GroupCatalogEntry(std::string name, std::size_t order, std::vector<std::uint32_t> table, std::uint32_t identity)
      : name_(std::move(name)), order_(order), table_(std::move(table)), identity_(identity) {
    validate();
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }

  static GroupCatalogEntry cyclic(std::size_t n) {
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
    return {"Z" + std::to_string(n), n, std::move(t), 0};
  }

  static GroupCatalogEntry product(const GroupCatalogEntry& g, const GroupCatalogEntry& h) {
    const std::size_t n = g.order() * h.order();
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto ga = static_cast<std::uint32_t>(a / h.order()), ha = static_cast<std::uint32_t>(a % h.order());
        const auto gb = static_cast<std::uint32_t>(b / h.order()), hb = static_cast<std::uint32_t>(b % h.order());
        t[a * n + b] = static_cast<std::uint32_t>(g.mul(ga, gb) * h.order() + h.mul(ha, hb));
      }
    return {g.name() + "x" + h.name(), n,
            std::move(t), static_cast<std::uint32_t>(g.identity() * h.order() + h.identity())};
  }

  /// Symmetric group on k points; elements are permutations in
  /// lexicographic order, a*b = "apply a, then b".
  static GroupCatalogEntry symmetric(std::size_t k) {
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p(k);
    std::iota(p.begin(), p.end(), 0U);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t n = perms.size();
    auto index_of = [&](const std::vector<std::uint32_t>& q) {
      return static_cast<std::uint32_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::uint32_t> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = perms[b][perms[a][i]];
        t[a * n + b] = index_of(c);
      }
    return {"S" + std::to_string(k), n, std::move(t), 0};
  }

 private:
  void validate() const {
    if (order_ == 0 || table_.size() != order_ * order_ || identity_ >= order_)
      throw std::invalid_argument("group table has the wrong shape");
    for (auto x : table_)
      if (x >= order_) throw std::invalid_argument("group table entry out of range");
    for (std::uint32_t a = 0; a < order_; ++a) {
      if (mul(identity_, a) != a || mul(a, identity_) != a) throw std::invalid_argument("identity law fails");
      bool has_inverse = false;
      for (std::uint32_t b = 0; b < order_ && !has_inverse; ++b)
        has_inverse = mul(a, b) == identity_ && mul(b, a) == identity_;
      if (!has_inverse) throw std::invalid_argument("inverse law fails");
      for (std::uint32_t b = 0; b < order_; ++b)
        for (std::uint32_t c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("associativity fails");
    }
  }

  std::string name_;
  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::uint32_t identity_;
};

/// Cyclic groups of order <= 12, Z2xZ2, Z2xZ4, S3, S4.
inline std::vector<GroupCatalogEntry> default_group_catalog(std::size_t max_cyclic = 12) {
  std::vector<GroupCatalogEntry> out;
  for (std::size_t n = 1; n <= max_cyclic; ++n) out.push_back(GroupCatalogEntry::cyclic(n));
  out.push_back(GroupCatalogEntry::product(GroupCatalogEntry::cyclic(2), GroupCatalogEntry::cyclic(2)));
  out.push_back(GroupCatalogEntry::product(GroupCatalogEntry::cyclic(2), GroupCatalogEntry::cyclic(4)));
  out.push_back(GroupCatalogEntry::symmetric(3));
  out.push_back(GroupCatalogEntry::symmetric(4));
  return out;
}

/// Letter images of a morphism A* -> G.
struct GroupMorphism {
  std::size_t catalog_index = 0;
  std::string group;
  std::vector<std::uint32_t> images;
};

/// True iff the identity is not in alpha(L_b(src, dst)), checked by
/// reachability in the product of b with the Cayley graph of the group.
inline bool morphism_separates(const EpsNfa& b, StateId src, StateId dst, const GroupCatalogEntry& g,
                               const std::vector<std::uint32_t>& images) {
  const std::size_t order = g.order();
  std::vector<bool> seen(b.state_count() * order, false);
  std::vector<std::pair<StateId, std::uint32_t>> stack{{src, g.identity()}};
  seen[src * order + g.identity()] = true;
  while (!stack.empty()) {
    auto [v, x] = stack.back();
    stack.pop_back();
    if (v == dst && x == g.identity()) return false;
    for (const auto& t : b.out(v)) {
      const std::uint32_t y = t.symbol == kEpsilon ? x : g.mul(x, images[t.symbol]);
      if (!seen[t.dst * order + y]) {
        seen[t.dst * order + y] = true;
        stack.emplace_back(t.dst, y);
      }
    }
  }
  return true;
}

struct GroupSearchOptions {
  std::size_t random_trials = 64;
  /// Groups with at most this many letter assignments are enumerated fully.
  std::size_t max_exhaustive = 4096;
  std::uint64_t seed = 0x5eed;
};

/// First morphism into a catalog group that maps no word of L_b(src, dst) to
/// the identity; std::nullopt if the catalog is exhausted. A returned
/// morphism proves that {eps} is GR-separable from the pair language.
inline std::optional<GroupMorphism> brute_force_group_search(const EpsNfa& b, StateId src, StateId dst,
                                                             const std::vector<GroupCatalogEntry>& catalog,
                                                             const GroupSearchOptions& options = {}) {
  if (src == dst) return std::nullopt;
  const std::size_t k = b.alphabet().size();
  std::mt19937_64 rng(options.seed);
  for (std::size_t gi = 0; gi < catalog.size(); ++gi) {
    const auto& g = catalog[gi];
    long double assignments = 1;
    for (std::size_t i = 0; i < k; ++i) assignments *= static_cast<long double>(g.order());
    std::vector<std::uint32_t> images(k, 0);
    if (assignments <= static_cast<long double>(options.max_exhaustive)) {
      while (true) {
        if (morphism_separates(b, src, dst, g, images)) return GroupMorphism{gi, g.name(), images};
        std::size_t i = 0;
        while (i < k && ++images[i] == g.order()) images[i++] = 0;
        if (i == k) break;
      }
    }
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g.order() - 1));
    for (std::size_t trial = 0; trial < options.random_trials; ++trial) {
      for (auto& x : images) x = pick(rng);
      if (morphism_separates(b, src, dst, g, images)) return GroupMorphism{gi, g.name(), images};
    }
  }
  return std::nullopt;
}

}  // namespace bpolsep
