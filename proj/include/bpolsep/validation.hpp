#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algorithms.hpp"

namespace bpolsep {

/// Scattered subwords of length <= k of some word.
struct SubwordProfile {
  std::size_t k = 0;
  std::set<std::string> subwords;

  bool operator==(const SubwordProfile&) const = default;
  auto operator<=>(const SubwordProfile&) const = default;
};

namespace detail {

inline std::set<std::string> extend_profile(const std::set<std::string>& p, char c, std::size_t k) {
  std::set<std::string> out = p;
  for (const auto& u : p)
    if (u.size() < k) out.insert(u + c);
  return out;
}

}  // namespace detail

inline SubwordProfile subword_profile(std::string_view w, std::size_t k) {
  SubwordProfile p{k, {std::string{}}};
  for (char c : w) p.subwords = detail::extend_profile(p.subwords, c, k);
  return p;
}

class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// Subword profiles of the words of L_a(I, F), by a search over
/// (state, profile) with hash-consed profiles.
inline std::set<std::size_t> reachable_profiles(const Nfa& a, const StateSet& initial, const StateSet& final_states,
                                                std::size_t k, std::map<std::set<std::string>, std::size_t>& ids,
                                                std::vector<std::set<std::string>>& profiles,
                                                std::size_t budget) {
  auto intern = [&](std::set<std::string> p) {
    auto [it, fresh] = ids.emplace(std::move(p), profiles.size());
    if (fresh) {
      if (profiles.size() >= budget) throw ResourceLimit("subword profile budget exhausted");
      profiles.push_back(it->first);
    }
    return it->second;
  };
  std::map<std::pair<std::size_t, Symbol>, std::size_t> step;
  const std::size_t empty_id = intern({std::string{}});
  std::set<std::pair<StateId, std::size_t>> seen;
  std::vector<std::pair<StateId, std::size_t>> stack;
  initial.for_each([&](std::size_t q) {
    seen.emplace(static_cast<StateId>(q), empty_id);
    stack.emplace_back(static_cast<StateId>(q), empty_id);
  });
  std::set<std::size_t> out;
  while (!stack.empty()) {
    const auto [q, p] = stack.back();
    stack.pop_back();
    if (final_states.test(q)) out.insert(p);
    for (const auto& t : a.out(q)) {
      auto key = std::make_pair(p, t.symbol);
      auto it = step.find(key);
      if (it == step.end()) {
        const auto next = intern(detail::extend_profile(profiles[p], a.alphabet().symbol(t.symbol), k));
        it = step.emplace(key, next).first;
      }
      if (seen.emplace(t.dst, it->second).second) stack.emplace_back(t.dst, it->second);
    }
  }
  return out;
}

/// No word of L(i1, f1) has the same <=k subwords as a word of L(i2, f2).
/// true means a Boolean combination of subword tests separates the two.
inline bool pt_separable_at_k(const Nfa& a, const StateSet& i1, const StateSet& f1, const StateSet& i2,
                              const StateSet& f2, std::size_t k, std::size_t budget = 100'000) {
  std::map<std::set<std::string>, std::size_t> ids;
  std::vector<std::set<std::string>> profiles;
  const auto p1 = reachable_profiles(a, i1, f1, k, ids, profiles, budget);
  const auto p2 = reachable_profiles(a, i2, f2, k, ids, profiles, budget);
  for (auto p : p1)
    if (p2.count(p)) return false;
  return true;
}

/// Profile used for dot-depth-one evidence: prefix and suffix of length
/// min(k, |w|), and every sequence of nonempty factors of total length <= k
/// occurring left to right at disjoint positions.
struct Dd1Profile {
  std::string prefix, suffix;
  std::set<std::vector<std::string>> factor_sequences;

  bool operator==(const Dd1Profile&) const = default;
  auto operator<=>(const Dd1Profile&) const = default;
};

inline Dd1Profile dd1_profile(const std::string& w, std::size_t k) {
  Dd1Profile p;
  p.prefix = w.substr(0, std::min(k, w.size()));
  p.suffix = w.substr(w.size() - std::min(k, w.size()));
  std::vector<std::string> seq;
  auto rec = [&](auto& self, std::size_t from, std::size_t budget) -> void {
    for (std::size_t i = from; i < w.size(); ++i)
      for (std::size_t len = 1; len <= budget && i + len <= w.size(); ++len) {
        seq.push_back(w.substr(i, len));
        p.factor_sequences.insert(seq);
        self(self, i + len, budget - len);
        seq.pop_back();
      }
  };
  rec(rec, 0, k);
  return p;
}

/// First pair (u, v), u in L(i1, f1) and v in L(i2, f2), |u|, |v| <= max_len,
/// with equal DD1 profiles. Evidence against separability at parameter k.
inline std::optional<std::pair<std::string, std::string>> dd1_collision_search(
    const Nfa& a, const StateSet& i1, const StateSet& f1, const StateSet& i2, const StateSet& f2, std::size_t k,
    std::size_t max_len, std::size_t max_words = 20'000) {
  const auto w1 = enumerate_words(a, i1, f1, max_len, max_words);
  if (w1.empty()) return std::nullopt;
  std::map<Dd1Profile, std::string> first;
  for (const auto& u : w1) first.emplace(dd1_profile(u, k), u);
  for (const auto& v : enumerate_words(a, i2, f2, max_len, max_words))
    if (auto it = first.find(dd1_profile(v, k)); it != first.end()) return std::make_pair(it->second, v);
  return std::nullopt;
}

}  // namespace bpolsep
