#include <gtest/gtest.h>

#include "bpolsep/problem.hpp"
#include "bpolsep/random.hpp"
#include "bpolsep/validation.hpp"

using namespace bpolsep;

namespace {

const Alphabet kAb("ab");

SeparationProblem regexes(const char* r0, const char* r1) { return problem_from_regexes(r0, r1, kAb); }

bool pt(const SeparationProblem& p, std::size_t k) { return pt_separable_at_k(p.nfa, p.i1, p.f1, p.i2, p.f2, k); }

std::optional<std::pair<std::string, std::string>> dd1(const SeparationProblem& p, std::size_t k, std::size_t len) {
  return dd1_collision_search(p.nfa, p.i1, p.f1, p.i2, p.f2, k, len);
}

// L(0, 1) is empty; L(2, 2) = a*.
SeparationProblem empty_vs_a_star() {
  const Nfa x(3, kAb, {{1, 0, 0}, {2, 0, 2}});
  return {x, make_state_set(3, {0}), make_state_set(3, {1}), make_state_set(3, {2}), make_state_set(3, {2})};
}

std::set<std::string> subsequences(const std::string& w, std::size_t k) {
  std::set<std::string> out;
  for (unsigned mask = 0; mask < (1U << w.size()); ++mask) {
    std::string u;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mask >> i & 1U) u += w[i];
    if (u.size() <= k) out.insert(u);
  }
  return out;
}

std::string random_word(Rng& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::bernoulli_distribution coin;
  std::string w(len(rng), 'a');
  for (auto& c : w) c = coin(rng) ? 'a' : 'b';
  return w;
}

}  // namespace

TEST(SubwordProfile, Examples) {
  EXPECT_EQ(subword_profile("ab", 2).subwords, (std::set<std::string>{"", "a", "b", "ab"}));
  EXPECT_EQ(subword_profile("abab", 2).subwords, (std::set<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(subword_profile("", k).subwords, (std::set<std::string>{""}));
}

TEST(SubwordProfile, MatchesSubsequenceEnumeration) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const std::string w = random_word(rng, 9);
    const std::size_t k = i % 5;
    const auto p = subword_profile(w, k);
    EXPECT_EQ(p.subwords, subsequences(w, k)) << w;
    for (const auto& u : p.subwords)
      for (std::size_t j = 0; j < u.size(); ++j) EXPECT_TRUE(p.subwords.count(u.substr(0, j) + u.substr(j + 1)));
  }
}

TEST(SubwordProfile, GrowsUnderExtension) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::string u = random_word(rng, 6), v = random_word(rng, 6);
    const auto p = subword_profile(u, 3).subwords, q = subword_profile(u + v, 3).subwords, r = subword_profile(v + u, 3).subwords;
    EXPECT_TRUE(std::includes(q.begin(), q.end(), p.begin(), p.end()));
    EXPECT_TRUE(std::includes(r.begin(), r.end(), p.begin(), p.end()));
  }
}

TEST(PtSeparable, Examples) {
  EXPECT_TRUE(pt(regexes("ab", "ab(ab)(ab)*"), 3));
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_FALSE(pt(regexes("(ab)*", "(a|b)*aa(a|b)*"), k)) << k;
  const auto e = empty_vs_a_star();
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(pt(e, k));
}

TEST(PtSeparable, CollisionForAlternatingWords) {
  for (std::size_t k = 1; k <= 4; ++k) {
    std::string u;
    for (std::size_t i = 0; i < k; ++i) u += "ab";
    EXPECT_EQ(subword_profile(u, k), subword_profile(u + "aa" + u, k)) << k;
  }
}

TEST(PtSeparable, MonotoneInK) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Nfa x = random_nfa(rng, 3, kAb, 0.3);
    const auto s = random_state_set(rng, 3, 0.5), t = random_state_set(rng, 3, 0.5);
    const auto u = random_state_set(rng, 3, 0.5), v = random_state_set(rng, 3, 0.5);
    bool before = false;
    for (std::size_t k = 0; k <= 4; ++k) {
      const bool now = pt_separable_at_k(x, s, t, u, v, k);
      EXPECT_TRUE(!before || now) << format_nfa(x) << k;
      before = now;
    }
  }
}

TEST(PtSeparable, ProfilesOfEnumeratedWordsAreReached) {
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const Nfa x = random_nfa(rng, 3, kAb, 0.35);
    const auto s = make_state_set(3, {0}), t = make_state_set(3, {2});
    std::map<std::set<std::string>, std::size_t> ids;
    std::vector<std::set<std::string>> profiles;
    const auto reached = reachable_profiles(x, s, t, 2, ids, profiles, 10'000);
    for (const auto& w : enumerate_words(x, s, t, 6)) {
      const auto it = ids.find(subword_profile(w, 2).subwords);
      ASSERT_NE(it, ids.end()) << w;
      EXPECT_TRUE(reached.count(it->second)) << w;
    }
  }
}

TEST(PtSeparable, BudgetIsEnforced) {
  const auto p = regexes("(a|b)*", "(a|b)*");
  std::map<std::set<std::string>, std::size_t> ids;
  std::vector<std::set<std::string>> profiles;
  EXPECT_THROW(reachable_profiles(p.nfa, p.i1, p.f1, 3, ids, profiles, 2), ResourceLimit);
  EXPECT_THROW(pt_separable_at_k(p.nfa, p.i1, p.f1, p.i2, p.f2, 3, 2), ResourceLimit);
}

TEST(Dd1, ProfileExamples) {
  const auto p = dd1_profile("ab", 2);
  EXPECT_EQ(p.prefix, "ab");
  EXPECT_EQ(p.suffix, "ab");
  EXPECT_EQ(p.factor_sequences, (std::set<std::vector<std::string>>{{"a"}, {"b"}, {"ab"}, {"a", "b"}}));
  const auto q = dd1_profile("abba", 1);
  EXPECT_EQ(q.prefix, "a");
  EXPECT_EQ(q.suffix, "a");
  EXPECT_EQ(q.factor_sequences, (std::set<std::vector<std::string>>{{"a"}, {"b"}}));
  EXPECT_EQ(dd1_profile("", 3).prefix, "");
  EXPECT_TRUE(dd1_profile("", 3).factor_sequences.empty());
  EXPECT_NE(dd1_profile("abab", 2), dd1_profile("abaab", 2));
}

TEST(Dd1, CollisionSearchExamples) {
  EXPECT_FALSE(dd1(regexes("(ab)*", "(a|b)*aa(a|b)*"), 2, 10));
  const auto same = dd1(regexes("aa*", "aa*"), 2, 4);
  ASSERT_TRUE(same);
  EXPECT_EQ(*same, std::make_pair(std::string("a"), std::string("a")));
  EXPECT_FALSE(dd1(empty_vs_a_star(), 2, 6));
}

TEST(Dd1, CollisionPairsHaveEqualProfiles) {
  Rng rng(13);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    const Nfa x = random_nfa(rng, 3, kAb, 0.35);
    const auto s1 = make_state_set(3, {0}), t1 = make_state_set(3, {1});
    const auto s2 = make_state_set(3, {1}), t2 = make_state_set(3, {2});
    if (auto c = dd1_collision_search(x, s1, t1, s2, t2, 2, 6)) {
      ++found;
      EXPECT_EQ(dd1_profile(c->first, 2), dd1_profile(c->second, 2));
      EXPECT_TRUE(accepts(x, s1, t1, c->first));
      EXPECT_TRUE(accepts(x, s2, t2, c->second));
    }
  }
  EXPECT_GT(found, 0);
}
