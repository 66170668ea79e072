#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>
#include <string>

#include "bpolsep/algorithms.hpp"
#include "bpolsep/nfa_file.hpp"
#include "bpolsep/problem.hpp"
#include "bpolsep/regex.hpp"
#include "bpolsep/scc.hpp"

using namespace bpolsep;

namespace {

const Alphabet kAb("ab");

Nfa make(std::size_t n, const std::vector<Transition>& ts, const Alphabet& al = kAb) { return Nfa(n, al, ts); }

// Backtracking reference matcher over its own syntax tree.
struct Node {
  enum Kind { Lit, Eps, Cat, Alt, Star, Plus, Opt } kind;
  char c = 0;
  std::unique_ptr<Node> l, r;
};

class RefParser {
 public:
  explicit RefParser(std::string s) : s_(std::move(s)) {}
  std::unique_ptr<Node> parse() {
    auto n = alt();
    if (i_ != s_.size()) throw std::runtime_error("trailing");
    return n;
  }

 private:
  std::unique_ptr<Node> mk(Node::Kind k, std::unique_ptr<Node> l = {}, std::unique_ptr<Node> r = {}) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->l = std::move(l);
    n->r = std::move(r);
    return n;
  }
  std::unique_ptr<Node> alt() {
    auto n = cat();
    while (i_ < s_.size() && s_[i_] == '|') {
      ++i_;
      n = mk(Node::Alt, std::move(n), cat());
    }
    return n;
  }
  std::unique_ptr<Node> cat() {
    auto n = post();
    while (i_ < s_.size() && s_[i_] != '|' && s_[i_] != ')') n = mk(Node::Cat, std::move(n), post());
    return n;
  }
  std::unique_ptr<Node> post() {
    auto n = atom();
    while (i_ < s_.size() && (s_[i_] == '*' || s_[i_] == '+' || s_[i_] == '?')) {
      const char op = s_[i_++];
      n = mk(op == '*' ? Node::Star : op == '+' ? Node::Plus : Node::Opt, std::move(n));
    }
    return n;
  }
  std::unique_ptr<Node> atom() {
    if (s_[i_] == '(') {
      ++i_;
      if (s_[i_] == ')') {
        ++i_;
        return mk(Node::Eps);
      }
      auto n = alt();
      ++i_;
      return n;
    }
    auto n = mk(Node::Lit);
    n->c = s_[i_++];
    return n;
  }
  std::string s_;
  std::size_t i_ = 0;
};

std::set<std::size_t> ends(const Node& n, const std::string& w, std::size_t p) {
  switch (n.kind) {
    case Node::Lit:
      return p < w.size() && w[p] == n.c ? std::set<std::size_t>{p + 1} : std::set<std::size_t>{};
    case Node::Eps:
      return {p};
    case Node::Cat: {
      std::set<std::size_t> out;
      for (auto m : ends(*n.l, w, p))
        for (auto e : ends(*n.r, w, m)) out.insert(e);
      return out;
    }
    case Node::Alt: {
      auto out = ends(*n.l, w, p);
      for (auto e : ends(*n.r, w, p)) out.insert(e);
      return out;
    }
    case Node::Opt: {
      auto out = ends(*n.l, w, p);
      out.insert(p);
      return out;
    }
    case Node::Star:
    case Node::Plus: {
      std::set<std::size_t> out, frontier{p};
      if (n.kind == Node::Star) out.insert(p);
      while (!frontier.empty()) {
        std::set<std::size_t> next;
        for (auto m : frontier)
          for (auto e : ends(*n.l, w, m))
            if (out.insert(e).second) next.insert(e);
        frontier = std::move(next);
      }
      return out;
    }
  }
  return {};
}

bool ref_match(const std::string& re, const std::string& w) { return ends(*RefParser(re).parse(), w, 0).count(w.size()); }

std::string random_regex(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
  switch (pick(rng)) {
    case 0:
      return "a";
    case 1:
      return "b";
    case 2:
      return depth <= 0 ? "a" : "()";
    case 3:
    case 4:
      return random_regex(rng, depth - 1) + random_regex(rng, depth - 1);
    case 5:
      return "(" + random_regex(rng, depth - 1) + "|" + random_regex(rng, depth - 1) + ")";
    default: {
      static const char* ops = "*+?";
      std::uniform_int_distribution<int> op(0, 2);
      return "(" + random_regex(rng, depth - 1) + ")" + ops[op(rng)];
    }
  }
}

std::vector<std::string> all_words(std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size() && out[i].size() < max_len; ++i) {
    out.push_back(out[i] + "a");
    out.push_back(out[i] + "b");
  }
  return out;
}

}  // namespace

TEST(Alphabet, RejectsBadSymbols) {
  EXPECT_THROW(Alphabet(""), std::invalid_argument);
  EXPECT_THROW(Alphabet("aa"), std::invalid_argument);
  EXPECT_THROW(Alphabet("a*"), std::invalid_argument);
  EXPECT_THROW(Alphabet("a b"), std::invalid_argument);
  EXPECT_EQ(Alphabet("xy").index_of('y'), 1U);
  EXPECT_FALSE(Alphabet("xy").index_of('z'));
}

TEST(Nfa, ValidatesAndDeduplicates) {
  EXPECT_THROW(make(2, {{0, 0, 2}}), std::out_of_range);
  EXPECT_THROW(make(2, {{0, 5, 1}}), std::out_of_range);
  EXPECT_THROW(make(2, {{0, kEpsilon, 1}}), std::invalid_argument);
  const Nfa a = make(2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  EXPECT_EQ(a.transitions().size(), 2U);
  EXPECT_TRUE(a.has_transition(1, 1, 0));
  EXPECT_FALSE(a.has_transition(1, 0, 0));
  const EpsNfa e(2, kAb, {{0, kEpsilon, 1}, {0, 0, 1}});
  ASSERT_EQ(e.out(0).size(), 2U);
  EXPECT_EQ(e.out(0).back().symbol, kEpsilon);
}

TEST(PairNonempty, Examples) {
  const Nfa a = make(2, {{0, 0, 1}});
  EXPECT_TRUE(pair_nonempty(a, 0, 1));
  EXPECT_FALSE(pair_nonempty(a, 1, 0));
  EXPECT_TRUE(pair_nonempty(a, 1, 1));
  EXPECT_THROW(pair_nonempty(a, 0, 2), std::out_of_range);
  const EpsNfa e(2, kAb, {{0, kEpsilon, 1}});
  EXPECT_TRUE(pair_nonempty(e, 0, 1));
}

TEST(IntersectNonempty, Examples) {
  const Nfa cyc = make(2, {{0, 0, 1}, {1, 1, 0}});
  EXPECT_FALSE(intersect_nonempty(cyc, {{0, 0}, {1, 1}}, true));
  EXPECT_TRUE(intersect_nonempty(cyc, {{0, 0}}, false));
  EXPECT_TRUE(intersect_nonempty(cyc, {{0, 0}}, true));
  const Nfa loop = make(1, {{0, 0, 0}});
  EXPECT_TRUE(intersect_nonempty(loop, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, true));
  const Nfa none = make(1, {});
  EXPECT_FALSE(intersect_nonempty(none, {{0, 0}}, true));
  EXPECT_THROW(intersect_nonempty(none, {}, true), std::invalid_argument);
}

TEST(IntersectNonempty, SinglePairAgreesWithPairNonemptyExhaustively) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t slots = n * 2 * n;
    for (std::uint64_t mask = 0; mask < (1ULL << slots); ++mask) {
      std::vector<Transition> ts;
      for (std::size_t i = 0; i < slots; ++i)
        if (mask >> i & 1U) ts.push_back({StateId(i / (2 * n)), Symbol((i / n) % 2), StateId(i % n)});
      const Nfa a = make(n, ts);
      for (StateId q = 0; q < n; ++q)
        for (StateId r = 0; r < n; ++r) ASSERT_EQ(intersect_nonempty(a, {{q, r}}, false), pair_nonempty(a, q, r));
    }
  }
}

TEST(IntersectNonempty, EpsilonComponentsMoveIndependently) {
  const EpsNfa e(3, kAb, {{0, kEpsilon, 1}, {1, 0, 2}, {0, 0, 2}});
  EXPECT_TRUE(intersect_nonempty(e, {{0, 2}, {1, 2}}, true));
  EXPECT_FALSE(intersect_nonempty(e, {{0, 1}, {2, 2}}, true));
  EXPECT_TRUE(intersect_nonempty(e, {{0, 1}, {2, 2}}, false));
}

TEST(DisjointUnion, Examples) {
  const auto [u, offset] = disjoint_union(make(2, {{0, 0, 1}}), make(2, {{0, 1, 1}}));
  EXPECT_EQ(u.state_count(), 4U);
  EXPECT_EQ(offset, 2U);
  EXPECT_EQ(std::vector<Transition>(u.transitions().begin(), u.transitions().end()),
            (std::vector<Transition>{{0, 0, 1}, {2, 1, 3}}));
  const auto empty = disjoint_union(make(3, {}), make(3, {}));
  EXPECT_EQ(empty.nfa.state_count(), 6U);
  EXPECT_TRUE(empty.nfa.transitions().empty());
  EXPECT_THROW(disjoint_union(make(1, {}), make(1, {}, Alphabet("a"))), std::invalid_argument);
}

TEST(DisjointUnion, PreservesPairLanguages) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.3);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Transition> t1, t2;
    for (StateId q = 0; q < 3; ++q)
      for (Symbol c = 0; c < 2; ++c)
        for (StateId r = 0; r < 3; ++r) {
          if (coin(rng)) t1.push_back({q, c, r});
          if (coin(rng)) t2.push_back({q, c, r});
        }
    const Nfa a = make(3, t1), b = make(3, t2);
    const auto [u, off] = disjoint_union(a, b);
    for (StateId q = 0; q < 3; ++q)
      for (StateId r = 0; r < 3; ++r) {
        EXPECT_EQ(pair_nonempty(u, q, r), pair_nonempty(a, q, r));
        EXPECT_EQ(pair_nonempty(u, q + off, r + off), pair_nonempty(b, q, r));
        EXPECT_FALSE(pair_nonempty(u, q, r + off));
        EXPECT_FALSE(pair_nonempty(u, q + off, r));
      }
  }
}

TEST(Trim, Examples) {
  const Nfa a = make(3, {{0, 0, 1}});
  const auto t = trim(a, make_state_set(3, {0}), make_state_set(3, {1}));
  EXPECT_EQ(t.nfa.state_count(), 2U);
  EXPECT_EQ(t.renumbering[0], 0U);
  EXPECT_EQ(t.renumbering[1], 1U);
  EXPECT_FALSE(t.renumbering[2]);

  const Nfa full = make(2, {{0, 0, 1}, {1, 1, 0}});
  const auto id = trim(full, make_state_set(2, {0}), make_state_set(2, {1}));
  EXPECT_EQ(id.nfa, full);

  const auto dead = trim(make(3, {{0, 0, 1}}), make_state_set(3, {0}), make_state_set(3, {2}));
  EXPECT_EQ(dead.nfa.state_count(), 1U);
  EXPECT_TRUE(dead.nfa.transitions().empty());
}

TEST(Regex, Examples) {
  const auto star = parse_regex("(ab)*", kAb);
  for (std::string w : {"", "ab", "abab"}) EXPECT_TRUE(accepts(star.nfa, star.initial, star.finals, w)) << w;
  for (std::string w : {"a", "ba", "aba"}) EXPECT_FALSE(accepts(star.nfa, star.initial, star.finals, w)) << w;
  for (const auto& t : star.nfa.transitions()) EXPECT_NE(t.symbol, kEpsilon);

  const auto alt = parse_regex("a|b", kAb);
  EXPECT_EQ(enumerate_words(alt.nfa, alt.initial, alt.finals, 5), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(alt.initial.test(0));
  EXPECT_TRUE(alt.finals.test(alt.nfa.state_count() - 1));
}

TEST(Regex, Errors) {
  try {
    parse_regex("a(*", kAb);
    FAIL() << "no error";
  } catch (const RegexError& e) {
    EXPECT_EQ(e.offset(), 2U);
  }
  EXPECT_THROW(parse_regex("c", kAb), RegexError);
  EXPECT_THROW(parse_regex("", kAb), RegexError);
  EXPECT_THROW(parse_regex("(a", kAb), RegexError);
  EXPECT_THROW(parse_regex("a)", kAb), RegexError);
  EXPECT_THROW(parse_regex("*a", kAb), RegexError);
  EXPECT_THROW(parse_regex("a|", kAb), RegexError);
}

TEST(Regex, AgreesWithReferenceMatcher) {
  std::vector<std::string> corpus = {"a",         "b",          "ab",         "a|b",       "(ab)*",     "(ab)+",
                                     "a*b*",      "(a|b)*aa(a|b)*", "(aa)*",  "a(aa)*",    "()",        "()|a",
                                     "a?b?",      "((a|b)(a|b))*", "(a*)*",   "(a?)+",     "b(ab)*a",   "(a|())b",
                                     "a+b+a+",    "(ba|ab)*",   "((a)(b))?",  "(a|b)+",    "a*|b*",     "(()*)+"};
  std::mt19937_64 rng(20240601);
  while (corpus.size() < 80) corpus.push_back(random_regex(rng, 4));
  const auto words = all_words(8);
  for (const auto& re : corpus) {
    const auto r = parse_regex(re, kAb);
    std::set<std::string> expected;
    for (const auto& w : words) {
      const bool want = ref_match(re, w);
      ASSERT_EQ(accepts(r.nfa, r.initial, r.finals, w), want) << re << " on '" << w << "'";
      if (want) expected.insert(w);
    }
    const auto listed = enumerate_words(r.nfa, r.initial, r.finals, 8);
    EXPECT_EQ(std::set<std::string>(listed.begin(), listed.end()), expected) << re;
    // Initial state has no incoming edges.
    EXPECT_TRUE(r.nfa.in(0).empty()) << re;
  }
}

TEST(NfaFile, Examples) {
  const auto f = parse_nfa_file("states 2\nalphabet a\ninitial 0\nfinal 1\ntrans 0 a 1\n");
  EXPECT_EQ(f.nfa.state_count(), 2U);
  EXPECT_EQ(f.nfa.transitions().size(), 1U);
  EXPECT_TRUE(f.initial1.test(0));
  EXPECT_TRUE(f.final1.test(1));
  EXPECT_FALSE(f.initial2);

  try {
    parse_nfa_file("states 2\nalphabet a\ntrans 0 a 5\n");
    FAIL() << "no error";
  } catch (const NfaFileError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  const auto dup = parse_nfa_file("states 2\nalphabet a\ntrans 0 a 1\ntrans 0 a 1 # again\n");
  EXPECT_EQ(dup.nfa.transitions().size(), 1U);
}

TEST(NfaFile, Errors) {
  EXPECT_THROW(parse_nfa_file("states 2\nalphabet a\nfoo 1\n"), NfaFileError);
  EXPECT_THROW(parse_nfa_file("states 2\nalphabet a\ntrans 0 b 1\n"), NfaFileError);
  EXPECT_THROW(parse_nfa_file("states 2\nalphabet a\ntrans 0 eps 1\n"), NfaFileError);
  EXPECT_THROW(parse_nfa_file("alphabet a\n"), NfaFileError);
  EXPECT_THROW(parse_nfa_file("states 2\n"), NfaFileError);
  EXPECT_THROW(parse_nfa_file("states x\nalphabet a\n"), NfaFileError);
  EXPECT_NO_THROW(parse_eps_nfa_file("states 2\nalphabet a\ntrans 0 eps 1\n"));
}

TEST(NfaFile, FormatRoundTrips) {
  const EpsNfa e(3, kAb, {{0, kEpsilon, 1}, {1, 0, 2}, {2, 1, 0}});
  EXPECT_EQ(parse_eps_nfa_file(format_nfa(e)).nfa, e);
}

TEST(NfaFile, TwoLanguagesInOneFile) {
  const auto p = problem_from_nfa_text("states 2\nalphabet a\ninitial 0\nfinal 1\ninitial2 1\nfinal2 1\ntrans 0 a 1\n");
  EXPECT_TRUE(p.i2.test(1));
  EXPECT_THROW(problem_from_nfa_text("states 2\nalphabet a\ninitial 0\nfinal 1\n"), NfaFileError);
}

TEST(Scc, ReverseTopologicalIds) {
  const Nfa a = make(4, {{0, 0, 1}, {1, 0, 2}, {2, 0, 1}, {2, 1, 3}});
  const auto scc = strongly_connected_components(a);
  EXPECT_EQ(scc.count, 3U);
  EXPECT_EQ(scc.component[1], scc.component[2]);
  for (const auto& t : a.transitions()) EXPECT_GE(scc.component[t.src], scc.component[t.dst]);
}
