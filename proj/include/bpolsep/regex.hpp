#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algorithms.hpp"
#include "automaton.hpp"

namespace bpolsep {

/// Malformed regex or literal outside the alphabet; `offset` is the byte
/// position of the offending character (text.size() for unexpected end).
class RegexError : public std::runtime_error {
 public:
  RegexError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Regex compiled to an epsilon-free automaton: L(initial, finals) is the
/// regex language. State 0 is the only initial state and has no incoming
/// transitions; the last state is the nonempty-word final state (absent if
/// the language has no nonempty word), and state 0 is also final exactly
/// when the empty word belongs to the language.
struct RegexNfa {
  Nfa nfa;
  StateSet initial;
  StateSet finals;
};

namespace detail {

/// Thompson fragment over an epsilon-NFA under construction.
struct Fragment {
  StateId start;
  StateId accept;
};

class ThompsonBuilder {
 public:
  ThompsonBuilder(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Fragment parse() {
    if (text_.empty()) throw RegexError(0, "empty regex");
    Fragment f = alternation();
    if (pos_ != text_.size()) throw RegexError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

  std::size_t state_count() const { return state_count_; }
  std::vector<Transition>& transitions() { return transitions_; }

 private:
  StateId fresh() { return static_cast<StateId>(state_count_++); }
  void eps(StateId a, StateId b) { transitions_.push_back({a, kEpsilon, b}); }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Fragment alternation() {
    Fragment left = concatenation();
    while (at('|')) {
      ++pos_;
      Fragment right = concatenation();
      const StateId s = fresh(), f = fresh();
      eps(s, left.start);
      eps(s, right.start);
      eps(left.accept, f);
      eps(right.accept, f);
      left = {s, f};
    }
    return left;
  }

  bool starts_atom() const { return pos_ < text_.size() && text_[pos_] != '|' && text_[pos_] != ')'; }

  Fragment concatenation() {
    if (!starts_atom()) throw RegexError(pos_, pos_ < text_.size() ? "expected an expression" : "unexpected end");
    Fragment acc = postfix();
    while (starts_atom()) {
      Fragment next = postfix();
      eps(acc.accept, next.start);
      acc.accept = next.accept;
    }
    return acc;
  }

  Fragment postfix() {
    Fragment f = atom();
    while (at('*') || at('+') || at('?')) {
      const char op = text_[pos_++];
      const StateId s = fresh(), e = fresh();
      eps(s, f.start);
      eps(f.accept, e);
      if (op != '+') eps(s, e);
      if (op != '?') eps(f.accept, f.start);
      f = {s, e};
    }
    return f;
  }

  Fragment atom() {
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      if (at(')')) {
        ++pos_;
        const StateId s = fresh(), e = fresh();
        eps(s, e);
        return {s, e};
      }
      Fragment inner = alternation();
      if (!at(')')) throw RegexError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '*' || c == '+' || c == '?') throw RegexError(pos_, std::string("dangling '") + c + "'");
    auto sym = alphabet_.index_of(c);
    if (!sym) throw RegexError(pos_, std::string("literal '") + c + "' is not in the alphabet");
    ++pos_;
    const StateId s = fresh(), e = fresh();
    transitions_.push_back({s, *sym, e});
    return {s, e};
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
  std::size_t state_count_ = 0;
  std::vector<Transition> transitions_;
};

}  // namespace detail

inline RegexNfa parse_regex(std::string_view text, const Alphabet& alphabet) {
  detail::ThompsonBuilder builder(text, alphabet);
  const detail::Fragment frag = builder.parse();
  const EpsNfa thompson(builder.state_count(), alphabet, std::move(builder.transitions()));
  const std::size_t n = thompson.state_count();

  std::vector<StateSet> closure(n);
  for (StateId q = 0; q < n; ++q) {
    StateSet seen(n);
    seen.set(q);
    std::vector<StateId> stack{q};
    while (!stack.empty()) {
      const StateId p = stack.back();
      stack.pop_back();
      for (const auto& t : thompson.out(p))
        if (t.symbol == kEpsilon && seen.insert(t.dst)) stack.push_back(t.dst);
    }
    closure[q] = std::move(seen);
  }

  // Layout: 0 = fresh initial, 1..n = Thompson states, n+1 = final.
  const auto shift = [](StateId q) { return q + 1; };
  const auto final_state = static_cast<StateId>(n + 1);
  std::vector<Transition> ts;
  auto add_moves = [&](StateId from_new, StateId from_old) {
    closure[from_old].for_each([&](std::size_t mid) {
      for (const auto& t : thompson.out(static_cast<StateId>(mid))) {
        if (t.symbol == kEpsilon) continue;
        ts.push_back({from_new, t.symbol, shift(t.dst)});
        if (closure[t.dst].test(frag.accept)) ts.push_back({from_new, t.symbol, final_state});
      }
    });
  };
  add_moves(0, frag.start);
  for (StateId q = 0; q < n; ++q) add_moves(shift(q), q);

  const Nfa raw(n + 2, alphabet, std::move(ts));
  const bool accepts_empty = closure[frag.start].test(frag.accept);
  auto [nfa, map] = trim(raw, make_state_set(raw.state_count(), {0}), make_state_set(raw.state_count(), {final_state}));

  StateSet initial(nfa.state_count()), finals(nfa.state_count());
  initial.set(0);
  if (accepts_empty) finals.set(0);
  if (map[final_state] && *map[final_state] != 0) finals.set(*map[final_state]);
  return {std::move(nfa), std::move(initial), std::move(finals)};
}

}  // namespace bpolsep
