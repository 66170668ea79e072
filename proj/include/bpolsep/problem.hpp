#pragma once

#include <string>
#include <string_view>

#include "algorithms.hpp"
#include "nfa_file.hpp"
#include "regex.hpp"

namespace bpolsep {

/// Two languages L0 = L(i1, f1) and L1 = L(i2, f2) over one automaton.
struct SeparationProblem {
  Nfa nfa;
  StateSet i1, f1, i2, f2;

  SeparationProblem swapped() const { return {nfa, i2, f2, i1, f1}; }
};

inline SeparationProblem union_problem(const Nfa& a0, const StateSet& i0, const StateSet& f0, const Nfa& a1,
                                       const StateSet& i1, const StateSet& f1) {
  auto [nfa, offset] = disjoint_union(a0, a1);
  const std::size_t n = nfa.state_count();
  return {nfa, shift_state_set(i0, n, 0), shift_state_set(f0, n, 0), shift_state_set(i1, n, offset),
          shift_state_set(f1, n, offset)};
}

inline SeparationProblem problem_from_regexes(std::string_view r0, std::string_view r1, const Alphabet& alphabet) {
  const RegexNfa a = parse_regex(r0, alphabet);
  const RegexNfa b = parse_regex(r1, alphabet);
  return union_problem(a.nfa, a.initial, a.finals, b.nfa, b.initial, b.finals);
}

/// One file declaring initial/final and initial2/final2.
inline SeparationProblem problem_from_nfa_text(std::string_view text) {
  NfaFile f = parse_nfa_file(text);
  if (!f.initial2 || !f.final2)
    throw NfaFileError(0, "a single automaton file needs `initial2` and `final2` for the second language");
  return {std::move(f.nfa), std::move(f.initial1), std::move(f.final1), std::move(*f.initial2),
          std::move(*f.final2)};
}

/// Two files, one language each (their `initial`/`final` directives).
inline SeparationProblem problem_from_nfa_texts(std::string_view t0, std::string_view t1) {
  const NfaFile a = parse_nfa_file(t0);
  const NfaFile b = parse_nfa_file(t1);
  return union_problem(a.nfa, a.initial1, a.final1, b.nfa, b.initial1, b.final1);
}

}  // namespace bpolsep
