#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"

namespace bpolsep {

/// Error in an NFA description; `line` is 1-based (0 for whole-file problems).
class NfaFileError : public std::runtime_error {
 public:
  NfaFileError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

template <bool AllowEpsilon>
struct BasicNfaFile {
  BasicNfa<AllowEpsilon> nfa;
  StateSet initial1;
  StateSet final1;
  std::optional<StateSet> initial2;
  std::optional<StateSet> final2;
};

using NfaFile = BasicNfaFile<false>;
using EpsNfaFile = BasicNfaFile<true>;

namespace detail {

inline bool is_epsilon_token(std::string_view tok) { return tok == "eps" || tok == "\xCE\xB5"; }

template <bool AllowEpsilon>
BasicNfaFile<AllowEpsilon> parse_nfa_text(std::string_view text) {
  struct Pending {
    std::size_t line;
    std::string src, sym, dst;
  };
  std::optional<std::size_t> states;
  std::optional<Alphabet> alphabet;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> sets[4];
  std::vector<Pending> trans;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& d = tok[0];
    if (d == "states") {
      if (tok.size() != 2) throw NfaFileError(lineno, "expected 'states <N>'");
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok[1], &used);
        if (used != tok[1].size()) throw std::invalid_argument("trailing");
        states = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw NfaFileError(lineno, "invalid state count '" + tok[1] + "'");
      }
    } else if (d == "alphabet") {
      std::string syms;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i].size() != 1) throw NfaFileError(lineno, "alphabet symbols must be single characters");
        syms += tok[i];
      }
      try {
        alphabet = Alphabet(syms);
      } catch (const std::invalid_argument& e) {
        throw NfaFileError(lineno, e.what());
      }
    } else if (d == "initial" || d == "final" || d == "initial2" || d == "final2") {
      const int slot = d == "initial" ? 0 : d == "final" ? 1 : d == "initial2" ? 2 : 3;
      sets[slot].emplace_back(lineno, std::vector<std::string>(tok.begin() + 1, tok.end()));
    } else if (d == "trans") {
      if (tok.size() != 4) throw NfaFileError(lineno, "expected 'trans <src> <sym> <dst>'");
      trans.push_back({lineno, tok[1], tok[2], tok[3]});
    } else {
      throw NfaFileError(lineno, "unknown directive '" + d + "'");
    }
  }
  if (!states) throw NfaFileError(0, "missing 'states' directive");
  if (!alphabet) throw NfaFileError(0, "missing 'alphabet' directive");

  auto parse_state = [&](std::size_t line, const std::string& s) -> StateId {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      throw NfaFileError(line, "invalid state '" + s + "'");
    }
    if (used != s.size()) throw NfaFileError(line, "invalid state '" + s + "'");
    if (v >= *states)
      throw NfaFileError(line, "state " + s + " out of range (states " + std::to_string(*states) + ")");
    return static_cast<StateId>(v);
  };

  std::vector<Transition> ts;
  for (const auto& p : trans) {
    Symbol sym;
    if (is_epsilon_token(p.sym)) {
      if (!AllowEpsilon) throw NfaFileError(p.line, "epsilon transitions are not allowed here");
      sym = kEpsilon;
    } else {
      auto idx = p.sym.size() == 1 ? alphabet->index_of(p.sym[0]) : std::nullopt;
      if (!idx) throw NfaFileError(p.line, "symbol '" + p.sym + "' not declared in the alphabet");
      sym = *idx;
    }
    ts.push_back({parse_state(p.line, p.src), sym, parse_state(p.line, p.dst)});
  }

  auto build_set = [&](int slot) {
    StateSet s(*states);
    for (const auto& [line, members] : sets[slot])
      for (const auto& m : members) s.set(parse_state(line, m));
    return s;
  };

  BasicNfaFile<AllowEpsilon> out{BasicNfa<AllowEpsilon>(*states, *alphabet, std::move(ts)), build_set(0),
                                 build_set(1), std::nullopt, std::nullopt};
  if (!sets[2].empty() || !sets[3].empty()) {
    out.initial2 = build_set(2);
    out.final2 = build_set(3);
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented NFA format:
///
///   alphabet a b        # single-character symbols
///   states 3
///   initial 0           # initial2 / final2 optional
///   final 2
///   trans 0 a 1         # repeatable; duplicates are merged
///
/// Directives may appear in any order; '#' starts a comment.
inline NfaFile parse_nfa_file(std::string_view text) { return detail::parse_nfa_text<false>(text); }

/// Same format, additionally accepting `eps` (or the UTF-8 epsilon) as the
/// symbol of a transition.
inline EpsNfaFile parse_eps_nfa_file(std::string_view text) { return detail::parse_nfa_text<true>(text); }

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Writes an automaton back in the same format (no state-set directives).
template <bool E>
std::string format_nfa(const BasicNfa<E>& a) {
  std::ostringstream os;
  os << "alphabet";
  for (char c : a.alphabet().symbols()) os << ' ' << c;
  os << "\nstates " << a.state_count() << '\n';
  for (const auto& t : a.transitions()) {
    os << "trans " << t.src << ' ';
    if (t.symbol == kEpsilon)
      os << "eps";
    else
      os << a.alphabet().symbol(t.symbol);
    os << ' ' << t.dst << '\n';
  }
  return os.str();
}

}  // namespace bpolsep
