// Copyright 2026 The resat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESAT_PARSING_HPP_
#define RESAT_PARSING_HPP_

#include "resat/nfa.hpp"
#include "resat/replace.hpp"

namespace resat {

// ---- window profiles (constant patterns) ------------------------------------

/// Bit vector of length |u|-1; bit j (0-based) is set iff the last j+1
/// letters read equal u[0..j].
struct WindowProfile {
  uint32_t bits = 0;
  uint32_t len = 0;  // |u|-1

  bool get(uint32_t j) const { return (bits >> j) & 1u; }  // j in [0, len)
  std::string display() const;
  friend auto operator<=>(const WindowProfile&, const WindowProfile&) = default;
};

/// Profile update when reading `a` after a position with profile `w`.
WindowProfile profile_step(const WindowProfile& w, Symbol a, const Word& u);

/// Exactly the profiles realized by positions of nonempty strings over the
/// alphabet; at most |u| of them. Requires |u| >= 2.
std::vector<WindowProfile> window_profiles(const Word& u, const Alphabet& sigma);

// ---- parsing automaton for constant patterns (A_u) ---------------------------

struct ConstParser {
  enum class Kind { kQ0, kSearch, kVerify };

  Nfa nfa;
  Word pattern;
  std::vector<Kind> kind;
  std::vector<WindowProfile> profile;
  std::vector<uint32_t> verify_pos;  // 1-based verify depth, kVerify only

  /// A complete verify corridor: entry --u[0]--> chain[0] --u[1]--> ...
  /// chain.size() == |u|-1; the exit letter u[|u|-1] leads back to q0.
  struct Corridor {
    State entry;
    std::vector<State> chain;
  };
  std::vector<Corridor> corridors;

  State q0() const { return 0; }
};

/// The parsing automaton whose unique accepting run on any word marks the
/// iterated leftmost occurrences of u by visits to q0. Requires |u| >= 2.
/// States are built lazily by forward exploration.
ConstParser build_parsing_automaton_const(const Word& u, const Alphabet& sigma);

// ---- parsing automaton for regex patterns (A_e0) ------------------------------

/// Subset of a pattern automaton's states; pattern automata are capped at 64
/// states so sets fit one machine word.
using Bits = uint64_t;

std::vector<Bits> red(std::vector<Bits> sets);
std::vector<std::vector<State>> red(const std::vector<std::vector<State>>& sets);

/// Pattern automaton normalized for the parsing constructions: eps-free, and
/// the initial state has no incoming transitions. Caps the state count at 64.
struct PatternAutomaton {
  Nfa nfa;
  Bits finals = 0;

  Bits step(Bits set, Symbol a) const;
};

PatternAutomaton normalize_pattern_automaton(const Nfa& a0);

enum class RegexParserFamily : uint8_t {
  kContinueSearchLeft,  // also: pass-through letter in the nullable variant
  kStartSearchLong,
  kContinueSearchLong,  // also: continue a nullable-variant match
  kEndSearchLong,       // also: last letter of a nullable-variant match
  kLetterMatch,         // the read letter alone is the match
  kEpsilonMatch,        // nullable variant: empty match plus pass-through letter
  kStartMatch,          // nullable variant: first letter of a match of length >= 2
};

struct RegexParser {
  enum class Mode : uint8_t { kSearchLeft, kSearchLong };

  Nfa nfa;
  PatternAutomaton pattern;

  struct StateInfo {
    Mode mode;
    std::vector<Bits> rho;  // kSearchLeft: thread sets, excluding the tail {q00}
    Bits thread = 0;        // kSearchLong
    Bits forbidden = 0;
  };
  std::vector<StateInfo> info;

  struct Tagged {
    State from;
    Symbol sym;
    State to;
    RegexParserFamily family;
  };
  std::vector<Tagged> tagged;
};

/// The two-mode leftmost-longest parsing automaton for a pattern automaton
/// with eps not in its language. The input is normalized internally.
RegexParser build_parsing_automaton_regex(const Nfa& a0, const Alphabet& sigma,
                                          Budget* budget = nullptr);

// ---- parsing automaton for nullable regex patterns ---------------------------

/// Parser for patterns whose language contains eps (including exactly {eps}).
/// A word parses as match, pass-letter, match, ..., pass-letter, match where
/// each match is the longest prefix of the residue in the language (possibly
/// empty) and the trailing match consumes the rest.
struct NullableParser {
  enum class Mode : uint8_t { kPreMatch, kInMatch, kPostMatch };

  Nfa nfa;
  PatternAutomaton pattern;

  struct StateInfo {
    Mode mode;
    Bits thread = 0;  // kInMatch
    Bits forbidden = 0;
  };
  std::vector<StateInfo> info;

  struct Tagged {
    State from;
    Symbol sym;
    State to;
    RegexParserFamily family;
  };
  std::vector<Tagged> tagged;
};

NullableParser build_parsing_automaton_nullable(const Nfa& a0, const Alphabet& sigma,
                                                Budget* budget = nullptr);

// ---- run analysis ------------------------------------------------------------

/// Number of accepting runs of a on w (eps-free a).
uint64_t count_accepting_runs(const Nfa& a, const Word& w);

/// The accepting run when it is unique; nullopt otherwise.
std::optional<std::vector<State>> unique_accepting_run(const Nfa& a, const Word& w);

/// Match spans recovered from a parsing-automaton run.
std::vector<MatchSpan> spans_from_const_run(const ConstParser& p, const std::vector<State>& run);
std::vector<MatchSpan> spans_from_regex_run(const RegexParser& p, const std::vector<State>& run,
                                            const Word& w);
/// Nullable variant: returns every match span, empty matches included, in
/// subject order (the trailing match is always present).
std::vector<MatchSpan> spans_from_nullable_run(const NullableParser& p,
                                               const std::vector<State>& run, const Word& w);

}  // namespace resat

#endif  // RESAT_PARSING_HPP_
