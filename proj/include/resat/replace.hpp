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

#ifndef RESAT_REPLACE_HPP_
#define RESAT_REPLACE_HPP_

#include "resat/nfa.hpp"
#include "resat/regex.hpp"

namespace resat {

struct MatchSpan {
  size_t start = 0;
  size_t length = 0;
  friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

/// Parse of a subject into alternating gaps and matches, left to right. Each
/// span is the leftmost-longest match of the pattern in the residual suffix;
/// spans are disjoint and ordered. Only defined for patterns that do not
/// match the empty word.
struct Decomposition {
  Word subject;
  std::vector<MatchSpan> spans;

  /// The gap before span i (i == spans.size() gives the trailing gap).
  Word gap(size_t i) const;
};

/// Leftmost-then-longest match of e in v. If e matches the empty word the
/// match is forced to start at position 0. nullopt iff no factor of v
/// (including eps when admissible) matches.
std::optional<MatchSpan> leftmost_longest_match(const Word& v, const Regex& e);

/// Pattern compiled once for repeated evaluation.
struct CompiledPattern {
  Nfa nfa;
  bool nullable;
  static CompiledPattern make(const Regex& e);
};

/// Replace every iterated leftmost-longest match of e in u by v. Patterns
/// matching the empty word insert v before each consumed letter and once at
/// the end of a fully matched residue.
Word replace_all(const Word& u, const Regex& e, const Word& v);
Word replace_all(const Word& u, const CompiledPattern& e, const Word& v);

/// Iterated leftmost-longest parse of v. Throws std::invalid_argument when
/// eps is in L(e).
Decomposition match_decomposition(const Word& v, const Regex& e);

/// Substitute `replacement` for every span; equals replace_all on the
/// decomposition's subject.
Word splice(const Decomposition& d, const Word& replacement);

}  // namespace resat

#endif  // RESAT_REPLACE_HPP_
