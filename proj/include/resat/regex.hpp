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

#ifndef RESAT_REGEX_HPP_
#define RESAT_REGEX_HPP_

#include <memory>
#include <optional>

#include "resat/alphabet.hpp"
#include "resat/types.hpp"

namespace resat {

enum class RegexKind { kEmpty, kEpsilon, kLiteral, kUnion, kConcat, kStar };

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
  RegexKind kind;
  Symbol sym = 0;  // kLiteral
  Regex left;      // kUnion/kConcat/kStar
  Regex right;     // kUnion/kConcat
};

namespace re {
Regex empty();
Regex eps();
Regex lit(Symbol s);
Regex alt(Regex a, Regex b);
Regex cat(Regex a, Regex b);
Regex star(Regex a);
/// Concatenation of literals for a whole word; eps() for the empty word.
Regex word(const Word& w);
/// (a1 + ... + an)* over the given alphabet; accepts exactly Sigma*.
Regex any_star(const Alphabet& sigma);
}  // namespace re

struct RegexError : std::runtime_error {
  size_t position;
  RegexError(size_t pos, const std::string& msg)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
};

/// Concrete syntax: `+` union, juxtaposition concatenation, `*` star,
/// `()` the empty word, `e?` = `(e+())`, `"..."` quoted literal words,
/// parentheses for grouping. Whitespace between tokens is ignored.
Regex parse_regex(const std::string& text, const Alphabet& alphabet);

/// True iff the empty word is in L(r). Purely syntactic.
bool epsilon_member(const Regex& r);

/// The literal word denoted by r, if r is (a concatenation of) literals or
/// epsilon; nullopt for anything with union/star/empty nodes.
std::optional<Word> literal_word(const Regex& r);

/// Symbols occurring in literals of r, in first-occurrence order.
Alphabet regex_symbols(const Regex& r);

std::string regex_to_string(const Regex& r);

}  // namespace resat

#endif  // RESAT_REGEX_HPP_
