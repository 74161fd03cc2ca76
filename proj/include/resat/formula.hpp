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

#ifndef RESAT_FORMULA_HPP_
#define RESAT_FORMULA_HPP_

#include <map>

#include "resat/regex.hpp"

namespace resat {

/// Pattern parameter of a replaceall definition. Variable patterns are parsed
/// only so the classifier can reject them.
struct Pattern {
  enum class Kind { kConst, kRegex, kVar };
  Kind kind = Kind::kConst;
  Word text;        // kConst (may be empty)
  Regex re;         // kRegex
  std::string var;  // kVar

  std::string display() const;
};

/// Subject/replacement term: a variable or a constant word.
struct StringTerm {
  bool is_const = false;
  Word value;       // is_const
  std::string var;  // !is_const

  static StringTerm make_var(std::string v) { return {false, {}, std::move(v)}; }
  static StringTerm make_const(Word w) { return {true, std::move(w), {}}; }
};

struct Definition {
  enum class Kind { kReplaceAll, kConcat };
  std::string lhs;
  Kind kind = Kind::kReplaceAll;
  // kReplaceAll
  StringTerm subject;
  Pattern pattern;
  StringTerm replacement;
  // kConcat
  StringTerm cat_left;
  StringTerm cat_right;
};

struct Membership {
  std::string var;
  Regex re;
  std::string re_text;
};

/// len/character/indexof atoms: parsed, never interpreted.
struct ExtensionAtom {
  enum class Kind { kLength, kChar, kIndexOf };
  Kind kind;
  std::string text;
};

struct Formula {
  Alphabet alphabet;          // as declared
  Alphabet working_alphabet;  // alphabet plus desugaring letters
  std::vector<Definition> definitions;
  std::vector<Membership> memberships;
  std::vector<ExtensionAtom> extensions;
  std::vector<std::string> variables;  // user variables, first-appearance order

  bool defines(const std::string& var) const;
  const Definition* definition_of(const std::string& var) const;
  bool is_source(const std::string& var) const;
};

struct FormulaError : std::runtime_error {
  size_t line;
  FormulaError(size_t line_no, const std::string& msg)
      : std::runtime_error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

/// Parses the constraint DSL:
///   alphabet "01";
///   x := replaceall(y, /RE/, z);      x := replaceall(y, "lit", z);
///   x := y . z;                       (chains and parentheses are flattened)
///   assert x in /RE/;
///   assert len(x) = len(y);  assert x[i] = y[j];  assert t <= indexof(s1, s2);
/// `#` starts a comment. Statements end with `;`.
Formula parse_formula(const std::string& text);

/// Rewrites every concat definition as two replaceall definitions over two
/// fresh letters, and pins every user variable to the user alphabet so fresh
/// letters cannot leak into models. No-op for concat-free formulas.
Formula desugar_concat(const Formula& f);

/// Validates the straight-line property (single pass over the given order)
/// and returns the defined variables in definition order. Throws
/// FormulaError on self references, forward references, or cycles.
std::vector<std::string> check_straight_line(const Formula& f);

using Model = std::vector<std::pair<std::string, Word>>;

const Word* model_value(const Model& m, const std::string& var);

}  // namespace resat

#endif  // RESAT_FORMULA_HPP_
