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

#include "resat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace resat {

std::string Pattern::display() const {
  switch (kind) {
    case Kind::kConst:
      return "\"" + word_to_string(text) + "\"";
    case Kind::kRegex:
      return "/" + regex_to_string(re) + "/";
    case Kind::kVar:
      return var;
  }
  return "";
}

bool Formula::defines(const std::string& var) const { return definition_of(var) != nullptr; }

const Definition* Formula::definition_of(const std::string& var) const {
  for (const Definition& d : definitions) {
    if (d.lhs == var) return &d;
  }
  return nullptr;
}

bool Formula::is_source(const std::string& var) const { return !defines(var); }

const Word* model_value(const Model& m, const std::string& var) {
  for (const auto& [v, w] : m) {
    if (v == var) return &w;
  }
  return nullptr;
}

// ---- tokenizer -------------------------------------------------------------

namespace {

struct Token {
  enum Kind {
    kIdent,
    kString,   // "..."
    kRegex,    // /.../
    kInt,
    kAssign,   // :=
    kLe,       // <=
    kGe,       // >=
    kEq,       // =
    kSemi,
    kComma,
    kDot,
    kLParen,
    kRParen,
    kLBracket,
    kRBracket,
    kEnd,
  };
  Kind kind;
  std::string text;
  size_t line;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    size_t line = line_;
    if (pos_ >= text_.size()) return {Token::kEnd, "", line};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      return {Token::kIdent, text_.substr(start, pos_ - start), line};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {Token::kInt, text_.substr(start, pos_ - start), line};
    }
    if (c == '"') return lex_delimited('"', Token::kString, "unterminated string");
    if (c == '/') return lex_delimited('/', Token::kRegex, "unterminated regex");
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      pos_ += 2;
      return {Token::kAssign, ":=", line};
    }
    if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      pos_ += 2;
      return {Token::kLe, "<=", line};
    }
    if (c == '>' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      pos_ += 2;
      return {Token::kGe, ">=", line};
    }
    ++pos_;
    switch (c) {
      case '=': return {Token::kEq, "=", line};
      case ';': return {Token::kSemi, ";", line};
      case ',': return {Token::kComma, ",", line};
      case '.': return {Token::kDot, ".", line};
      case '(': return {Token::kLParen, "(", line};
      case ')': return {Token::kRParen, ")", line};
      case '[': return {Token::kLBracket, "[", line};
      case ']': return {Token::kRBracket, "]", line};
      default: throw FormulaError(line, std::string("unexpected character '") + c + "'");
    }
  }

  size_t line() const { return line_; }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Token lex_delimited(char delim, Token::Kind kind, const char* err) {
    size_t line = line_;
    ++pos_;  // opening delimiter
    std::string body;
    while (pos_ < text_.size() && text_[pos_] != delim) {
      if (text_[pos_] == '\n') throw FormulaError(line, err);
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && kind == Token::kString) {
        ++pos_;
      }
      body.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) throw FormulaError(line, err);
    ++pos_;  // closing delimiter
    return {kind, body, line};
  }

  const std::string& text_;
  size_t pos_ = 0;
  size_t line_ = 1;
};

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : lex_(text) { advance(); }

  Formula run() {
    while (cur_.kind != Token::kEnd) statement();
    finish();
    return std::move(f_);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) throw FormulaError(cur_.line, std::string("expected ") + what);
    advance();
  }

  std::string expect_ident(const char* what) {
    if (cur_.kind != Token::kIdent) throw FormulaError(cur_.line, std::string("expected ") + what);
    std::string s = cur_.text;
    advance();
    return s;
  }

  void note_var(const std::string& v) {
    if (std::find(f_.variables.begin(), f_.variables.end(), v) == f_.variables.end()) {
      f_.variables.push_back(v);
    }
  }

  Word check_word(const std::string& s, size_t line) {
    if (!alphabet_declared_) throw FormulaError(line, "alphabet not declared");
    Word w = to_word(s);
    for (Symbol sym : w) {
      if (!f_.alphabet.contains(sym)) {
        throw FormulaError(line, "symbol '" + word_to_string(Word(1, sym)) + "' not in alphabet");
      }
    }
    return w;
  }

  Regex check_regex(const std::string& s, size_t line) {
    if (!alphabet_declared_) throw FormulaError(line, "alphabet not declared");
    try {
      return parse_regex(s, f_.alphabet);
    } catch (const RegexError& e) {
      throw FormulaError(line, std::string("regex error: ") + e.what());
    }
  }

  void statement() {
    if (cur_.kind == Token::kIdent && cur_.text == "alphabet") {
      advance();
      if (cur_.kind != Token::kString) throw FormulaError(cur_.line, "expected alphabet string");
      if (alphabet_declared_) throw FormulaError(cur_.line, "alphabet declared twice");
      for (char c : cur_.text) {
        if (c == '"' || c == '\\' || c == '/' || static_cast<unsigned char>(c) <= 0x20) {
          throw FormulaError(cur_.line, "symbol not allowed in an alphabet");
        }
      }
      f_.alphabet = Alphabet(to_word(cur_.text));
      f_.working_alphabet = f_.alphabet;
      alphabet_declared_ = true;
      advance();
      expect(Token::kSemi, "';'");
      return;
    }
    if (cur_.kind == Token::kIdent && cur_.text == "assert") {
      advance();
      assertion();
      return;
    }
    definition();
  }

  // term inside replaceall(...) / concat expressions
  StringTerm term() {
    if (cur_.kind == Token::kString) {
      Word w = check_word(cur_.text, cur_.line);
      advance();
      return StringTerm::make_const(std::move(w));
    }
    std::string v = expect_ident("a variable or string literal");
    note_var(v);
    return StringTerm::make_var(v);
  }

  // concat operand: term or parenthesized concat chain, flattened into defs
  StringTerm cat_atom() {
    if (cur_.kind == Token::kLParen) {
      advance();
      StringTerm t = cat_chain();
      expect(Token::kRParen, "')'");
      return t;
    }
    return term();
  }

  StringTerm cat_chain() {
    StringTerm left = cat_atom();
    while (cur_.kind == Token::kDot) {
      advance();
      StringTerm right = cat_atom();
      std::string tmp = "%c" + std::to_string(temp_counter_++);
      Definition d;
      d.lhs = tmp;
      d.kind = Definition::Kind::kConcat;
      d.cat_left = std::move(left);
      d.cat_right = std::move(right);
      f_.definitions.push_back(std::move(d));
      left = StringTerm::make_var(tmp);
    }
    return left;
  }

  void definition() {
    size_t line = cur_.line;
    std::string lhs = expect_ident("a definition or assert");
    note_var(lhs);
    expect(Token::kAssign, "':='");
    if (defined_.count(lhs)) throw FormulaError(line, "variable '" + lhs + "' defined twice");
    defined_.insert(lhs);

    if (cur_.kind == Token::kIdent && cur_.text == "replaceall") {
      advance();
      expect(Token::kLParen, "'('");
      Definition d;
      d.lhs = lhs;
      d.kind = Definition::Kind::kReplaceAll;
      d.subject = term();
      expect(Token::kComma, "','");
      if (cur_.kind == Token::kRegex) {
        d.pattern.kind = Pattern::Kind::kRegex;
        d.pattern.re = check_regex(cur_.text, cur_.line);
        advance();
      } else if (cur_.kind == Token::kString) {
        d.pattern.kind = Pattern::Kind::kConst;
        d.pattern.text = check_word(cur_.text, cur_.line);
        advance();
      } else {
        d.pattern.kind = Pattern::Kind::kVar;
        d.pattern.var = expect_ident("a pattern");
        note_var(d.pattern.var);
      }
      expect(Token::kComma, "','");
      d.replacement = term();
      expect(Token::kRParen, "')'");
      expect(Token::kSemi, "';'");
      f_.definitions.push_back(std::move(d));
      return;
    }

    // concat definition: chain flattens into temporaries, the last one is
    // renamed to the defined variable
    StringTerm value = cat_chain();
    expect(Token::kSemi, "';'");
    if (!f_.definitions.empty() && f_.definitions.back().kind == Definition::Kind::kConcat &&
        !value.is_const && value.var == f_.definitions.back().lhs &&
        value.var.rfind("%c", 0) == 0) {
      f_.definitions.back().lhs = lhs;
      --temp_counter_;
      return;
    }
    throw FormulaError(line, "expected replaceall(...) or a '.' concatenation");
  }

  void assertion() {
    size_t line = cur_.line;
    if (cur_.kind == Token::kIdent && cur_.text == "len") {
      // assert len(x) = len(y);
      std::string text = "len(";
      advance();
      expect(Token::kLParen, "'('");
      text += expect_ident("a variable") + ") = len(";
      expect(Token::kRParen, "')'");
      expect(Token::kEq, "'='");
      if (!(cur_.kind == Token::kIdent && cur_.text == "len"))
        throw FormulaError(cur_.line, "expected len(...)");
      advance();
      expect(Token::kLParen, "'('");
      text += expect_ident("a variable") + ")";
      expect(Token::kRParen, "')'");
      expect(Token::kSemi, "';'");
      f_.extensions.push_back({ExtensionAtom::Kind::kLength, text});
      return;
    }
    if (cur_.kind != Token::kInt && cur_.kind != Token::kIdent) {
      throw FormulaError(line, "malformed assert");
    }
    bool was_ident = cur_.kind == Token::kIdent;
    std::string var = cur_.text;
    advance();
    if (cur_.kind == Token::kLe || cur_.kind == Token::kGe) {
      // assert t <= indexof(s1, s2);  (or >=)
      std::string text = var + " " + cur_.text + " indexof(";
      advance();
      if (!(cur_.kind == Token::kIdent && cur_.text == "indexof"))
        throw FormulaError(cur_.line, "expected indexof(...)");
      advance();
      expect(Token::kLParen, "'('");
      text += indexof_arg() + ", ";
      expect(Token::kComma, "','");
      text += indexof_arg() + ")";
      expect(Token::kRParen, "')'");
      expect(Token::kSemi, "';'");
      f_.extensions.push_back({ExtensionAtom::Kind::kIndexOf, text});
      return;
    }
    if (was_ident && cur_.kind == Token::kIdent && cur_.text == "in") {
      // assert x in /RE/;
      advance();
      if (cur_.kind != Token::kRegex) throw FormulaError(cur_.line, "expected /regex/");
      note_var(var);
      Membership m;
      m.var = var;
      m.re_text = cur_.text;
      m.re = check_regex(cur_.text, cur_.line);
      advance();
      expect(Token::kSemi, "';'");
      f_.memberships.push_back(std::move(m));
      return;
    }
    if (was_ident && cur_.kind == Token::kLBracket) {
      // assert x[i] = y[j];
      advance();
      std::string text = var + "[" + index_token() + "] = ";
      expect(Token::kRBracket, "']'");
      expect(Token::kEq, "'='");
      text += expect_ident("a variable");
      expect(Token::kLBracket, "'['");
      text += "[" + index_token() + "]";
      expect(Token::kRBracket, "']'");
      expect(Token::kSemi, "';'");
      f_.extensions.push_back({ExtensionAtom::Kind::kChar, text});
      return;
    }
    throw FormulaError(line, "malformed assert");
  }

  std::string index_token() {
    if (cur_.kind == Token::kInt || cur_.kind == Token::kIdent) {
      std::string s = cur_.text;
      advance();
      return s;
    }
    throw FormulaError(cur_.line, "expected an index");
  }

  std::string indexof_arg() {
    if (cur_.kind == Token::kString) {
      std::string s = "\"" + cur_.text + "\"";
      advance();
      return s;
    }
    return expect_ident("a string term");
  }

  void finish() {
    if (!alphabet_declared_ && (!f_.definitions.empty() || !f_.memberships.empty())) {
      throw FormulaError(1, "alphabet not declared");
    }
  }

  Lexer lex_;
  Token cur_;
  Formula f_;
  bool alphabet_declared_ = false;
  std::set<std::string> defined_;
  int temp_counter_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return FormulaParser(text).run(); }

// ---- desugaring ------------------------------------------------------------

Formula desugar_concat(const Formula& f) {
  bool any = std::any_of(f.definitions.begin(), f.definitions.end(), [](const Definition& d) {
    return d.kind == Definition::Kind::kConcat;
  });
  if (!any) return f;

  Formula out = f;
  out.definitions.clear();
  const Symbol fa = kFreshLetterBase;      // stands in for s1 in "ab"
  const Symbol fb = kFreshLetterBase + 1;  // stands in for s2
  out.working_alphabet.add(fa);
  out.working_alphabet.add(fb);

  int temp = 0;
  for (const Definition& d : f.definitions) {
    if (d.kind != Definition::Kind::kConcat) {
      out.definitions.push_back(d);
      continue;
    }
    // x = s1 . s2   ~>   x' = replaceall(ab, a, s1), x = replaceall(x', b, s2)
    std::string tmp = "%d" + std::to_string(temp++);
    Definition first;
    first.lhs = tmp;
    first.subject = StringTerm::make_const(Word{fa, fb});
    first.pattern.kind = Pattern::Kind::kConst;
    first.pattern.text = Word(1, fa);
    first.replacement = d.cat_left;
    Definition second;
    second.lhs = d.lhs;
    second.subject = StringTerm::make_var(tmp);
    second.pattern.kind = Pattern::Kind::kConst;
    second.pattern.text = Word(1, fb);
    second.replacement = d.cat_right;
    out.definitions.push_back(std::move(first));
    out.definitions.push_back(std::move(second));
  }

  // Pin every user variable to the user alphabet: fresh letters must never
  // appear in values of original variables, otherwise the second rewrite step
  // could mangle them and solutions would not map back.
  Regex sigma_star = re::any_star(f.alphabet);
  for (const std::string& v : f.variables) {
    out.memberships.push_back({v, sigma_star, "<user-alphabet>*"});
  }
  return out;
}

// ---- straight-line check ---------------------------------------------------

std::vector<std::string> check_straight_line(const Formula& f) {
  std::set<std::string> defined_later;
  for (const Definition& d : f.definitions) defined_later.insert(d.lhs);

  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const Definition& d : f.definitions) {
    auto check_term = [&](const StringTerm& t) {
      if (t.is_const) return;
      if (t.var == d.lhs) {
        throw FormulaError(0, "definition of '" + d.lhs + "' references itself");
      }
      if (defined_later.count(t.var) && !seen.count(t.var)) {
        throw FormulaError(0, "definition of '" + d.lhs + "' uses '" + t.var +
                                  "' before it is defined (not straight-line)");
      }
    };
    if (d.kind == Definition::Kind::kReplaceAll) {
      check_term(d.subject);
      check_term(d.replacement);
      if (d.pattern.kind == Pattern::Kind::kVar) {
        StringTerm p = StringTerm::make_var(d.pattern.var);
        check_term(p);
      }
    } else {
      check_term(d.cat_left);
      check_term(d.cat_right);
    }
    seen.insert(d.lhs);
    order.push_back(d.lhs);
  }
  return order;
}

}  // namespace resat
