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

#include "resat/regex.hpp"

namespace resat {

namespace re {

static Regex make(RegexKind k, Symbol s, Regex l, Regex r) {
  auto n = std::make_shared<RegexNode>();
  n->kind = k;
  n->sym = s;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

Regex empty() { return make(RegexKind::kEmpty, 0, nullptr, nullptr); }
Regex eps() { return make(RegexKind::kEpsilon, 0, nullptr, nullptr); }
Regex lit(Symbol s) { return make(RegexKind::kLiteral, s, nullptr, nullptr); }
Regex alt(Regex a, Regex b) { return make(RegexKind::kUnion, 0, std::move(a), std::move(b)); }
Regex cat(Regex a, Regex b) { return make(RegexKind::kConcat, 0, std::move(a), std::move(b)); }
Regex star(Regex a) { return make(RegexKind::kStar, 0, std::move(a), nullptr); }

Regex word(const Word& w) {
  if (w.empty()) return eps();
  Regex r = lit(w[0]);
  for (size_t i = 1; i < w.size(); ++i) r = cat(std::move(r), lit(w[i]));
  return r;
}

Regex any_star(const Alphabet& sigma) {
  if (sigma.empty()) return eps();
  Regex u;
  for (Symbol s : sigma) u = u ? alt(std::move(u), lit(s)) : lit(s);
  return star(std::move(u));
}

}  // namespace re

bool epsilon_member(const Regex& r) {
  switch (r->kind) {
    case RegexKind::kEmpty:
    case RegexKind::kLiteral:
      return false;
    case RegexKind::kEpsilon:
    case RegexKind::kStar:
      return true;
    case RegexKind::kUnion:
      return epsilon_member(r->left) || epsilon_member(r->right);
    case RegexKind::kConcat:
      return epsilon_member(r->left) && epsilon_member(r->right);
  }
  return false;
}

std::optional<Word> literal_word(const Regex& r) {
  switch (r->kind) {
    case RegexKind::kEpsilon:
      return Word{};
    case RegexKind::kLiteral:
      return Word(1, r->sym);
    case RegexKind::kConcat: {
      auto l = literal_word(r->left);
      auto rt = literal_word(r->right);
      if (!l || !rt) return std::nullopt;
      return *l + *rt;
    }
    default:
      return std::nullopt;
  }
}

static void collect_symbols(const Regex& r, Alphabet& out) {
  switch (r->kind) {
    case RegexKind::kLiteral:
      out.add(r->sym);
      break;
    case RegexKind::kUnion:
    case RegexKind::kConcat:
      collect_symbols(r->left, out);
      collect_symbols(r->right, out);
      break;
    case RegexKind::kStar:
      collect_symbols(r->left, out);
      break;
    default:
      break;
  }
}

Alphabet regex_symbols(const Regex& r) {
  Alphabet a;
  collect_symbols(r, a);
  return a;
}

static void print(const Regex& r, std::string& out, int parent_prec) {
  // precedence: union 0 < concat 1 < star 2
  switch (r->kind) {
    case RegexKind::kEmpty:
      out += "[empty]";
      break;
    case RegexKind::kEpsilon:
      out += "()";
      break;
    case RegexKind::kLiteral:
      out += word_to_string(Word(1, r->sym));
      break;
    case RegexKind::kUnion: {
      bool paren = parent_prec > 0;
      if (paren) out += '(';
      print(r->left, out, 0);
      out += '+';
      print(r->right, out, 0);
      if (paren) out += ')';
      break;
    }
    case RegexKind::kConcat: {
      bool paren = parent_prec > 1;
      if (paren) out += '(';
      print(r->left, out, 1);
      print(r->right, out, 1);
      if (paren) out += ')';
      break;
    }
    case RegexKind::kStar:
      print(r->left, out, 2);
      out += '*';
      break;
  }
}

std::string regex_to_string(const Regex& r) {
  std::string out;
  print(r, out, 0);
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Alphabet& alphabet) : text_(text), sigma_(alphabet) {}

  Regex run() {
    skip_ws();
    if (at_end()) throw RegexError(0, "empty regex");
    Regex r = parse_union();
    skip_ws();
    if (!at_end()) throw RegexError(pos_, "unexpected character");
    return r;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  bool at_atom_start() {
    skip_ws();
    if (at_end()) return false;
    char c = peek();
    return c != '+' && c != '*' && c != '?' && c != ')';
  }

  Regex parse_union() {
    Regex r = parse_concat();
    skip_ws();
    while (!at_end() && peek() == '+') {
      ++pos_;
      r = re::alt(std::move(r), parse_concat());
      skip_ws();
    }
    return r;
  }

  Regex parse_concat() {
    if (!at_atom_start()) throw RegexError(pos_, "expected an atom");
    Regex r = parse_postfix();
    while (at_atom_start()) r = re::cat(std::move(r), parse_postfix());
    return r;
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    skip_ws();
    while (!at_end() && (peek() == '*' || peek() == '?')) {
      r = peek() == '*' ? re::star(std::move(r)) : re::alt(std::move(r), re::eps());
      ++pos_;
      skip_ws();
    }
    return r;
  }

  Regex parse_atom() {
    skip_ws();
    size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (!at_end() && peek() == ')') {  // `()` is the empty word
        ++pos_;
        return re::eps();
      }
      Regex r = parse_union();
      skip_ws();
      if (at_end() || peek() != ')') throw RegexError(pos_, "missing ')'");
      ++pos_;
      return r;
    }
    if (c == '"') {
      ++pos_;
      Word w;
      while (!at_end() && peek() != '"') {
        char d = peek();
        if (d == '\\') {
          ++pos_;
          if (at_end()) throw RegexError(pos_, "dangling escape");
          d = peek();
        }
        w.push_back(check_symbol(static_cast<Symbol>(static_cast<unsigned char>(d)), pos_));
        ++pos_;
      }
      if (at_end()) throw RegexError(start, "unterminated string literal");
      ++pos_;
      return re::word(w);
    }
    ++pos_;
    return re::lit(check_symbol(static_cast<Symbol>(static_cast<unsigned char>(c)), start));
  }

  Symbol check_symbol(Symbol s, size_t at) {
    if (!sigma_.contains(s)) {
      throw RegexError(at, "symbol '" + word_to_string(Word(1, s)) + "' not in alphabet");
    }
    return s;
  }

  const std::string& text_;
  const Alphabet& sigma_;
  size_t pos_ = 0;
};

}  // namespace

Regex parse_regex(const std::string& text, const Alphabet& alphabet) {
  return Parser(text, alphabet).run();
}

}  // namespace resat
