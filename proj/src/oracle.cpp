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

#include "resat/oracle.hpp"

#include <algorithm>
#include <map>

namespace resat {

namespace {

// match(r, w[i..j)) with memoization on (node, i, j)
struct Matcher {
  const Word& w;
  std::map<std::tuple<const RegexNode*, size_t, size_t>, bool> memo;
  // guards Star's eps-split recursion
  std::map<std::tuple<const RegexNode*, size_t, size_t>, bool> in_progress;

  bool match(const Regex& r, size_t i, size_t j) {
    auto key = std::make_tuple(r.get(), i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool res = false;
    switch (r->kind) {
      case RegexKind::kEmpty:
        res = false;
        break;
      case RegexKind::kEpsilon:
        res = i == j;
        break;
      case RegexKind::kLiteral:
        res = j == i + 1 && w[i] == r->sym;
        break;
      case RegexKind::kUnion:
        res = match(r->left, i, j) || match(r->right, i, j);
        break;
      case RegexKind::kConcat:
        for (size_t k = i; k <= j && !res; ++k) {
          res = match(r->left, i, k) && match(r->right, k, j);
        }
        break;
      case RegexKind::kStar:
        if (i == j) {
          res = true;
        } else {
          // first iteration consumes a nonempty prefix
          for (size_t k = i + 1; k <= j && !res; ++k) {
            res = match(r->left, i, k) && match(r, k, j);
          }
        }
        break;
    }
    memo[key] = res;
    return res;
  }
};

}  // namespace

bool naive_match(const Regex& r, const Word& w) {
  Matcher m{w, {}, {}};
  return m.match(r, 0, w.size());
}

namespace {

struct Evaluator {
  const Formula& f;
  std::vector<CompiledPattern> patterns;  // per replaceall definition

  explicit Evaluator(const Formula& formula) : f(formula) {
    patterns.reserve(f.definitions.size());
    for (const Definition& d : f.definitions) {
      if (d.kind == Definition::Kind::kReplaceAll && d.pattern.kind != Pattern::Kind::kVar) {
        Regex re = d.pattern.kind == Pattern::Kind::kRegex ? d.pattern.re
                                                           : re::word(d.pattern.text);
        patterns.push_back(CompiledPattern::make(re));
      } else {
        patterns.push_back(CompiledPattern::make(re::empty()));
      }
    }
  }

  // evaluates defined variables bottom-up; false when a variable-pattern
  // definition blocks evaluation
  bool extend(std::map<std::string, Word>& values) const {
    for (size_t i = 0; i < f.definitions.size(); ++i) {
      const Definition& d = f.definitions[i];
      auto term_value = [&](const StringTerm& t) -> const Word& {
        static const Word empty;
        if (t.is_const) return t.value;
        auto it = values.find(t.var);
        return it == values.end() ? empty : it->second;
      };
      if (d.kind == Definition::Kind::kConcat) {
        values[d.lhs] = term_value(d.cat_left) + term_value(d.cat_right);
        continue;
      }
      if (d.pattern.kind == Pattern::Kind::kVar) return false;
      values[d.lhs] = replace_all(term_value(d.subject), patterns[i], term_value(d.replacement));
    }
    return true;
  }

  bool check_memberships(const std::map<std::string, Word>& values) const {
    for (const Membership& m : f.memberships) {
      auto it = values.find(m.var);
      const Word& w = it == values.end() ? Word{} : it->second;
      if (!naive_match(m.re, w)) return false;
    }
    return true;
  }
};

// words of exactly length n over sigma, lexicographic by declaration order
bool next_word(Word& w, const Alphabet& sigma) {
  const auto& syms = sigma.symbols();
  for (size_t i = w.size(); i-- > 0;) {
    size_t pos = std::find(syms.begin(), syms.end(), w[i]) - syms.begin();
    if (pos + 1 < syms.size()) {
      w[i] = syms[pos + 1];
      for (size_t j = i + 1; j < w.size(); ++j) w[j] = syms[0];
      return true;
    }
  }
  return false;
}

// lexicographic odometer over [0,cap]^n
bool next_length_vector(std::vector<uint32_t>& lens, uint32_t cap) {
  for (size_t i = lens.size(); i-- > 0;) {
    if (lens[i] < cap) {
      ++lens[i];
      for (size_t j = i + 1; j < lens.size(); ++j) lens[j] = 0;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult brute_force_sat(const Formula& f, uint32_t max_len) {
  std::vector<std::string> sources;
  for (const std::string& v : f.variables) {
    if (f.is_source(v)) sources.push_back(v);
  }
  Evaluator eval(f);
  const Alphabet& sigma = f.alphabet;
  uint32_t n = static_cast<uint32_t>(sources.size());

  auto try_assignment = [&](const std::vector<Word>& words) -> std::optional<Model> {
    std::map<std::string, Word> values;
    for (uint32_t i = 0; i < n; ++i) values[sources[i]] = words[i];
    if (!eval.extend(values)) return std::nullopt;
    if (!eval.check_memberships(values)) return std::nullopt;
    Model m;
    for (const std::string& v : f.variables) m.emplace_back(v, values[v]);
    return m;
  };

  if (n == 0) {
    if (auto m = try_assignment({})) return {true, *m, 0};
    return {false, {}, max_len};
  }
  if (sigma.empty()) {
    std::vector<Word> words(n);
    if (auto m = try_assignment(words)) return {true, *m, 0};
    return {false, {}, max_len};
  }

  // total length ascending, then length vectors lexicographically, then word
  // tuples lexicographically: a canonical, streaming enumeration
  for (uint32_t total = 0; total <= n * max_len; ++total) {
    std::vector<uint32_t> lens(n, 0);
    do {
      uint32_t sum = 0;
      for (uint32_t l : lens) sum += l;
      if (sum != total) continue;
      std::vector<Word> words(n);
      for (uint32_t i = 0; i < n; ++i) words[i].assign(lens[i], sigma.symbols()[0]);
      while (true) {
        if (auto m = try_assignment(words)) return {true, *m, 0};
        // advance the tuple: last word first
        uint32_t k = n;
        while (k > 0) {
          if (next_word(words[k - 1], sigma)) break;
          words[k - 1].assign(lens[k - 1], sigma.symbols()[0]);
          --k;
        }
        if (k == 0) break;
      }
    } while (next_length_vector(lens, max_len));
  }
  return {false, {}, max_len};
}

}  // namespace resat
