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

#include "resat/replace.hpp"

#include <algorithm>
#include <cassert>

namespace resat {

Word Decomposition::gap(size_t i) const {
  size_t from = i == 0 ? 0 : spans[i - 1].start + spans[i - 1].length;
  size_t to = i < spans.size() ? spans[i].start : subject.size();
  return subject.substr(from, to - from);
}

namespace {

// NFA simulation over v[from..], returning the largest len with
// v[from..from+len) accepted; -1 when nothing (not even eps) is accepted.
ptrdiff_t longest_accept_at(const Nfa& a, const Word& v, size_t from) {
  const Graph& g = *a.graph;
  std::vector<bool> in_cur(g.num_states(), false);
  std::vector<State> cur{a.initial};
  in_cur[a.initial] = true;
  ptrdiff_t best = a.is_final(a.initial) ? 0 : -1;
  for (size_t i = from; i < v.size(); ++i) {
    std::vector<State> next;
    std::vector<bool> in_next(g.num_states(), false);
    for (State q : cur) {
      for (const Arc& arc : g.out(q)) {
        if (arc.sym == v[i] && !in_next[arc.to]) {
          in_next[arc.to] = true;
          next.push_back(arc.to);
        }
      }
    }
    if (next.empty()) break;
    cur = std::move(next);
    in_cur = std::move(in_next);
    for (State q : cur) {
      if (a.is_final(q)) {
        best = static_cast<ptrdiff_t>(i + 1 - from);
        break;
      }
    }
  }
  return best;
}

Nfa compile_pattern(const Regex& e) { return compile(e, regex_symbols(e)); }

std::optional<MatchSpan> leftmost_longest_impl(const Nfa& a, bool nullable, const Word& v,
                                               size_t from) {
  if (nullable) {
    // leftmost forces the match to start immediately
    ptrdiff_t len = longest_accept_at(a, v, from);
    assert(len >= 0);
    return MatchSpan{from, static_cast<size_t>(len)};
  }
  for (size_t s = from; s < v.size(); ++s) {
    ptrdiff_t len = longest_accept_at(a, v, s);
    if (len >= 1) return MatchSpan{s, static_cast<size_t>(len)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<MatchSpan> leftmost_longest_match(const Word& v, const Regex& e) {
  return leftmost_longest_impl(compile_pattern(e), epsilon_member(e), v, 0);
}

Decomposition match_decomposition(const Word& v, const Regex& e) {
  if (epsilon_member(e)) {
    throw std::invalid_argument("match_decomposition: pattern matches the empty word");
  }
  Nfa a = compile_pattern(e);
  Decomposition d{v, {}};
  size_t pos = 0;
  while (pos <= v.size()) {
    auto m = leftmost_longest_impl(a, false, v, pos);
    if (!m) break;
    d.spans.push_back(*m);
    pos = m->start + m->length;  // length >= 1, so this always advances
  }
  return d;
}

Word splice(const Decomposition& d, const Word& replacement) {
  Word out;
  for (size_t i = 0; i < d.spans.size(); ++i) {
    out += d.gap(i);
    out += replacement;
  }
  out += d.gap(d.spans.size());
  return out;
}

CompiledPattern CompiledPattern::make(const Regex& e) {
  return CompiledPattern{compile_pattern(e), epsilon_member(e)};
}

Word replace_all(const Word& u, const CompiledPattern& e, const Word& v) {
  if (!e.nullable) {
    Decomposition d{u, {}};
    size_t pos = 0;
    while (auto m = leftmost_longest_impl(e.nfa, false, u, pos)) {
      d.spans.push_back(*m);
      pos = m->start + m->length;
    }
    if (d.spans.empty()) return u;  // no factor matches
    return splice(d, v);
  }
  // eps in L(e): the match is always the longest prefix of the residue; the
  // following letter passes through, a fully matched residue ends the walk.
  Word out;
  size_t pos = 0;
  while (true) {
    ptrdiff_t len = longest_accept_at(e.nfa, u, pos);
    assert(len >= 0);
    size_t t = pos + static_cast<size_t>(len);
    out += v;
    if (t == u.size()) break;
    out.push_back(u[t]);
    pos = t + 1;
  }
  return out;
}

Word replace_all(const Word& u, const Regex& e, const Word& v) {
  return replace_all(u, CompiledPattern::make(e), v);
}

}  // namespace resat
