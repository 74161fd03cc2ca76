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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resat/parsing.hpp"
#include "testutil.hpp"

using namespace resat;
using namespace resat::test;

static const Alphabet kBin{U'0', U'1'};
static const Alphabet kAb{U'a', U'b'};

namespace {

WindowProfile prof(const char* s) {
  WindowProfile w{0, 0};
  for (const char* p = s; *p; ++p) {
    if (*p == 'T') w.bits |= 1u << w.len;
    ++w.len;
  }
  return w;
}

// the worked pattern automaton for 0*01(1*+0*):
// q0 -0-> q1, q1 loops on 0, q1 -1-> {q2,q3}, q2 loops on 1, q3 loops on 0
Nfa worked_a0() {
  GraphBuilder b(4);
  b.add_arc(0, U'0', 1);
  b.add_arc(1, U'0', 1);
  b.add_arc(1, U'1', 2);
  b.add_arc(1, U'1', 3);
  b.add_arc(2, U'1', 2);
  b.add_arc(3, U'0', 3);
  return Nfa{b.build(), 0, {2, 3}};
}

}  // namespace

TEST_CASE("window profiles") {
  auto ps = window_profiles(W("010"), kBin);
  std::vector<WindowProfile> expect{prof("__"), prof("T_"), prof("_T")};
  std::sort(expect.begin(), expect.end());
  CHECK(ps == expect);
  CHECK(std::find(ps.begin(), ps.end(), prof("TT")) == ps.end());

  auto aa = window_profiles(W("aa"), kAb);
  CHECK(aa == std::vector<WindowProfile>{prof("_"), prof("T")});

  std::mt19937 rng(301);
  for (int iter = 0; iter < 100; ++iter) {
    Word u;
    size_t len = 2 + rng() % 7;
    for (size_t i = 0; i < len; ++i) u.push_back(kBin.symbols()[rng() % 2]);
    auto got = window_profiles(u, kBin);
    CHECK(got.size() <= u.size());
    // cross-check against direct enumeration over strings up to length 8
    std::vector<WindowProfile> seen;
    each_word(kBin, 8, [&](const Word& v) {
      WindowProfile w{0, static_cast<uint32_t>(u.size() - 1)};
      for (size_t i = 0; i < v.size(); ++i) {
        w = profile_step(w, v[i], u);
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) seen.push_back(w);
      }
    });
    std::sort(seen.begin(), seen.end());
    CHECK(got == seen);
  }
}

TEST_CASE("parsing automaton for 010") {
  ConstParser p = build_parsing_automaton_const(W("010"), kBin);
  const Graph& g = *p.nfa.graph;

  // no 0-transition leaves (search, _T)
  for (State q = 0; q < g.num_states(); ++q) {
    if (p.kind[q] == ConstParser::Kind::kSearch && p.profile[q] == prof("_T")) {
      for (const Arc& a : g.out(q)) CHECK(a.sym != U'0');
    }
  }

  // unique accepting run on 01010101 returns to q0 exactly at the two
  // occurrence ends
  Word v = W("01010101");
  CHECK(count_accepting_runs(p.nfa, v) == 1);
  auto run = unique_accepting_run(p.nfa, v);
  REQUIRE(run.has_value());
  std::vector<size_t> q0_at;
  for (size_t i = 1; i < run->size(); ++i) {
    if ((*run)[i] == p.q0()) q0_at.push_back(i);
  }
  CHECK(q0_at == std::vector<size_t>{3, 7});
  auto spans = spans_from_const_run(p, *run);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == MatchSpan{0, 3});
  CHECK(spans[1] == MatchSpan{4, 3});

  // words without an occurrence stay in search states
  auto run2 = unique_accepting_run(p.nfa, W("0011"));
  REQUIRE(run2.has_value());
  for (size_t i = 1; i < run2->size(); ++i) {
    CHECK(p.kind[(*run2)[i]] == ConstParser::Kind::kSearch);
  }
}

TEST_CASE("const parser equals the decomposition oracle") {
  std::mt19937 rng(311);
  for (int iter = 0; iter < 150; ++iter) {
    Word u;
    size_t len = 2 + rng() % 3;
    for (size_t i = 0; i < len; ++i) u.push_back(kBin.symbols()[rng() % 2]);
    ConstParser p = build_parsing_automaton_const(u, kBin);
    Word v = random_word(rng, kBin, 8);
    CAPTURE(word_to_string(u));
    CAPTURE(word_to_string(v));
    REQUIRE(count_accepting_runs(p.nfa, v) == 1);
    auto run = unique_accepting_run(p.nfa, v);
    auto spans = spans_from_const_run(p, *run);
    Decomposition d = match_decomposition(v, re::word(u));
    CHECK(spans == d.spans);
  }
}

TEST_CASE("red") {
  CHECK(red(std::vector<Bits>{0b00, 0b10}) == std::vector<Bits>{0b10});
  // {q1,q2}{q1,q3}{q2,q4} -> {q1,q2}{q3}{q4}
  CHECK(red(std::vector<Bits>{0b0110, 0b1010, 0b10100}) ==
        std::vector<Bits>{0b0110, 0b1000, 0b10000});
  std::vector<Bits> disjoint{0b01, 0b10, 0b100};
  CHECK(red(disjoint) == disjoint);

  std::mt19937 rng(331);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Bits> sets;
    size_t n = rng() % 5;
    Bits all = 0;
    for (size_t i = 0; i < n; ++i) {
      Bits s = rng() % 256;
      sets.push_back(s);
      all |= s;
    }
    auto r = red(sets);
    Bits got = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      CHECK(r[i] != 0);
      for (size_t j = i + 1; j < r.size(); ++j) CHECK((r[i] & r[j]) == 0);
      got |= r[i];
    }
    CHECK(got == all);
    CHECK(red(r) == r);
  }
}

TEST_CASE("leftmost-longest automaton for the worked pattern") {
  RegexParser p = build_parsing_automaton_regex(worked_a0(), kBin);

  // after one 0 the automaton sits in ({q1}{i}, searchleft, {}); reading
  // another 0 must stay in searchleft (the fresh thread is subsumed), and no
  // 1-transition leaves that state (1 would complete a match)
  auto run0 = unique_accepting_run(p.nfa, W("00"));
  REQUIRE(run0.has_value());
  State mid = (*run0)[1];
  CHECK(p.info[mid].mode == RegexParser::Mode::kSearchLeft);
  REQUIRE(p.info[mid].rho.size() == 1);
  for (const Arc& a : p.nfa.graph->out(mid)) {
    CHECK(a.sym == U'0');
    CHECK(p.info[a.to].mode == RegexParser::Mode::kSearchLeft);
  }

  // run decompositions match the evaluator
  Regex e0 = parse_regex("0*01(1*+0*)", kBin);
  std::mt19937 rng(401);
  for (int iter = 0; iter < 200; ++iter) {
    Word v = random_word(rng, kBin, 8);
    CAPTURE(word_to_string(v));
    REQUIRE(count_accepting_runs(p.nfa, v) == 1);
    auto run = unique_accepting_run(p.nfa, v);
    auto spans = spans_from_regex_run(p, *run, v);
    CHECK(spans == match_decomposition(v, e0).spans);
  }
}

TEST_CASE("regex parser equals the decomposition oracle") {
  std::mt19937 rng(411);
  int done = 0;
  while (done < 120) {
    Regex e = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 6));
    if (epsilon_member(e)) continue;
    Nfa a0 = compile(e, kBin);
    if (a0.finals.empty()) continue;  // empty language: nothing to parse
    RegexParser p = build_parsing_automaton_regex(a0, kBin);
    for (int k = 0; k < 5; ++k) {
      Word v = random_word(rng, kBin, 8);
      CAPTURE(regex_to_string(e));
      CAPTURE(word_to_string(v));
      REQUIRE(count_accepting_runs(p.nfa, v) == 1);
      auto run = unique_accepting_run(p.nfa, v);
      auto spans = spans_from_regex_run(p, *run, v);
      CHECK(spans == match_decomposition(v, e).spans);
    }
    ++done;
  }
}

TEST_CASE("searchlong and threaded states respect the forbidden-set shape") {
  RegexParser p = build_parsing_automaton_regex(worked_a0(), kBin);
  const Bits f0 = p.pattern.finals;
  for (size_t q = 0; q < p.info.size(); ++q) {
    const auto& i = p.info[q];
    if (i.mode == RegexParser::Mode::kSearchLong) {
      CHECK((i.forbidden & f0) == 0);
      CHECK((i.thread & ~i.forbidden) != 0);
    } else if (!i.rho.empty()) {
      CHECK((i.forbidden & f0) == 0);
      Bits seen = 0;
      for (Bits s : i.rho) {
        CHECK(s != 0);
        CHECK((s & seen) == 0);
        CHECK((s & (Bits{1} << p.pattern.nfa.initial)) == 0);
        seen |= s;
      }
    }
    // the searchleft reset state right after a match may, by design, carry
    // final states in its forbidden set; every transition out guards on
    // step(forbidden) instead
  }
}

TEST_CASE("nullable parser") {
  // the empty-word pattern: one boundary state with self loops
  Nfa eps_a0 = compile(re::eps(), kBin);
  NullableParser pe = build_parsing_automaton_nullable(eps_a0, kBin);
  CHECK(pe.nfa.graph->num_states() == 1);

  std::mt19937 rng(421);
  int done = 0;
  while (done < 80) {
    Regex e = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 6));
    if (!epsilon_member(e)) continue;
    Nfa a0 = compile(e, kBin);
    NullableParser p = build_parsing_automaton_nullable(a0, kBin);
    CompiledPattern cp = CompiledPattern::make(e);
    for (int k = 0; k < 5; ++k) {
      Word v = random_word(rng, kBin, 8);
      CAPTURE(regex_to_string(e));
      CAPTURE(word_to_string(v));
      REQUIRE(count_accepting_runs(p.nfa, v) == 1);
      auto run = unique_accepting_run(p.nfa, v);
      auto spans = spans_from_nullable_run(p, *run, v);
      // replay the parse as a replacement and compare with the evaluator
      Word marker = W("#");
      Word rebuilt;
      size_t pos = 0;
      for (const MatchSpan& s : spans) {
        rebuilt += v.substr(pos, s.start - pos);
        rebuilt += marker;
        pos = s.start + s.length;
      }
      rebuilt += v.substr(pos);
      CHECK(rebuilt == replace_all(v, cp, marker));
    }
    ++done;
  }
}
