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

#include "testutil.hpp"

using namespace resat;
using namespace resat::test;

static const Alphabet kBin{U'0', U'1'};
static const Alphabet kAbcd{U'a', U'b', U'c', U'd'};

TEST_CASE("leftmost-longest spans") {
  auto m = leftmost_longest_match(W("1010101"), parse_regex("0*01(0*+1*)", kBin));
  REQUIRE(m.has_value());
  CHECK(m->start == 1);
  CHECK(m->length == 3);

  auto front = leftmost_longest_match(W("baac"), parse_regex("a*", kAbcd));
  REQUIRE(front.has_value());
  CHECK(front->start == 0);
  CHECK(front->length == 0);

  auto aa = leftmost_longest_match(W("aac"), parse_regex("a*", kAbcd));
  REQUIRE(aa.has_value());
  CHECK(aa->start == 0);
  CHECK(aa->length == 2);

  CHECK(!leftmost_longest_match(W("111"), re::lit(U'0')).has_value());
}

TEST_CASE("replace_all") {
  CHECK(replace_all(W("abab"), parse_regex("ab", kAbcd), W("d")) == W("dd"));
  CHECK(replace_all(W("baac"), parse_regex("aa*", kAbcd), W("b")) == W("bbc"));
  CHECK(replace_all(W("aaaa"), re::eps(), W("d")) == W("dadadadad"));
  CHECK(replace_all(W("baac"), parse_regex("a*", kAbcd), W("b")) == W("bbbcb"));
  CHECK(replace_all(W(""), re::eps(), W("d")) == W("d"));
  // nothing to replace
  CHECK(replace_all(W("ccc"), parse_regex("ab", kAbcd), W("d")) == W("ccc"));
  // pure deletion
  CHECK(replace_all(W("abab"), parse_regex("b", kAbcd), W("")) == W("aa"));
}

TEST_CASE("match decompositions") {
  Decomposition d = match_decomposition(W("01010101"), parse_regex("010", kBin));
  REQUIRE(d.spans.size() == 2);
  CHECK(d.spans[0] == MatchSpan{0, 3});
  CHECK(d.spans[1] == MatchSpan{4, 3});
  CHECK(splice(d, W("10")) == W("101101"));

  Decomposition none = match_decomposition(W("111"), parse_regex("00", kBin));
  CHECK(none.spans.empty());
  CHECK(none.gap(0) == W("111"));

  Decomposition app = match_decomposition(W("010101"), parse_regex("0*01(1*+0*)", kBin));
  CHECK(splice(app, W("10")) == W("10110"));

  CHECK_THROWS_AS(match_decomposition(W("0"), parse_regex("0*", kBin)), std::invalid_argument);
}

TEST_CASE("evaluator implementations agree") {
  std::mt19937 rng(101);
  for (int iter = 0; iter < 250; ++iter) {
    Regex e = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 8));
    Word u = random_word(rng, kBin, 10);
    Word v = random_word(rng, kBin, 3);
    CAPTURE(regex_to_string(e));
    CAPTURE(word_to_string(u));
    CAPTURE(word_to_string(v));
    // span agreement first, then the full evaluation
    auto brute = brute_leftmost_longest(u, e);
    auto fast = leftmost_longest_match(u, e);
    CHECK(brute.has_value() == fast.has_value());
    if (brute && fast) {
      CHECK(brute->start == fast->start);
      CHECK(brute->length == fast->length);
    }
    CHECK(replace_all(u, e, v) == recursive_replace_all(u, e, v));
    // determinism
    CHECK(replace_all(u, e, v) == replace_all(u, e, v));
  }
}

TEST_CASE("concat is expressible through replaceall") {
  std::mt19937 rng(131);
  for (int iter = 0; iter < 100; ++iter) {
    Word s1 = random_word(rng, kBin, 6);
    Word s2 = random_word(rng, kBin, 6);
    // two letters apart from the operand alphabet
    Word ab = W("ab");
    Word step1 = replace_all(ab, re::lit(U'a'), s1);
    Word result = replace_all(step1, re::lit(U'b'), s2);
    CHECK(result == s1 + s2);
  }
}

TEST_CASE("single-letter patterns degrade to per-letter substitution") {
  std::mt19937 rng(151);
  for (int iter = 0; iter < 80; ++iter) {
    Word u = random_word(rng, kBin, 8);
    Word v = random_word(rng, kBin, 3);
    Word expect;
    for (Symbol s : u) {
      if (s == U'0') expect += v;
      else expect.push_back(s);
    }
    CHECK(replace_all(u, re::lit(U'0'), v) == expect);
  }
}

TEST_CASE("decomposition splicing equals replace_all") {
  std::mt19937 rng(171);
  for (int iter = 0; iter < 150; ++iter) {
    Regex e = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 8));
    if (epsilon_member(e)) continue;
    Word u = random_word(rng, kBin, 10);
    Word v = random_word(rng, kBin, 3);
    Decomposition d = match_decomposition(u, e);
    CHECK(splice(d, v) == replace_all(u, e, v));
    // spans are iterated leftmost-longest matches
    size_t pos = 0;
    for (const MatchSpan& s : d.spans) {
      auto m = brute_leftmost_longest(u.substr(pos), e);
      REQUIRE(m.has_value());
      CHECK(pos + m->start == s.start);
      CHECK(m->length == s.length);
      pos = s.start + s.length;
    }
  }
}
