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

TEST_CASE("regex parsing") {
  Regex r = parse_regex("(01)*", kBin);
  REQUIRE(r->kind == RegexKind::kStar);
  REQUIRE(r->left->kind == RegexKind::kConcat);
  CHECK(r->left->left->sym == U'0');
  CHECK(r->left->right->sym == U'1');

  CHECK_THROWS_AS(parse_regex("", kBin), RegexError);
  CHECK_THROWS_AS(parse_regex("2", kBin), RegexError);
  CHECK_THROWS_AS(parse_regex("(01", kBin), RegexError);
  CHECK_THROWS_AS(parse_regex("01)", kBin), RegexError);

  Regex e = parse_regex("0*01(0*+1*)", kBin);
  CHECK(naive_match(e, W("01")));
  CHECK(naive_match(e, W("001")));
  CHECK(naive_match(e, W("010")));
  CHECK(!naive_match(e, W("0101")));

  // `()` is the empty word, `e?` is (e + ())
  CHECK(naive_match(parse_regex("()", kBin), W("")));
  CHECK(naive_match(parse_regex("01?", kBin), W("0")));
  CHECK(naive_match(parse_regex("01?", kBin), W("01")));
  CHECK(naive_match(parse_regex("\"01\"*", kBin), W("0101")));
  CHECK(naive_match(parse_regex("\"\"", kBin), W("")));
}

TEST_CASE("nullability and literal words") {
  CHECK(epsilon_member(parse_regex("(01)*", kBin)));
  CHECK(!epsilon_member(parse_regex("0*01(0*+1*)", kBin)));
  CHECK(epsilon_member(re::eps()));
  CHECK(!epsilon_member(re::lit(U'0')));

  CHECK(*literal_word(parse_regex("010", kBin)) == W("010"));
  CHECK(*literal_word(re::eps()) == W(""));
  CHECK(!literal_word(parse_regex("0*", kBin)).has_value());
}

TEST_CASE("compile basics") {
  Nfa empty = compile(re::empty(), kBin);
  each_word(kBin, 3, [&](const Word& w) { CHECK(!accepts(empty, w)); });

  Nfa eps = compile(re::eps(), kBin);
  each_word(kBin, 3, [&](const Word& w) { CHECK(accepts(eps, w) == w.empty()); });

  Nfa a = compile(parse_regex("(01)*", kBin), kBin);
  CHECK(accepts(a, W("0101")));
  CHECK(!accepts(a, W("010")));
  CHECK(!a.graph->has_epsilon());
}

TEST_CASE("compile agrees with the naive matcher") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 150; ++iter) {
    Regex r = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 10));
    Nfa a = compile(r, kBin);
    each_word(kBin, 6, [&](const Word& w) {
      CAPTURE(regex_to_string(r));
      CAPTURE(word_to_string(w));
      CHECK(accepts(a, w) == naive_match(r, w));
    });
  }
}

TEST_CASE("product") {
  Nfa a = compile(parse_regex("(01)*", kBin), kBin);
  Nfa univ = compile(re::any_star(kBin), kBin);
  Nfa p = product(a, univ);
  each_word(kBin, 6, [&](const Word& w) { CHECK(accepts(p, w) == accepts(a, w)); });

  Nfa b = compile(parse_regex("(10)*", kBin), kBin);
  Nfa ab = product(a, b);
  each_word(kBin, 6, [&](const Word& w) { CHECK(accepts(ab, w) == w.empty()); });

  Nfa aa = product(a, a);
  each_word(kBin, 6, [&](const Word& w) { CHECK(accepts(aa, w) == accepts(a, w)); });

  std::mt19937 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    Nfa x = random_nfa(rng, kBin, 2 + rng() % 3, 0.3);
    Nfa y = random_nfa(rng, kBin, 2 + rng() % 3, 0.3);
    Nfa xy = product(x, y);
    each_word(kBin, 6, [&](const Word& w) {
      CHECK(accepts(xy, w) == (accepts(x, w) && accepts(y, w)));
    });
  }
}

TEST_CASE("with_endpoints") {
  // the 4-state automaton for (0+1)*(00(0+1)* + 11(0+1)*) used throughout:
  // q0 loops, one branch per doubled letter, q2 loops
  GraphBuilder b(4);
  b.add_arc(0, U'0', 0);
  b.add_arc(0, U'1', 0);
  b.add_arc(0, U'1', 1);   // 11 branch
  b.add_arc(1, U'1', 2);
  b.add_arc(0, U'0', 3);   // 00 branch
  b.add_arc(3, U'0', 2);
  b.add_arc(2, U'0', 2);
  b.add_arc(2, U'1', 2);
  GraphPtr g = b.build();

  Nfa self = with_endpoints(g, 1, 1);
  CHECK(accepts(self, W("")));

  Regex expect = parse_regex("1(0+1)*", kBin);
  Nfa q1q2 = with_endpoints(g, 1, 2);
  each_word(kBin, 6, [&](const Word& w) { CHECK(accepts(q1q2, w) == naive_match(expect, w)); });

  // no path from q2 back to q1
  Nfa none = with_endpoints(g, 2, 1);
  each_word(kBin, 6, [&](const Word& w) { CHECK(!accepts(none, w)); });

  CHECK_THROWS_AS(with_endpoints(g, 7, 0), std::out_of_range);
}

TEST_CASE("shortest_witness") {
  Nfa a = compile(parse_regex("(01)*", kBin), kBin);
  Nfa b = compile(parse_regex("(0+1)*101*", kBin), kBin);
  std::vector<Nfa> list{a, b};
  auto w = shortest_witness(std::span<const Nfa>(list), kBin);
  REQUIRE(w.has_value());
  CHECK(w->word == W("0101"));  // minimal member, lexicographically smallest

  std::vector<Nfa> eps_pair{a, compile(parse_regex("(10)*", kBin), kBin)};
  auto we = shortest_witness(std::span<const Nfa>(eps_pair), kBin);
  REQUIRE(we.has_value());
  CHECK(we->word.empty());

  std::vector<Nfa> disjoint{compile(parse_regex("0*", kBin), kBin),
                            compile(parse_regex("11*", kBin), kBin)};
  CHECK(!shortest_witness(std::span<const Nfa>(disjoint), kBin).has_value());

  // minimality + run validity against enumeration
  std::mt19937 rng(23);
  for (int iter = 0; iter < 40; ++iter) {
    Nfa x = random_nfa(rng, kBin, 2 + rng() % 4, 0.25);
    Nfa y = random_nfa(rng, kBin, 2 + rng() % 4, 0.25);
    std::vector<Nfa> pair{x, y};
    auto res = shortest_witness(std::span<const Nfa>(pair), kBin);
    std::optional<Word> smallest;
    each_word(kBin, 6, [&](const Word& v) {
      if (!smallest && accepts(x, v) && accepts(y, v)) smallest = v;
    });
    if (smallest) {
      REQUIRE(res.has_value());
      CHECK(res->word == *smallest);
      REQUIRE(res->run.size() == res->word.size() + 1);
      for (size_t i = 0; i < pair.size(); ++i) {
        Witness wit;
        wit.word = res->word;
        for (const auto& tuple : res->run) wit.run.push_back(tuple[i]);
        CHECK(replays(pair[i], wit));
      }
    } else if (res) {
      CHECK(res->word.size() > 6);
    }
  }

  // empty list denotes the universal language
  auto u = shortest_witness(std::span<const Nfa>{}, kBin);
  REQUIRE(u.has_value());
  CHECK(u->word.empty());
}

TEST_CASE("remove_epsilon") {
  // an eps-free automaton passes through untouched
  Nfa a = compile(parse_regex("(01)*", kBin), kBin);
  Nfa a2 = remove_epsilon(a);
  each_word(kBin, 6, [&](const Word& w) { CHECK(accepts(a2, w) == accepts(a, w)); });

  // one eps edge from the initial state to a final state accepts eps
  GraphBuilder b(2);
  b.add_arc(0, kEpsilonSym, 1);
  b.add_arc(1, U'0', 1);
  Nfa e{b.build(), 0, {1}};
  Nfa ee = remove_epsilon(e);
  CHECK(!ee.graph->has_epsilon());
  CHECK(accepts(ee, W("")));
  CHECK(accepts(ee, W("0")));
  CHECK(!accepts(ee, W("1")));

  std::mt19937 rng(31);
  for (int iter = 0; iter < 60; ++iter) {
    Nfa x = random_nfa(rng, kBin, 6, 0.15, /*with_eps=*/true);
    Nfa y = remove_epsilon(x);
    CHECK(!y.graph->has_epsilon());
    CHECK(y.graph->num_states() == x.graph->num_states());
    each_word(kBin, 8, [&](const Word& w) {
      CHECK(accepts(y, w) == closure_accepts(x, w));
    });
  }
}

TEST_CASE("dot export") {
  Nfa a = compile(parse_regex("(01)*", kBin), kBin);
  std::string d = to_dot(a, "t");
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("doublecircle") != std::string::npos);
  CHECK(to_dot(*a.graph, "g").find("->") != std::string::npos);
}
