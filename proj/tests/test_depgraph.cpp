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

TEST_CASE("dependency graph of the running example") {
  Formula f = parse_formula(
      "alphabet \"01\";\n"
      "x2 := replaceall(x1, \"0\", y1);\n"
      "x3 := replaceall(x2, \"1\", y2);\n");
  DepGraph g = build_dependency_graph(f);
  REQUIRE(g.edges.size() == 4);
  auto has_edge = [&](const char* from, const char* to, bool is_l) {
    for (const auto& e : g.edges) {
      if (g.vertices[e.from] == from && g.vertices[e.to] == to && e.is_l == is_l) return true;
    }
    return false;
  };
  CHECK(has_edge("x2", "x1", true));
  CHECK(has_edge("x2", "y1", false));
  CHECK(has_edge("x3", "x2", true));
  CHECK(has_edge("x3", "y2", false));
  CHECK(depth(g) == 2);
  CHECK(l_length(g) == 2);
  CHECK(diamond_index(g) == 0);
}

TEST_CASE("edgeless graph") {
  Formula f = parse_formula("alphabet \"01\";\nassert x in /0*/;\n");
  DepGraph g = build_dependency_graph(f);
  CHECK(g.edges.empty());
  CHECK(depth(g) == 0);
  CHECK(diamond_index(g) == 0);
  CHECK(l_length(g) == 0);
}

TEST_CASE("nested instance graph shape") {
  Formula f = parse_formula(
      "alphabet \"01\";\n"
      "y := replaceall(y', \"1\", z');\n"
      "x := replaceall(y, \"0\", z);\n");
  DepGraph g = build_dependency_graph(f);
  CHECK(g.vertices.size() == 5);
  CHECK(g.edges.size() == 4);
  std::string dot = to_dot(g);
  CHECK(dot.find("y'") != std::string::npos);
}

TEST_CASE("shared argument gives parallel edges and one diamond") {
  Formula f = parse_formula("alphabet \"01\";\nx := replaceall(y, \"0\", y);\n");
  DepGraph g = build_dependency_graph(f);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].to == g.edges[1].to);
  CHECK(g.edges[0].is_l != g.edges[1].is_l);
  CHECK(diamond_index(g) == 1);
  CHECK(l_length(g) == 1);
}

TEST_CASE("three chained diamonds") {
  Formula ordered = parse_formula(
      "alphabet \"01\";\n"
      "x3 := replaceall(y1, \"0\", y1);\n"
      "x2 := replaceall(x3, \"0\", x3);\n"
      "x1 := replaceall(x2, \"0\", x2);\n");
  DepGraph g = build_dependency_graph(ordered);
  CHECK(diamond_index(g) == 3);
  CHECK(path_count(g, g.vertex("x1"), g.vertex("y1")) == 8);
  CHECK(l_length(g) == 3);
  CHECK(depth(g) == 3);
}

TEST_CASE("statistics agree with brute force on random graphs") {
  std::mt19937 rng(211);
  for (int iter = 0; iter < 40; ++iter) {
    // random straight-line shape: vertex i points at two random later vertices
    uint32_t n = 3 + rng() % 5;
    std::string text = "alphabet \"01\";\n";
    std::vector<std::string> names;
    for (uint32_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (uint32_t i = 0; i + 1 < n; ++i) {
      if (rng() % 3 == 0) continue;  // leave some vertices undefined
      uint32_t a = i + 1 + rng() % (n - i - 1);
      uint32_t b = i + 1 + rng() % (n - i - 1);
      text += names[i] + " := replaceall(" + names[a] + ", \"0\", " + names[b] + ");\n";
    }
    Formula f = parse_formula(text);
    // definitions reference later names; reverse into straight-line file order
    std::string reversed = "alphabet \"01\";\n";
    for (auto it = f.definitions.rbegin(); it != f.definitions.rend(); ++it) {
      reversed += it->lhs + " := replaceall(" + it->subject.var + ", \"0\", " +
                  it->replacement.var + ");\n";
    }
    Formula ordered = parse_formula(reversed);
    DepGraph g = build_dependency_graph(ordered);
    CAPTURE(reversed);
    CHECK(diamond_index(g) == brute_diamond_index(g));
    CHECK(l_length(g) == brute_l_length(g));
    CHECK(diamond_index(g) <= l_length(g));
  }
}

TEST_CASE("classification") {
  Formula single = parse_formula(
      "alphabet \"01\";\n"
      "x2 := replaceall(x1, \"0\", y1);\n"
      "x3 := replaceall(x2, \"1\", y2);\n"
      "assert x1 in /(0+1)*/;\nassert y1 in /1*/;\nassert y2 in /0*/;\n");
  FragmentClass c = classify(single);
  CHECK(c.kind == FragmentKind::kSingleLetter);
  CHECK(c.diamond == 0);
  CHECK(c.l_len == 2);
  CHECK(c.graph_depth == 2);
  CHECK(c.advisory.find("polynomial-space") != std::string::npos);

  FragmentClass cs = classify(parse_formula(
      "alphabet \"01\";\nx := replaceall(y, \"010\", z);\n"));
  CHECK(cs.kind == FragmentKind::kConstantString);

  FragmentClass re_frag = classify(parse_formula(
      "alphabet \"01\";\nx := replaceall(y, /0*1/, z);\n"));
  CHECK(re_frag.kind == FragmentKind::kRegexPattern);

  // a literal regex is still a single letter / constant word
  CHECK(classify(parse_formula("alphabet \"01\";\nx := replaceall(y, /0/, z);\n")).kind ==
        FragmentKind::kSingleLetter);
  CHECK(classify(parse_formula("alphabet \"01\";\nx := replaceall(y, /01/, z);\n")).kind ==
        FragmentKind::kConstantString);

  CHECK(classify(parse_formula("alphabet \"01\";\nx := replaceall(y, p, z);\n")).kind ==
        FragmentKind::kVarPattern);
  CHECK(classify(parse_formula(
            "alphabet \"01\";\nx := replaceall(y, \"0\", z);\nassert len(x) = len(y);\n"))
            .kind == FragmentKind::kExtendedUndecidable);
  // concat-only formulas desugar to single letters
  CHECK(classify(parse_formula("alphabet \"01\";\nx := y . z;\n")).kind ==
        FragmentKind::kSingleLetter);
}
