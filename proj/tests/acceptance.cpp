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

// End-to-end acceptance: each criterion prints one pass/fail line; the
// process exits nonzero when any of them fails.

#include <cstdio>
#include <functional>

#include "resat/parsing.hpp"
#include "resat/report.hpp"
#include "goldens.hpp"
#include "testutil.hpp"

using namespace resat;
using namespace resat::test;

namespace {

static const Alphabet kBin{U'0', U'1'};
static const Alphabet kAbcd{U'a', U'b', U'c', U'd'};

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& msg) { g_notes.push_back(msg); }

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      note(std::string("failed: ") + #cond + " (line " +            \
           std::to_string(__LINE__) + ")");                         \
      return false;                                                 \
    }                                                               \
  } while (0)

void run(int number, const char* name, const std::function<bool()>& body) {
  g_notes.clear();
  int64_t t0 = steady_now_ms();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
  }
  int64_t ms = steady_now_ms() - t0;
  std::printf("criterion %d: %s — %s (%lld ms)\n", number, ok ? "PASS" : "FAIL", name,
              static_cast<long long>(ms));
  for (const std::string& n : g_notes) std::printf("    %s\n", n.c_str());
  if (!ok) ++g_failures;
}

Model model_of(std::initializer_list<std::pair<const char*, const char*>> kv) {
  Model m;
  for (const auto& [k, v] : kv) m.emplace_back(k, W(v));
  return m;
}

// 1. the evaluator reproduces the worked semantics examples exactly
bool golden_semantics() {
  int64_t t0 = steady_now_ms();
  EXPECT(replace_all(W("abab"), parse_regex("ab", kAbcd), W("d")) == W("dd"));
  EXPECT(replace_all(W("baac"), parse_regex("aa*", kAbcd), W("b")) == W("bbc"));
  EXPECT(replace_all(W("aaaa"), re::eps(), W("d")) == W("dadadadad"));
  EXPECT(replace_all(W("baac"), parse_regex("a*", kAbcd), W("b")) == W("bbbcb"));
  auto span = leftmost_longest_match(W("1010101"), parse_regex("0*01(0*+1*)", kBin));
  EXPECT(span && span->start == 1 && span->length == 3);
  auto eps_span = leftmost_longest_match(W("baac"), parse_regex("a*", kAbcd));
  EXPECT(eps_span && eps_span->start == 0 && eps_span->length == 0);
  EXPECT(steady_now_ms() - t0 < 1000);
  return true;
}

// 2. the four golden solver runs: sat, verified model, worked witnesses admissible
bool golden_solver_runs() {
  struct Golden {
    const char* text;
    Model witness;
  };
  const Golden goldens[] = {
      {kSingleLetterInstance, model_of({{"x", "101101"}, {"y", "0101"}, {"z", "10"}})},
      {kNestedInstance, model_of({{"y'", "11"}, {"z'", "01"}, {"z", "10"}, {"y", "0101"},
                                  {"x", "101101"}})},
      {kConstInstance, model_of({{"x", "101101"}, {"y", "01010101"}, {"z", "10"}})},
      {kRegexInstance, model_of({{"x", "10110"}, {"y", "010101"}, {"z", "10"}})},
  };
  for (const Golden& g : goldens) {
    int64_t t0 = steady_now_ms();
    Formula f = parse_formula(g.text);
    SolveResult r = solve(f, SearchLimits{});
    EXPECT(r.verdict.kind == VerdictKind::kSat);
    EXPECT(!verify_model(f, r.verdict.model).has_value());
    EXPECT(!verify_model(f, g.witness).has_value());
    EXPECT(steady_now_ms() - t0 < 5000);
  }
  // the nested model chain reproduces itself through the evaluator
  Formula nested = parse_formula(kNestedInstance);
  SolveResult r = solve(nested, SearchLimits{});
  const Word* yp = model_value(r.verdict.model, "y'");
  const Word* zp = model_value(r.verdict.model, "z'");
  const Word* y = model_value(r.verdict.model, "y");
  const Word* z = model_value(r.verdict.model, "z");
  const Word* x = model_value(r.verdict.model, "x");
  EXPECT(yp && zp && y && z && x);
  EXPECT(*y == replace_all(*yp, re::lit(U'1'), *zp));
  EXPECT(*x == replace_all(*y, re::lit(U'0'), *z));
  return true;
}

// 3. window profiles: the worked set exactly, and the cardinality bound
bool window_profile_bound() {
  auto ps = window_profiles(W("010"), kBin);
  EXPECT(ps.size() == 3);
  std::vector<std::string> shown;
  for (const auto& p : ps) shown.push_back(p.display());
  std::sort(shown.begin(), shown.end());
  EXPECT((shown == std::vector<std::string>{"T_", "_T", "__"}));
  std::mt19937 rng(1003);
  for (int iter = 0; iter < 200; ++iter) {
    size_t len = 2 + rng() % 7;
    Word u;
    for (size_t i = 0; i < len; ++i) u.push_back(kBin.symbols()[rng() % 2]);
    EXPECT(window_profiles(u, kBin).size() <= u.size());
  }
  return true;
}

// 4. parsing automata: unique accepting runs whose structure equals the
// evaluator's decomposition, 500 random (pattern, word) pairs
bool parsing_oracle_equivalence() {
  int64_t t0 = steady_now_ms();
  std::mt19937 rng(1004);
  int done = 0;
  while (done < 250) {
    size_t len = 2 + rng() % 3;
    Word u;
    for (size_t i = 0; i < len; ++i) u.push_back(kBin.symbols()[rng() % 2]);
    ConstParser p = build_parsing_automaton_const(u, kBin);
    Word v = random_word(rng, kBin, 8);
    EXPECT(count_accepting_runs(p.nfa, v) == 1);
    auto run = unique_accepting_run(p.nfa, v);
    EXPECT(run.has_value());
    EXPECT(spans_from_const_run(p, *run) == match_decomposition(v, re::word(u)).spans);
    ++done;
  }
  done = 0;
  while (done < 250) {
    Regex e = random_regex(rng, kBin, 1 + static_cast<int>(rng() % 6));
    if (epsilon_member(e)) continue;
    Nfa a0 = compile(e, kBin);
    if (a0.finals.empty()) continue;
    RegexParser p = build_parsing_automaton_regex(a0, kBin);
    Word v = random_word(rng, kBin, 8);
    EXPECT(count_accepting_runs(p.nfa, v) == 1);
    auto run = unique_accepting_run(p.nfa, v);
    EXPECT(run.has_value());
    EXPECT(spans_from_regex_run(p, *run, v) == match_decomposition(v, e).spans);
    ++done;
  }
  EXPECT(steady_now_ms() - t0 < 60'000);
  return true;
}

std::string random_small_formula(std::mt19937& rng, bool with_concat) {
  const char* regexes[] = {"0*", "1*", "(01)*", "(0+1)*", "0*1*", "1(0+1)*", "00*", "(10)*"};
  const char* patterns[] = {"\"0\"", "\"1\"", "\"01\"", "\"010\"", "/0*1/", "/(01)*/", "/1+0/",
                            "\"\"", "/00/", "/0*/", "/1?/"};
  std::string text = "alphabet \"01\";\n";
  std::vector<std::string> sources{"a", "b", "c"};
  std::vector<std::string> scope = sources;
  int defs = rng() % 3;
  for (int i = 0; i < defs; ++i) {
    std::string lhs = "x" + std::to_string(i);
    std::string subj = rng() % 5 == 0 ? "\"010\"" : scope[rng() % scope.size()];
    std::string repl = rng() % 5 == 0 ? "\"1\"" : scope[rng() % scope.size()];
    if (with_concat && rng() % 3 == 0) {
      text += lhs + " := " + subj + " . " + repl + ";\n";
    } else {
      text += lhs + " := replaceall(" + subj + ", " + patterns[rng() % 11] + ", " + repl + ");\n";
    }
    scope.push_back(lhs);
  }
  int memberships = 1 + rng() % 3;
  for (int i = 0; i < memberships; ++i) {
    text += "assert " + scope[rng() % scope.size()] + " in /" + regexes[rng() % 8] + "/;\n";
  }
  return text;
}

// 5. differential satisfiability against the brute-force oracle
bool differential_satisfiability() {
  int64_t t0 = steady_now_ms();
  std::mt19937 rng(1005);
  SearchLimits limits;
  for (int iter = 0; iter < 300; ++iter) {
    std::string text = random_small_formula(rng, /*with_concat=*/false);
    Formula f = parse_formula(text);
    for (const Membership& m : f.memberships) {
      EXPECT(compile(m.re, f.alphabet).graph->num_states() <= 4);
    }
    OracleResult oracle = brute_force_sat(f, 4);
    SolveResult got = solve(f, limits);
    if (oracle.sat && got.verdict.kind != VerdictKind::kSat) {
      note("instance:\n" + text);
      EXPECT(false);
    }
    if (got.verdict.kind == VerdictKind::kSat) {
      EXPECT(!verify_model(f, got.verdict.model).has_value());
    }
    if (got.verdict.kind == VerdictKind::kUnsat) {
      EXPECT(!oracle.sat);
    }
  }
  EXPECT(steady_now_ms() - t0 < 300'000);
  return true;
}

// 6. the concat rewriting evaluates to concatenation and preserves verdicts
bool concat_simulation() {
  std::mt19937 rng(1006);
  for (int iter = 0; iter < 200; ++iter) {
    Word s1 = random_word(rng, kBin, 6);
    Word s2 = random_word(rng, kBin, 6);
    Word step1 = replace_all(W("ab"), re::lit(U'a'), s1);
    EXPECT(replace_all(step1, re::lit(U'b'), s2) == s1 + s2);
  }
  for (int iter = 0; iter < 100; ++iter) {
    std::string text = random_small_formula(rng, /*with_concat=*/true);
    Formula f = parse_formula(text);
    Formula d = desugar_concat(f);
    OracleResult before = brute_force_sat(f, 2);
    OracleResult after = brute_force_sat(d, 2);
    if (before.sat != after.sat) {
      note("instance:\n" + text);
      EXPECT(false);
    }
    if (after.sat) {
      for (const std::string& v : f.variables) {
        const Word* w = model_value(after.model, v);
        EXPECT(w != nullptr);
        for (Symbol s : *w) EXPECT(!is_fresh_letter(s));
      }
    }
  }
  return true;
}

// 7. each undecidable extension is rejected with its exact citation
bool undecidability_guards() {
  struct Case {
    const char* text;
    const char* reason;
  };
  const Case cases[] = {
      {kVarPatternInstance, kReasonVarPattern},
      {kLengthInstance, kReasonLength},
      {kCharInstance, kReasonChar},
      {kIndexOfInstance, kReasonIndexOf},
  };
  for (const Case& c : cases) {
    SolveResult r = solve(parse_formula(c.text), SearchLimits{});
    EXPECT(r.verdict.kind == VerdictKind::kUnsupported);
    EXPECT(r.verdict.reason == c.reason);
    EXPECT(RunReport::from_result(r).exit_code() == 2);
  }
  return true;
}

// 8. twenty repeated runs per golden instance yield byte-identical reports
bool determinism() {
  for (const char* text :
       {kSingleLetterInstance, kNestedInstance, kConstInstance, kRegexInstance}) {
    Formula f = parse_formula(text);
    std::string first = RunReport::from_result(solve(f, SearchLimits{})).to_text();
    for (int i = 1; i < 20; ++i) {
      EXPECT(RunReport::from_result(solve(f, SearchLimits{})).to_text() == first);
    }
  }
  return true;
}

// 9. graph statistics against exhaustive brute force, plus the three-diamond
// chain
bool graph_statistics() {
  std::mt19937 rng(1009);
  for (int iter = 0; iter < 100; ++iter) {
    uint32_t n = 3 + rng() % 5;
    std::vector<std::string> names;
    for (uint32_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::string> lines;
    for (uint32_t i = 0; i + 1 < n; ++i) {
      if (rng() % 3 == 0) continue;
      uint32_t a = i + 1 + rng() % (n - i - 1);
      uint32_t b = i + 1 + rng() % (n - i - 1);
      lines.push_back(names[i] + " := replaceall(" + names[a] + ", \"0\", " + names[b] + ");\n");
    }
    std::string text = "alphabet \"01\";\n";
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) text += *it;
    DepGraph g = build_dependency_graph(parse_formula(text));
    EXPECT(diamond_index(g) == brute_diamond_index(g));
    EXPECT(l_length(g) == brute_l_length(g));
  }
  DepGraph chain = build_dependency_graph(parse_formula(
      "alphabet \"01\";\n"
      "x3 := replaceall(y1, \"0\", y1);\n"
      "x2 := replaceall(x3, \"0\", x3);\n"
      "x1 := replaceall(x2, \"0\", x2);\n"));
  EXPECT(diamond_index(chain) == 3);
  EXPECT(path_count(chain, chain.vertex("x1"), chain.vertex("y1")) == 8);
  return true;
}

}  // namespace

int main() {
  run(1, "golden evaluator semantics", golden_semantics);
  run(2, "golden solver runs", golden_solver_runs);
  run(3, "window profiles", window_profile_bound);
  run(4, "parsing automata match the decomposition oracle", parsing_oracle_equivalence);
  run(5, "differential satisfiability vs brute force", differential_satisfiability);
  run(6, "concat simulation", concat_simulation);
  run(7, "undecidability guards", undecidability_guards);
  run(8, "determinism of golden reports", determinism);
  run(9, "dependency graph statistics", graph_statistics);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
