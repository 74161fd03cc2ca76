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

// resat: satisfiability of straight-line replaceall string constraints.
//
//   resat solve file.resat          decide and print a run report
//   resat eval SUBJECT PAT REPL     run the replaceall evaluator
//   resat classify file.resat       fragment class and graph statistics
//   resat dot file.resat TARGET     DOT export (depgraph | membership:x[:N] | parsing:x)
//   resat oracle file.resat         bounded brute-force check
//
// Exit codes for solve: 0 sat, 1 unsat, 2 unsupported, 3 resource-out,
// 4 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "resat/oracle.hpp"
#include "resat/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

resat::Formula load(const std::string& path) { return resat::parse_formula(read_file(path)); }

int run_solve(const std::string& path, const resat::SearchLimits& limits, bool dump_trace) {
  resat::Formula f = load(path);
  int64_t t0 = resat::steady_now_ms();
  resat::SolveResult result = resat::solve(f, limits);
  int64_t t1 = resat::steady_now_ms();
  resat::RunReport report = resat::RunReport::from_result(result);
  std::cout << report.to_text();
  std::cerr << "# wall-ms " << (t1 - t0) << "\n";
  if (dump_trace) std::cout << result.trace.to_text();
  return report.exit_code();
}

int run_eval(const std::string& subject, const std::string& pattern,
             const std::string& replacement, std::string alphabet) {
  if (alphabet.empty()) {
    // infer from the arguments; regex metacharacters do not count as symbols
    const std::string meta = "+*?()\"\\ \t";
    for (char c : subject + pattern + replacement) {
      if (meta.find(c) == std::string::npos) alphabet.push_back(c);
    }
  }
  resat::Alphabet sigma(resat::to_word(alphabet));
  resat::Regex re =
      pattern.empty() ? resat::re::eps() : resat::parse_regex(pattern, sigma);
  resat::Word out = resat::replace_all(resat::to_word(subject), re, resat::to_word(replacement));
  std::cout << resat::word_to_string(out) << "\n";
  return 0;
}

int run_classify(const std::string& path) {
  resat::Formula f = load(path);
  resat::FragmentClass c = resat::classify(f);
  std::cout << "class: " << resat::fragment_kind_name(c.kind) << "\n"
            << "diamond-index: " << c.diamond << "\n"
            << "l-length: " << c.l_len << "\n"
            << "depth: " << c.graph_depth << "\n"
            << "advisory: " << c.advisory << "\n";
  return 0;
}

int run_dot(const std::string& path, const std::string& target) {
  resat::Formula f = load(path);
  if (target == "depgraph") {
    resat::Formula d = resat::desugar_concat(f);
    std::cout << resat::to_dot(resat::build_dependency_graph(d));
    return 0;
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    return parts;
  };
  auto parts = split(target);
  if (parts.size() >= 2 && parts[0] == "membership") {
    size_t want = parts.size() >= 3 ? std::stoul(parts[2]) : 0;
    size_t seen = 0;
    for (const resat::Membership& m : f.memberships) {
      if (m.var != parts[1]) continue;
      if (seen++ == want) {
        resat::Nfa a = resat::compile(m.re, f.working_alphabet);
        std::cout << resat::to_dot(a, parts[1] + " in /" + m.re_text + "/");
        return 0;
      }
    }
    throw std::runtime_error("no membership " + std::to_string(want) + " for variable " +
                             parts[1]);
  }
  if (parts.size() == 2 && parts[0] == "parsing") {
    resat::Formula d = resat::desugar_concat(f);
    const resat::Definition* def = d.definition_of(parts[1]);
    if (!def) throw std::runtime_error("no definition for variable " + parts[1]);
    if (def->kind != resat::Definition::Kind::kReplaceAll ||
        def->pattern.kind == resat::Pattern::Kind::kVar) {
      throw std::runtime_error("definition of " + parts[1] + " has no parsing automaton");
    }
    resat::PreparedPattern p = resat::prepare_pattern(def->pattern, d.working_alphabet);
    switch (p.route) {
      case resat::PatternRoute::kSingleLetter:
        throw std::runtime_error("single-letter patterns have no parsing automaton");
      case resat::PatternRoute::kConstWord:
        std::cout << resat::to_dot(p.const_parser->nfa, "A_u " + def->pattern.display());
        return 0;
      case resat::PatternRoute::kRegex:
        std::cout << resat::to_dot(p.regex_parser->nfa, "A_e0 " + def->pattern.display());
        return 0;
      case resat::PatternRoute::kEpsilonOnly:
      case resat::PatternRoute::kRegexNullable: {
        resat::Nfa a0 = resat::compile(p.re, d.working_alphabet);
        resat::NullableParser np = resat::build_parsing_automaton_nullable(a0, d.working_alphabet);
        std::cout << resat::to_dot(np.nfa, "A_eps " + def->pattern.display());
        return 0;
      }
    }
  }
  throw std::runtime_error("unknown dot target '" + target +
                           "' (expected depgraph | membership:<var>[:<n>] | parsing:<var>)");
}

int run_oracle(const std::string& path, uint32_t max_len) {
  resat::Formula f = load(path);
  resat::OracleResult r = resat::brute_force_sat(f, max_len);
  if (r.sat) {
    std::cout << "oracle: sat\n";
    for (const auto& [var, word] : r.model) {
      std::cout << "model " << var << " = \"" << resat::word_to_string(word) << "\"\n";
    }
    return 0;
  }
  std::cout << "oracle: no-witness-up-to " << r.bound << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satisfiability of straight-line replaceall string constraints"};
  app.require_subcommand(1);

  resat::SearchLimits limits;
  bool dump_trace = false;
  std::string path, subject, pattern, replacement, alphabet, target;

  auto* solve = app.add_subcommand("solve", "decide satisfiability");
  solve->add_option("file", path)->required();
  solve->add_option("--max-product-states", limits.max_product_states);
  solve->add_option("--max-branches", limits.max_branches);
  solve->add_option("--timeout-ms", limits.timeout_ms);
  solve->add_option("--seed", limits.seed, "seed for randomized validation harnesses");
  solve->add_flag("--parallel", limits.parallel, "deterministic parallel mode");
  solve->add_flag("--defer-finals", limits.defer_finals,
                  "keep full final sets instead of branching per final state");
  solve->add_flag("--dump-trace", dump_trace, "print the successful guess trace");

  auto* eval = app.add_subcommand("eval", "run the replaceall evaluator");
  eval->add_option("subject", subject)->required();
  eval->add_option("pattern", pattern, "regex; empty means the empty-word pattern");
  eval->add_option("replacement", replacement);
  eval->add_option("--alphabet", alphabet);

  auto* classify = app.add_subcommand("classify", "fragment class and statistics");
  classify->add_option("file", path)->required();

  auto* dot = app.add_subcommand("dot", "DOT export");
  dot->add_option("file", path)->required();
  dot->add_option("target", target)->required();

  auto* oracle = app.add_subcommand("oracle", "bounded brute-force check");
  oracle->add_option("file", path)->required();
  oracle->add_option("--max-len", limits.oracle_max_len);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(path, limits, dump_trace);
    if (eval->parsed()) return run_eval(subject, pattern, replacement, alphabet);
    if (classify->parsed()) return run_classify(path);
    if (dot->parsed()) return run_dot(path, target);
    if (oracle->parsed()) return run_oracle(path, limits.oracle_max_len);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
