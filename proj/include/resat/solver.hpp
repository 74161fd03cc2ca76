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

#ifndef RESAT_SOLVER_HPP_
#define RESAT_SOLVER_HPP_

#include "resat/elimination.hpp"

namespace resat {

struct SearchLimits {
  uint64_t max_product_states = 50'000'000;
  uint64_t max_branches = 500'000;
  uint64_t timeout_ms = 120'000;
  uint32_t oracle_max_len = 4;
  bool defer_finals = false;  // keep full final sets instead of branching per final
  bool parallel = false;      // deterministic fan-out of the Step II checks
  uint32_t seed = 0;          // randomized validation harnesses only
};

enum class VerdictKind { kSat, kUnsat, kUnsupported, kResourceOut };

const char* verdict_kind_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::kUnsat;
  Model model;         // kSat; original variables in first-appearance order
  std::string reason;  // kUnsupported / kResourceOut
};

struct SolveStats {
  uint64_t branches = 0;         // T_z guesses tried
  uint64_t final_choices = 0;    // E_0 final-state combinations tried
  uint64_t peak_env = 0;         // largest total constraint count seen
  uint64_t peak_var_env = 0;     // largest per-variable collection seen
  uint64_t templates = 0;        // rewrite templates built
  uint64_t witness_searches = 0; // intersection emptiness checks
  uint64_t states_charged = 0;   // product/template states materialized
};

struct SolveResult {
  Verdict verdict;
  FragmentClass fragment;
  SolveStats stats;
  GuessTrace trace;  // of the successful branch (kSat)
};

/// Decides satisfiability of f. Rejects variable patterns and
/// length/character/indexOf extensions as unsupported; every Sat model is
/// verified before being returned.
SolveResult solve(const Formula& f, const SearchLimits& limits);

/// Checks every definition under the evaluator and every membership under
/// the naive matcher. nullopt when the model satisfies f; otherwise a
/// diagnostic naming the first violated conjunct.
std::optional<std::string> verify_model(const Formula& f, const Model& model);

// Exact diagnostics for the unsupported verdicts.
extern const char* const kReasonVarPattern;
extern const char* const kReasonLength;
extern const char* const kReasonChar;
extern const char* const kReasonIndexOf;

/// White-box driver for one prepared formula; the unit the search and the
/// elimination tests are written against. The formula must be concat-free
/// and straight-line.
class SolverSession {
 public:
  SolverSession(const Formula& f, const SearchLimits& limits);

  struct Vertex {
    std::string name;
    bool is_const = false;
    Word const_word;  // is_const
    bool defined = false;
  };
  struct MembershipAutomaton {
    uint32_t vertex;
    Nfa nfa;
  };

  const std::vector<Vertex>& vertices() const { return vertices_; }
  uint32_t vertex_of(const std::string& name) const;
  const std::vector<MembershipAutomaton>& membership_automata() const { return memberships_; }
  const std::vector<EliminationStep>& steps() const { return steps_; }  // reverse def order
  const PreparedPattern& pattern_of(uint32_t def_index) const { return patterns_[def_index]; }
  uint32_t step_def(uint32_t step_index) const { return step_def_[step_index]; }
  uint32_t eliminated_vertex(uint32_t step_index) const {
    return def_vertex_[step_def_[step_index]];
  }

  /// E_0 from one final-state choice per membership automaton
  /// (kNoState = keep the full final set).
  ConstraintEnv initial_env(std::span<const State> final_choices) const;

  /// One Step-I move with cached rewrite templates.
  std::optional<ConstraintEnv> eliminate(const ConstraintEnv& env, uint32_t step_index,
                                         std::span<const std::vector<StatePair>> guesses);

  /// T_z candidate pairs for constraint j of the vertex eliminated at
  /// step_index, pruned to pairs that can lie on an accepting rewrite run and
  /// that are per-pair feasible against the replacement side.
  std::vector<StatePair> candidates(const ConstraintEnv& env, uint32_t step_index, uint32_t j);

  struct Step2Result {
    bool ok = false;
    uint32_t failed_vertex = 0;
    std::vector<std::pair<uint32_t, Word>> source_values;  // vertex -> witness
  };
  Step2Result step2(const ConstraintEnv& env);

  /// Model over all vertices: sources from their Step II witnesses, defined
  /// variables bottom-up through the evaluator.
  Model extract_model(const Step2Result& s2) const;

  Budget& budget() { return budget_; }
  SolveStats& stats() { return stats_; }
  const Formula& formula() const { return formula_; }

  /// Emptiness of the conjunction of (graph, q, q') over the pairs plus the
  /// current constraints on a vertex; the replacement-side pruning check.
  bool replacement_side_feasible(const ConstraintEnv& env, uint32_t vertex, const GraphPtr& graph,
                                 std::span<const StatePair> pairs);

 private:
  std::shared_ptr<const RewriteTemplate> template_for(uint32_t def_index, const GraphPtr& graph);

  Formula formula_;
  SearchLimits limits_;
  Budget budget_;
  SolveStats stats_;
  std::vector<Vertex> vertices_;
  std::vector<MembershipAutomaton> memberships_;
  std::vector<PreparedPattern> patterns_;       // per definition
  std::vector<EliminationStep> steps_;          // reverse definition order
  std::vector<uint32_t> step_def_;              // step index -> definition index
  std::vector<uint32_t> def_vertex_;            // definition index -> lhs vertex
  std::map<std::pair<uint32_t, const Graph*>, std::shared_ptr<const RewriteTemplate>> templates_;
  std::map<const Graph*, std::vector<std::vector<bool>>> closures_;

  const std::vector<std::vector<bool>>& closure_of(const GraphPtr& g);

  friend SolveResult solve(const Formula&, const SearchLimits&);
};

}  // namespace resat

#endif  // RESAT_SOLVER_HPP_
