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

#ifndef RESAT_ELIMINATION_HPP_
#define RESAT_ELIMINATION_HPP_

#include <map>

#include "resat/depgraph.hpp"
#include "resat/parsing.hpp"

namespace resat {

/// One atomic regular membership: a run from `start` to some state in `ends`
/// through a shared graph.
struct ConstraintAtom {
  State start;
  std::vector<State> ends;  // sorted
};

/// A set of atomic constraints sharing one transition graph; the semantics is
/// the conjunction of the atoms. All atoms share one T_z guess when the
/// constrained variable is eliminated.
struct SuccinctConstraint {
  GraphPtr graph;
  std::vector<ConstraintAtom> atoms;

  std::vector<NfaView> views() const;
  std::vector<State> atom_starts() const;
  std::vector<State> atom_ends_union() const;
};

/// Per-variable constraint collections E(x) plus the number of definitions
/// already discharged. Copy to branch; cheap, graphs are shared.
struct ConstraintEnv {
  std::vector<std::vector<SuccinctConstraint>> env;  // indexed by solver vertex id
  uint32_t discharged = 0;

  size_t total_constraints() const;
};

/// Replayable record of every nondeterministic choice of a run.
struct GuessTrace {
  struct Event {
    enum class Kind { kFinalChoice, kTzChoice };
    Kind kind;
    uint32_t index;           // membership index / definition index
    uint32_t constraint_idx;  // kTzChoice: position in E(x)
    State final_state;        // kFinalChoice
    std::vector<StatePair> pairs;
  };
  std::vector<Event> events;

  std::string to_text() const;
};

/// How a definition's pattern is routed through the constructions.
enum class PatternRoute { kSingleLetter, kConstWord, kEpsilonOnly, kRegex, kRegexNullable };

struct PreparedPattern {
  PatternRoute route = PatternRoute::kSingleLetter;
  Symbol letter = 0;                              // kSingleLetter
  Word word;                                      // kConstWord
  Regex re;                                       // evaluation view of the pattern
  std::shared_ptr<const ConstParser> const_parser;      // kConstWord
  std::shared_ptr<const RegexParser> regex_parser;      // kRegex
  std::shared_ptr<const NullableParser> nullable_parser;  // kRegexNullable / kEpsilonOnly
};

/// Prepares a concrete (non-variable) pattern: routes literal regexes to the
/// letter/word constructions, the empty word to the insertion-only one, and
/// nullable regexes to the oracle-validated nullable parser.
PreparedPattern prepare_pattern(const Pattern& p, const Alphabet& sigma, Budget* budget = nullptr,
                                uint32_t seed = 0);

// ---- rewritten-subject constructions (B_{A, ., Tz}) -------------------------

/// Result of a B construction: the rewritten graph plus endpoint lift maps
/// from subject states into it. `end_states(t, tz)` is guess-dependent only
/// for insertion-at-the-end patterns (empty-word/nullable).
struct RewriteResult {
  GraphPtr graph;
  std::vector<State> start_of;               // subject state -> B state (kNoState: dropped)
  std::vector<std::vector<State>> ends_of;   // subject state -> B states
};

/// Single-letter case: drop all a-transitions, add (q, a, q') per pair. Same
/// state space; endpoint maps are the identity.
GraphPtr build_B_single(const GraphPtr& t, Symbol a, std::span<const StatePair> tz);

RewriteResult build_B_const(const GraphPtr& t, const ConstParser& parser,
                            std::span<const StatePair> tz, Budget* budget = nullptr);

RewriteResult build_B_regex(const GraphPtr& t, const RegexParser& parser,
                            std::span<const StatePair> tz, Budget* budget = nullptr);

/// Empty-word pattern: the replacement is inserted between every two letters
/// and at both ends. Composite of an insertion jump and one subject letter;
/// state space of t, ends shifted onto the jump sources.
RewriteResult build_B_epsilon(const GraphPtr& t, std::span<const StatePair> tz);

RewriteResult build_B_nullable(const GraphPtr& t, const NullableParser& parser,
                               std::span<const StatePair> tz, Budget* budget = nullptr);

/// Dispatches on the prepared pattern's route.
RewriteResult build_B(const GraphPtr& t, const PreparedPattern& pat, std::span<const StatePair> tz,
                      Budget* budget = nullptr);

/// Guess-independent part of a B construction for one (subject graph,
/// pattern) pair: the product skeleton plus insertion corridors, with the
/// guess-dependent jump arcs described as slots. Built once and cached by the
/// solver; apply_raw() stamps out the graph for one T_z.
class RewriteTemplate {
 public:
  static std::shared_ptr<const RewriteTemplate> make(GraphPtr t, const PreparedPattern& pat,
                                                     Budget* budget = nullptr);

  RewriteResult apply_raw(std::span<const StatePair> tz, Budget* budget = nullptr) const;

  /// apply_raw + endpoint lift + pruning to states on some atom path, built
  /// in one pass. nullopt when an atom's language is empty.
  std::optional<SuccinctConstraint> rewrite(const SuccinctConstraint& c,
                                            std::span<const StatePair> tz,
                                            Budget* budget = nullptr) const;

  /// True when the pattern cannot match at all, so every guess is equivalent
  /// to the empty one.
  bool inert() const { return column_slots_.empty() && pair_slots_.empty() && !direct_; }

  /// Shrinks a candidate pair set to the pairs whose insertion arcs can lie
  /// on some lifted start-to-end path when every candidate jump is present.
  /// Dropping the others loses no satisfiable guess: subsets only remove
  /// arcs, and a pair unused by the accepting run can be discarded.
  std::vector<StatePair> useful_pairs(const SuccinctConstraint& c, std::vector<StatePair> cands,
                                      Budget* budget = nullptr) const;

 private:
  RewriteTemplate() = default;

  uint32_t index(State q, uint32_t col) const { return q * pa_states_ + col; }

  GraphPtr subject_;
  PatternRoute route_ = PatternRoute::kSingleLetter;
  Symbol letter_ = 0;  // single-letter route

  uint32_t pa_states_ = 1;
  std::vector<std::pair<uint32_t, Arc>> base_arcs_;  // product-index adjacency
  struct Slot {
    uint32_t from_col;
    Symbol sym;
    uint32_t to_col;
  };
  std::vector<Slot> frozen_slots_;  // (q,from) --sym--> (q,to) per guessed source q
  std::vector<Slot> column_slots_;  // (q,from) --sym--> (q',to) per pair
  std::vector<Slot> pair_slots_;    // (q,from) --sym--> (succ(q',sym),to) per pair
  bool direct_ = false;             // single-letter / epsilon routes
  uint32_t init_col_ = 0;
  std::vector<uint32_t> final_cols_;       // guess-independent end columns
  std::vector<uint32_t> pre_insert_cols_;  // nullable: end columns reached via a pair
  std::vector<std::string> col_labels_;
};

/// Lift of a constraint through a rewrite; nullopt when some atom's language
/// became empty (the branch is dead). Prunes the rewritten graph to states on
/// some atom path when `prune` is set.
std::optional<SuccinctConstraint> lift_constraint(const SuccinctConstraint& c,
                                                  const RewriteResult& rewrite, bool prune,
                                                  Budget* budget = nullptr);

// ---- elimination proper ------------------------------------------------------

struct EliminationStep {
  uint32_t subject_vertex;
  uint32_t replacement_vertex;
  const PreparedPattern* pattern;
};

/// One Step-I move of the procedure on vertex x (the definition's left-hand
/// side): for each (T_j, P_j) in E(x) with guess tz_j, the replacement side
/// gains (T_j, tz_j) and the subject side gains the rewritten constraint
/// (B_{T_j, pat, tz_j}, P_j); x's two edges are discharged. Guesses with an
/// empty pair set add no replacement-side constraint.
/// Returns nullopt when a lifted constraint is empty.
std::optional<ConstraintEnv> eliminate_vertex(const ConstraintEnv& env, uint32_t vertex,
                                              const EliminationStep& step,
                                              std::span<const std::vector<StatePair>> guesses,
                                              Budget* budget = nullptr);

}  // namespace resat

#endif  // RESAT_ELIMINATION_HPP_
