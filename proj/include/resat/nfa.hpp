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

#ifndef RESAT_NFA_HPP_
#define RESAT_NFA_HPP_

#include <memory>
#include <optional>
#include <span>

#include "resat/regex.hpp"
#include "resat/types.hpp"

namespace resat {

/// Epsilon label on a transition. Only remove_epsilon and the Thompson
/// construction deal with it; every other operation requires eps-free input.
constexpr Symbol kEpsilonSym = U'￿';

struct Arc {
  Symbol sym;
  State to;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// A transition graph: states 0..n-1 plus labeled arcs, no designated
/// initial/final states. Immutable once built; share via GraphPtr.
class Graph {
 public:
  uint32_t num_states() const { return num_states_; }
  std::span<const Arc> out(State q) const {
    return {arcs_.data() + out_begin_[q], arcs_.data() + out_begin_[q + 1]};
  }
  std::span<const Arc> in(State q) const {  // Arc.to holds the source here
    return {rarcs_.data() + in_begin_[q], rarcs_.data() + in_begin_[q + 1]};
  }
  size_t num_arcs() const { return arcs_.size(); }
  bool has_epsilon() const { return has_epsilon_; }

  bool has_arc(State from, Symbol sym, State to) const;

  /// Human-readable state label for DOT export and diagnostics.
  std::string label(State q) const;

 private:
  friend class GraphBuilder;
  uint32_t num_states_ = 0;
  bool has_epsilon_ = false;
  std::vector<Arc> arcs_;
  std::vector<uint32_t> out_begin_;
  std::vector<Arc> rarcs_;
  std::vector<uint32_t> in_begin_;
  std::vector<std::string> labels_;  // empty -> default "qN"
};

using GraphPtr = std::shared_ptr<const Graph>;

class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(uint32_t n) { states_ = n; }

  State add_state() { return states_++; }
  State add_state(std::string label);
  void set_label(State q, std::string label);
  void add_arc(State from, Symbol sym, State to);
  uint32_t num_states() const { return states_; }

  /// Sorts and dedupes arcs, builds adjacency. The builder is spent after.
  GraphPtr build();

 private:
  uint32_t states_ = 0;
  std::vector<std::pair<State, Arc>> arcs_;
  std::vector<std::pair<State, std::string>> labels_;
};

struct Nfa {
  GraphPtr graph;
  State initial = 0;
  std::vector<State> finals;  // sorted, unique

  bool is_final(State q) const;
};

/// An accepting run: run[i] is the state after reading word[0..i).
struct Witness {
  Word word;
  std::vector<State> run;
};

/// A word in an intersection, with its run through the implicit product.
struct ProductWitness {
  Word word;
  std::vector<std::vector<State>> run;  // run[i] = state tuple at position i
};

/// View of (graph, initial, final set) without owning the graph; the unit the
/// emptiness check and the constraint machinery work on.
struct NfaView {
  const Graph* graph;
  State initial;
  std::vector<State> finals;  // sorted
};

// ---- construction ----------------------------------------------------------

/// Regex -> eps-free NFA, pruned to states on some initial-to-final path
/// (the initial state is always kept). Linear-size Thompson construction
/// followed by epsilon removal.
Nfa compile(const Regex& r, const Alphabet& alphabet);

/// Product automaton recognizing L(a) ∩ L(b). Reachable pairs only; state
/// labels record the pair for diagnostics. Requires eps-free inputs.
Nfa product(const Nfa& a, const Nfa& b);

/// The automaton (g, q, {q'}).
Nfa with_endpoints(GraphPtr g, State q, State q_prime);

/// Language-preserving epsilon removal; same state count.
Nfa remove_epsilon(const Nfa& a);

/// Length-minimal word in the intersection of all automata, ties broken by
/// the lexicographically smallest word in `alphabet` order; nullopt iff the
/// intersection is empty. BFS over the on-the-fly product. An empty list
/// denotes the universal language (witness eps).
std::optional<ProductWitness> shortest_witness(std::span<const NfaView> automata,
                                               const Alphabet& alphabet,
                                               Budget* budget = nullptr);
std::optional<ProductWitness> shortest_witness(std::span<const Nfa> automata,
                                               const Alphabet& alphabet,
                                               Budget* budget = nullptr);

NfaView view(const Nfa& a);

// ---- queries ---------------------------------------------------------------

/// Set-simulation membership; requires eps-free.
bool accepts(const NfaView& a, const Word& w);
bool accepts(const Nfa& a, const Word& w);

/// States reachable from seeds along arcs (forward) or against them.
std::vector<bool> reachable(const Graph& g, std::span<const State> seeds);
std::vector<bool> coreachable(const Graph& g, std::span<const State> seeds);

/// True iff the given run witnesses acceptance of word by a.
bool replays(const Nfa& a, const Witness& w);

// ---- export ----------------------------------------------------------------

std::string to_dot(const Graph& g, const std::string& name);
std::string to_dot(const Nfa& a, const std::string& name);

}  // namespace resat

#endif  // RESAT_NFA_HPP_
