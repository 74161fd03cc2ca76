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

#ifndef RESAT_DEPGRAPH_HPP_
#define RESAT_DEPGRAPH_HPP_

#include "resat/formula.hpp"

namespace resat {

/// Dependency graph of a concat-free formula: one vertex per variable of the
/// relational part (constant subjects/replacements get their own synthetic
/// vertices), and per definition an l-edge to the subject plus an r-edge to
/// the replacement.
struct DepGraph {
  struct Edge {
    uint32_t from;
    uint32_t to;
    bool is_l;
    uint32_t def_index;
    std::string pattern;  // display text, for DOT
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<bool> synthetic;  // constant-term vertices

  uint32_t vertex(const std::string& name) const;
};

DepGraph build_dependency_graph(const Formula& f);

/// Maximum length of a chain of diamonds, each reachable from the previous
/// one. A diamond is a pair of distinct, internally vertex-disjoint paths
/// between two vertices.
uint32_t diamond_index(const DepGraph& g);

/// Maximum number of l-edges on any path.
uint32_t l_length(const DepGraph& g);

/// Maximum path length (number of edges); 0 for an edgeless graph.
uint32_t depth(const DepGraph& g);

/// Number of distinct paths (as edge sequences) from one vertex to another.
uint64_t path_count(const DepGraph& g, uint32_t from, uint32_t to);

std::string to_dot(const DepGraph& g);

enum class FragmentKind {
  kSingleLetter,
  kConstantString,
  kRegexPattern,
  kVarPattern,
  kExtendedUndecidable,
};

struct FragmentClass {
  FragmentKind kind;
  uint32_t diamond = 0;
  uint32_t l_len = 0;
  uint32_t graph_depth = 0;
  std::string advisory;
};

const char* fragment_kind_name(FragmentKind k);

/// Most specific fragment the formula falls into, plus graph statistics and a
/// complexity advisory. Concat definitions are desugared first.
FragmentClass classify(const Formula& f);

}  // namespace resat

#endif  // RESAT_DEPGRAPH_HPP_
