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

#include "resat/depgraph.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace resat {

uint32_t DepGraph::vertex(const std::string& name) const {
  auto it = std::find(vertices.begin(), vertices.end(), name);
  assert(it != vertices.end());
  return static_cast<uint32_t>(it - vertices.begin());
}

DepGraph build_dependency_graph(const Formula& f) {
  DepGraph g;
  std::map<std::string, uint32_t> index;
  auto intern = [&](const std::string& name, bool synth) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    uint32_t v = static_cast<uint32_t>(g.vertices.size());
    index.emplace(name, v);
    g.vertices.push_back(name);
    g.synthetic.push_back(synth);
    return v;
  };

  int lit_counter = 0;
  for (uint32_t i = 0; i < f.definitions.size(); ++i) {
    const Definition& d = f.definitions[i];
    assert(d.kind == Definition::Kind::kReplaceAll);
    uint32_t from = intern(d.lhs, false);
    auto term_vertex = [&](const StringTerm& t) {
      if (t.is_const) {
        return intern("lit#" + std::to_string(lit_counter++) + " \"" + word_to_string(t.value) +
                          "\"",
                      true);
      }
      return intern(t.var, false);
    };
    uint32_t subj = term_vertex(d.subject);
    uint32_t repl = term_vertex(d.replacement);
    g.edges.push_back({from, subj, true, i, d.pattern.display()});
    g.edges.push_back({from, repl, false, i, d.pattern.display()});
  }
  return g;
}

namespace {

std::vector<std::vector<uint32_t>> adjacency(const DepGraph& g) {
  std::vector<std::vector<uint32_t>> out(g.vertices.size());
  for (uint32_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);
  return out;
}

std::vector<std::vector<bool>> reach_closure(const DepGraph& g) {
  size_t n = g.vertices.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (size_t v = 0; v < n; ++v) r[v][v] = true;
  // DAG: iterate until fixpoint (tiny graphs)
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : g.edges) {
      for (size_t t = 0; t < n; ++t) {
        if (r[e.to][t] && !r[e.from][t]) {
          r[e.from][t] = true;
          changed = true;
        }
      }
    }
  }
  return r;
}

// Two internally vertex-disjoint, edge-distinct paths from s to t?
// Max-flow 2 test on the vertex-split network with unit capacities.
bool has_diamond(const DepGraph& g, uint32_t s, uint32_t t) {
  if (s == t) return false;
  size_t n = g.vertices.size();
  // nodes: 2*v (in) and 2*v+1 (out); source = out(s), sink = in(t)
  struct FEdge {
    uint32_t to;
    int cap;
    size_t rev;
  };
  std::vector<std::vector<FEdge>> net(2 * n);
  auto add = [&](uint32_t a, uint32_t b, int cap) {
    net[a].push_back({b, cap, net[b].size()});
    net[b].push_back({a, 0, net[a].size() - 1});
  };
  for (uint32_t v = 0; v < n; ++v) {
    int cap = (v == s || v == t) ? 1000 : 1;
    add(2 * v, 2 * v + 1, cap);
  }
  for (const auto& e : g.edges) add(2 * e.from + 1, 2 * e.to, 1);

  uint32_t src = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  while (flow < 2) {
    // BFS augmenting path
    std::vector<std::pair<uint32_t, size_t>> par(2 * n, {UINT32_MAX, 0});
    std::vector<uint32_t> queue{src};
    par[src] = {src, 0};
    bool found = false;
    for (size_t qi = 0; qi < queue.size() && !found; ++qi) {
      uint32_t u = queue[qi];
      for (size_t i = 0; i < net[u].size(); ++i) {
        const FEdge& fe = net[u][i];
        if (fe.cap > 0 && par[fe.to].first == UINT32_MAX) {
          par[fe.to] = {u, i};
          if (fe.to == sink) {
            found = true;
            break;
          }
          queue.push_back(fe.to);
        }
      }
    }
    if (!found) break;
    for (uint32_t v = sink; v != src;) {
      auto [u, i] = par[v];
      net[u][i].cap -= 1;
      net[v][net[u][i].rev].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow >= 2;
}

}  // namespace

uint32_t diamond_index(const DepGraph& g) {
  size_t n = g.vertices.size();
  auto reach = reach_closure(g);
  // all diamond (source, destination) pairs
  std::vector<std::pair<uint32_t, uint32_t>> diamonds;
  for (uint32_t s = 0; s < n; ++s) {
    for (uint32_t t = 0; t < n; ++t) {
      if (s != t && reach[s][t] && has_diamond(g, s, t)) diamonds.emplace_back(s, t);
    }
  }
  // longest chain where the next diamond's source is reachable from the
  // previous diamond's destination; the relation is acyclic because each
  // diamond strictly advances in topological order
  std::vector<int64_t> memo(diamonds.size(), -1);
  auto chain = [&](auto&& self, size_t i) -> uint32_t {
    if (memo[i] >= 0) return static_cast<uint32_t>(memo[i]);
    uint32_t best = 1;
    for (size_t j = 0; j < diamonds.size(); ++j) {
      if (j != i && reach[diamonds[i].second][diamonds[j].first]) {
        best = std::max(best, 1 + self(self, j));
      }
    }
    memo[i] = best;
    return best;
  };
  uint32_t overall = 0;
  for (size_t i = 0; i < diamonds.size(); ++i) overall = std::max(overall, chain(chain, i));
  return overall;
}

namespace {

// longest path DP with per-edge weights; memoized over the DAG
uint32_t longest_from(const DepGraph& g, const std::vector<std::vector<uint32_t>>& adj, uint32_t v,
                      std::vector<int64_t>& memo, bool l_only) {
  if (memo[v] >= 0) return static_cast<uint32_t>(memo[v]);
  uint32_t best = 0;
  for (uint32_t e : adj[v]) {
    uint32_t w = (!l_only || g.edges[e].is_l) ? 1 : 0;
    best = std::max(best, w + longest_from(g, adj, g.edges[e].to, memo, l_only));
  }
  memo[v] = best;
  return best;
}

}  // namespace

uint32_t l_length(const DepGraph& g) {
  auto adj = adjacency(g);
  std::vector<int64_t> memo(g.vertices.size(), -1);
  uint32_t best = 0;
  for (uint32_t v = 0; v < g.vertices.size(); ++v) {
    best = std::max(best, longest_from(g, adj, v, memo, true));
  }
  return best;
}

uint32_t depth(const DepGraph& g) {
  auto adj = adjacency(g);
  std::vector<int64_t> memo(g.vertices.size(), -1);
  uint32_t best = 0;
  for (uint32_t v = 0; v < g.vertices.size(); ++v) {
    best = std::max(best, longest_from(g, adj, v, memo, false));
  }
  return best;
}

uint64_t path_count(const DepGraph& g, uint32_t from, uint32_t to) {
  auto adj = adjacency(g);
  std::vector<int64_t> memo(g.vertices.size(), -1);
  // counts paths with >= 0 edges; the empty path is counted only at `to`
  auto count = [&](auto&& self, uint32_t v) -> uint64_t {
    if (memo[v] >= 0) return static_cast<uint64_t>(memo[v]);
    uint64_t total = v == to ? 1 : 0;
    for (uint32_t e : adj[v]) total += self(self, g.edges[e].to);
    memo[v] = static_cast<int64_t>(total);
    return total;
  };
  return count(count, from);
}

std::string to_dot(const DepGraph& g) {
  std::string out = "digraph deps {\n  rankdir=TB;\n";
  for (uint32_t v = 0; v < g.vertices.size(); ++v) {
    out += "  " + std::to_string(v) + " [label=\"" + g.vertices[v] + "\"" +
           (g.synthetic[v] ? " shape=box" : "") + "];\n";
  }
  for (const auto& e : g.edges) {
    out += "  " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
           std::string(e.is_l ? "l" : "r") + "," + e.pattern + "\"];\n";
  }
  out += "}\n";
  return out;
}

const char* fragment_kind_name(FragmentKind k) {
  switch (k) {
    case FragmentKind::kSingleLetter: return "single-letter";
    case FragmentKind::kConstantString: return "constant-string";
    case FragmentKind::kRegexPattern: return "regex-pattern";
    case FragmentKind::kVarPattern: return "var-pattern";
    case FragmentKind::kExtendedUndecidable: return "extended-undecidable";
  }
  return "?";
}

FragmentClass classify(const Formula& f0) {
  Formula f = desugar_concat(f0);
  FragmentClass out;
  DepGraph g = build_dependency_graph(f);
  out.diamond = diamond_index(g);
  out.l_len = l_length(g);
  out.graph_depth = depth(g);

  bool any_var = false;
  int rank = 1;  // 1 single-letter, 2 constant-string, 3 regex
  for (const Definition& d : f.definitions) {
    switch (d.pattern.kind) {
      case Pattern::Kind::kVar:
        any_var = true;
        break;
      case Pattern::Kind::kConst:
        if (d.pattern.text.empty()) {
          rank = 3;  // empty-word pattern is handled by the regex machinery
        } else if (d.pattern.text.size() >= 2) {
          rank = std::max(rank, 2);
        }
        break;
      case Pattern::Kind::kRegex: {
        auto w = literal_word(d.pattern.re);
        if (w && w->size() == 1) {
          // a bare literal is a single-letter pattern
        } else if (w && !w->empty()) {
          rank = std::max(rank, 2);
        } else {
          rank = 3;
        }
        break;
      }
    }
  }

  if (any_var) {
    out.kind = FragmentKind::kVarPattern;
    out.advisory = "undecidable: variable patterns";
  } else if (!f.extensions.empty()) {
    out.kind = FragmentKind::kExtendedUndecidable;
    out.advisory = "undecidable: length/character/indexof extension";
  } else if (rank == 1) {
    out.kind = FragmentKind::kSingleLetter;
    out.advisory = "polynomial-space fragment: single-letter patterns, diamond index " +
                   std::to_string(out.diamond);
  } else if (rank == 2) {
    out.kind = FragmentKind::kConstantString;
    out.advisory = "polynomial-space fragment: constant patterns, l-length " +
                   std::to_string(out.l_len);
  } else {
    out.kind = FragmentKind::kRegexPattern;
    out.advisory = out.l_len <= 1
                       ? "polynomial-space fragment: regex patterns, l-length <= 1"
                       : "exponential-space worst case: regex patterns, l-length " +
                             std::to_string(out.l_len);
  }
  return out;
}

}  // namespace resat
