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

#include "resat/nfa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <unordered_map>

namespace resat {

// ---- Graph / GraphBuilder --------------------------------------------------

bool Graph::has_arc(State from, Symbol sym, State to) const {
  for (const Arc& a : out(from)) {
    if (a.sym == sym && a.to == to) return true;
  }
  return false;
}

std::string Graph::label(State q) const {
  if (q < labels_.size() && !labels_[q].empty()) return labels_[q];
  return "q" + std::to_string(q);
}

State GraphBuilder::add_state(std::string label) {
  State q = states_++;
  labels_.emplace_back(q, std::move(label));
  return q;
}

void GraphBuilder::set_label(State q, std::string label) {
  labels_.emplace_back(q, std::move(label));
}

void GraphBuilder::add_arc(State from, Symbol sym, State to) {
  assert(from < states_ && to < states_);
  arcs_.emplace_back(from, Arc{sym, to});
}

GraphPtr GraphBuilder::build() {
  auto g = std::make_shared<Graph>();
  g->num_states_ = states_;
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  g->arcs_.reserve(arcs_.size());
  g->out_begin_.assign(states_ + 1, 0);
  for (const auto& [from, arc] : arcs_) {
    g->out_begin_[from + 1]++;
    if (arc.sym == kEpsilonSym) g->has_epsilon_ = true;
  }
  for (uint32_t i = 0; i < states_; ++i) g->out_begin_[i + 1] += g->out_begin_[i];
  for (const auto& [from, arc] : arcs_) g->arcs_.push_back(arc);

  // reverse adjacency, Arc.to = source state
  std::vector<std::pair<State, Arc>> rev;
  rev.reserve(arcs_.size());
  for (const auto& [from, arc] : arcs_) rev.emplace_back(arc.to, Arc{arc.sym, from});
  std::sort(rev.begin(), rev.end());
  g->in_begin_.assign(states_ + 1, 0);
  for (const auto& [to, arc] : rev) g->in_begin_[to + 1]++;
  for (uint32_t i = 0; i < states_; ++i) g->in_begin_[i + 1] += g->in_begin_[i];
  g->rarcs_.reserve(rev.size());
  for (const auto& [to, arc] : rev) g->rarcs_.push_back(arc);

  if (!labels_.empty()) {
    g->labels_.resize(states_);
    for (auto& [q, l] : labels_) g->labels_[q] = std::move(l);
  }
  return g;
}

bool Nfa::is_final(State q) const {
  return std::binary_search(finals.begin(), finals.end(), q);
}

NfaView view(const Nfa& a) { return NfaView{a.graph.get(), a.initial, a.finals}; }

// ---- reachability ----------------------------------------------------------

static std::vector<bool> sweep(const Graph& g, std::span<const State> seeds, bool forward) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<State> stack;
  for (State s : seeds) {
    if (s < g.num_states() && !seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    auto arcs = forward ? g.out(q) : g.in(q);
    for (const Arc& a : arcs) {
      if (!seen[a.to]) {
        seen[a.to] = true;
        stack.push_back(a.to);
      }
    }
  }
  return seen;
}

std::vector<bool> reachable(const Graph& g, std::span<const State> seeds) {
  return sweep(g, seeds, true);
}

std::vector<bool> coreachable(const Graph& g, std::span<const State> seeds) {
  return sweep(g, seeds, false);
}

// ---- epsilon removal -------------------------------------------------------

static std::vector<State> eps_closure(const Graph& g, State q) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<State> stack{q}, out;
  seen[q] = true;
  while (!stack.empty()) {
    State p = stack.back();
    stack.pop_back();
    out.push_back(p);
    for (const Arc& a : g.out(p)) {
      if (a.sym == kEpsilonSym && !seen[a.to]) {
        seen[a.to] = true;
        stack.push_back(a.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Nfa remove_epsilon(const Nfa& a) {
  const Graph& g = *a.graph;
  if (!g.has_epsilon()) return a;
  GraphBuilder b(g.num_states());
  std::vector<State> finals;
  for (State q = 0; q < g.num_states(); ++q) {
    b.set_label(q, g.label(q));
    bool final_here = false;
    for (State p : eps_closure(g, q)) {
      if (a.is_final(p)) final_here = true;
      for (const Arc& arc : g.out(p)) {
        if (arc.sym != kEpsilonSym) b.add_arc(q, arc.sym, arc.to);
      }
    }
    if (final_here) finals.push_back(q);
  }
  return Nfa{b.build(), a.initial, std::move(finals)};
}

// ---- pruning ---------------------------------------------------------------

// Restrict to states both reachable from the initial state and co-reachable
// from a final state; the initial state is always kept.
static Nfa prune(const Nfa& a) {
  const Graph& g = *a.graph;
  State init[] = {a.initial};
  auto fwd = reachable(g, init);
  auto bwd = coreachable(g, a.finals);
  std::vector<State> remap(g.num_states(), kNoState);
  GraphBuilder b;
  for (State q = 0; q < g.num_states(); ++q) {
    if ((fwd[q] && bwd[q]) || q == a.initial) remap[q] = b.add_state(g.label(q));
  }
  for (State q = 0; q < g.num_states(); ++q) {
    if (remap[q] == kNoState) continue;
    for (const Arc& arc : g.out(q)) {
      if (remap[arc.to] != kNoState && fwd[q] && bwd[q] && fwd[arc.to] && bwd[arc.to]) {
        b.add_arc(remap[q], arc.sym, remap[arc.to]);
      }
    }
  }
  std::vector<State> finals;
  for (State f : a.finals) {
    if (remap[f] != kNoState) finals.push_back(remap[f]);
  }
  std::sort(finals.begin(), finals.end());
  return Nfa{b.build(), remap[a.initial], std::move(finals)};
}

// ---- compile ---------------------------------------------------------------

namespace {

// Thompson construction with epsilon transitions; one entry and one exit.
struct Frag {
  State entry;
  State exit;
};

Frag thompson(const Regex& r, GraphBuilder& b) {
  switch (r->kind) {
    case RegexKind::kEmpty: {
      return {b.add_state(), b.add_state()};
    }
    case RegexKind::kEpsilon: {
      State s = b.add_state(), t = b.add_state();
      b.add_arc(s, kEpsilonSym, t);
      return {s, t};
    }
    case RegexKind::kLiteral: {
      State s = b.add_state(), t = b.add_state();
      b.add_arc(s, r->sym, t);
      return {s, t};
    }
    case RegexKind::kUnion: {
      Frag l = thompson(r->left, b);
      Frag rr = thompson(r->right, b);
      State s = b.add_state(), t = b.add_state();
      b.add_arc(s, kEpsilonSym, l.entry);
      b.add_arc(s, kEpsilonSym, rr.entry);
      b.add_arc(l.exit, kEpsilonSym, t);
      b.add_arc(rr.exit, kEpsilonSym, t);
      return {s, t};
    }
    case RegexKind::kConcat: {
      Frag l = thompson(r->left, b);
      Frag rr = thompson(r->right, b);
      b.add_arc(l.exit, kEpsilonSym, rr.entry);
      return {l.entry, rr.exit};
    }
    case RegexKind::kStar: {
      Frag l = thompson(r->left, b);
      State s = b.add_state(), t = b.add_state();
      b.add_arc(s, kEpsilonSym, l.entry);
      b.add_arc(s, kEpsilonSym, t);
      b.add_arc(l.exit, kEpsilonSym, l.entry);
      b.add_arc(l.exit, kEpsilonSym, t);
      return {s, t};
    }
  }
  assert(false);
  return {0, 0};
}

void check_symbols(const Regex& r, const Alphabet& sigma) {
  for (Symbol s : regex_symbols(r)) {
    if (!sigma.contains(s)) {
      throw RegexError(0, "literal '" + word_to_string(Word(1, s)) + "' not in alphabet");
    }
  }
}

}  // namespace

namespace {

// quotient by the coarsest forward bisimulation (or the backward one on the
// reversed automaton); language-preserving, collapses Thompson bloat
Nfa quotient(const Nfa& a, bool forward) {
  const Graph& g = *a.graph;
  std::vector<uint32_t> cls(g.num_states());
  for (State q = 0; q < g.num_states(); ++q) {
    cls[q] = forward ? (a.is_final(q) ? 1 : 0) : (q == a.initial ? 1 : 0);
  }
  while (true) {
    std::map<std::pair<uint32_t, std::vector<std::pair<Symbol, uint32_t>>>, uint32_t> next_ids;
    std::vector<uint32_t> next(g.num_states());
    for (State q = 0; q < g.num_states(); ++q) {
      std::vector<std::pair<Symbol, uint32_t>> sig;
      for (const Arc& arc : (forward ? g.out(q) : g.in(q))) sig.emplace_back(arc.sym, cls[arc.to]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto key = std::make_pair(cls[q], std::move(sig));
      auto [it, fresh] = next_ids.emplace(std::move(key), static_cast<uint32_t>(next_ids.size()));
      next[q] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  // renumber classes by first occurrence to keep numbering deterministic
  std::vector<uint32_t> order(g.num_states(), UINT32_MAX);
  uint32_t classes = 0;
  for (State q = 0; q < g.num_states(); ++q) {
    if (order[cls[q]] == UINT32_MAX) order[cls[q]] = classes++;
  }
  if (classes == g.num_states()) return a;
  GraphBuilder b(classes);
  for (State q = 0; q < g.num_states(); ++q) {
    for (const Arc& arc : g.out(q)) b.add_arc(order[cls[q]], arc.sym, order[cls[arc.to]]);
  }
  std::vector<State> finals;
  for (State f : a.finals) finals.push_back(order[cls[f]]);
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  return Nfa{b.build(), order[cls[a.initial]], std::move(finals)};
}

}  // namespace

Nfa compile(const Regex& r, const Alphabet& alphabet) {
  check_symbols(r, alphabet);
  GraphBuilder b;
  Frag f = thompson(r, b);
  Nfa raw{b.build(), f.entry, {f.exit}};
  Nfa out = prune(remove_epsilon(raw));
  while (true) {
    uint32_t before = out.graph->num_states();
    out = quotient(quotient(out, true), false);
    if (out.graph->num_states() == before) break;
  }
  return out;
}

// ---- product ---------------------------------------------------------------

Nfa product(const Nfa& a, const Nfa& b) {
  assert(!a.graph->has_epsilon() && !b.graph->has_epsilon());
  const Graph& ga = *a.graph;
  const Graph& gb = *b.graph;
  std::unordered_map<uint64_t, State> index;
  auto key = [](State x, State y) { return (uint64_t(x) << 32) | y; };
  GraphBuilder out;
  std::vector<std::pair<State, State>> pairs;
  std::deque<std::pair<State, State>> queue;

  auto intern = [&](State x, State y) {
    auto [it, fresh] = index.emplace(key(x, y), static_cast<State>(pairs.size()));
    if (fresh) {
      out.add_state("(" + ga.label(x) + "," + gb.label(y) + ")");
      pairs.emplace_back(x, y);
      queue.emplace_back(x, y);
    }
    return it->second;
  };

  State init = intern(a.initial, b.initial);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    State from = index.at(key(x, y));
    for (const Arc& ax : ga.out(x)) {
      for (const Arc& ay : gb.out(y)) {
        if (ax.sym == ay.sym) out.add_arc(from, ax.sym, intern(ax.to, ay.to));
      }
    }
  }
  std::vector<State> finals;
  for (State i = 0; i < pairs.size(); ++i) {
    if (a.is_final(pairs[i].first) && b.is_final(pairs[i].second)) finals.push_back(i);
  }
  return Nfa{out.build(), init, std::move(finals)};
}

Nfa with_endpoints(GraphPtr g, State q, State q_prime) {
  if (q >= g->num_states() || q_prime >= g->num_states()) {
    throw std::out_of_range("with_endpoints: state index out of range");
  }
  return Nfa{std::move(g), q, {q_prime}};
}

// ---- membership ------------------------------------------------------------

static std::vector<State> step(const Graph& g, const std::vector<State>& from, Symbol s) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<State> next;
  for (State q : from) {
    for (const Arc& a : g.out(q)) {
      if (a.sym == s && !seen[a.to]) {
        seen[a.to] = true;
        next.push_back(a.to);
      }
    }
  }
  std::sort(next.begin(), next.end());
  return next;
}

bool accepts(const NfaView& a, const Word& w) {
  assert(!a.graph->has_epsilon());
  std::vector<State> cur{a.initial};
  for (Symbol s : w) {
    cur = step(*a.graph, cur, s);
    if (cur.empty()) return false;
  }
  for (State q : cur) {
    if (std::binary_search(a.finals.begin(), a.finals.end(), q)) return true;
  }
  return false;
}

bool accepts(const Nfa& a, const Word& w) { return accepts(view(a), w); }

bool replays(const Nfa& a, const Witness& w) {
  if (w.run.size() != w.word.size() + 1) return false;
  if (w.run.front() != a.initial || !a.is_final(w.run.back())) return false;
  for (size_t i = 0; i < w.word.size(); ++i) {
    if (!a.graph->has_arc(w.run[i], w.word[i], w.run[i + 1])) return false;
  }
  return true;
}

// ---- shortest witness ------------------------------------------------------

namespace {

struct TupleHash {
  size_t operator()(const std::vector<State>& v) const {
    size_t h = v.size();
    for (State q : v) h ^= q + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

std::optional<ProductWitness> shortest_witness(std::span<const NfaView> automata,
                                               const Alphabet& alphabet, Budget* budget) {
  const size_t n = automata.size();
  auto is_accepting = [&](const std::vector<State>& tuple) {
    for (size_t i = 0; i < n; ++i) {
      if (!std::binary_search(automata[i].finals.begin(), automata[i].finals.end(), tuple[i]))
        return false;
    }
    return true;
  };

  std::vector<State> init(n);
  for (size_t i = 0; i < n; ++i) {
    assert(!automata[i].graph->has_epsilon());
    init[i] = automata[i].initial;
  }

  // BFS in (length, lex) order; the first accepting tuple found corresponds to
  // the minimal witness. parent[i] = (predecessor id, symbol).
  std::unordered_map<std::vector<State>, State, TupleHash> ids;
  std::vector<std::vector<State>> tuples;
  std::vector<std::pair<State, Symbol>> parent;
  std::deque<State> queue;

  // one search materializing tens of millions of tuples would exhaust memory
  // before any global budget reacts
  constexpr size_t kPerSearchCap = 5'000'000;
  auto intern = [&](std::vector<State> t, State par, Symbol via) -> std::pair<State, bool> {
    auto [it, fresh] = ids.emplace(std::move(t), static_cast<State>(tuples.size()));
    if (fresh) {
      if (budget) budget->charge_states(1);
      if (tuples.size() >= kPerSearchCap) {
        throw BudgetExceeded("single intersection search exceeded the state cap");
      }
      tuples.push_back(it->first);
      parent.emplace_back(par, via);
      queue.push_back(it->second);
    }
    return {it->second, fresh};
  };

  auto emit = [&](State id) {
    ProductWitness w;
    std::vector<State> chain;
    for (State cur = id; cur != kNoState; cur = parent[cur].first) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    for (size_t i = 0; i < chain.size(); ++i) {
      w.run.push_back(tuples[chain[i]]);
      if (i > 0) w.word.push_back(parent[chain[i]].second);
    }
    return w;
  };

  auto [root, root_fresh] = intern(std::move(init), kNoState, 0);
  (void)root_fresh;
  if (is_accepting(tuples[root])) return emit(root);
  if (n == 0) return std::nullopt;  // nonempty words over the universal language not needed

  uint64_t ticks = 0;
  while (!queue.empty()) {
    State id = queue.front();
    queue.pop_front();
    if (budget && (++ticks & 0xff) == 0) budget->check_time();
    std::vector<State> cur = tuples[id];
    for (Symbol s : alphabet) {
      // per-component successor sets under s
      std::vector<std::vector<State>> succ(n);
      bool dead = false;
      for (size_t i = 0; i < n; ++i) {
        for (const Arc& a : automata[i].graph->out(cur[i])) {
          if (a.sym == s) succ[i].push_back(a.to);
        }
        std::sort(succ[i].begin(), succ[i].end());
        succ[i].erase(std::unique(succ[i].begin(), succ[i].end()), succ[i].end());
        if (succ[i].empty()) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      // cross product in lexicographic order, so that within one BFS level
      // words come out lexicographically smallest-first
      std::vector<size_t> idx(n, 0);
      while (true) {
        std::vector<State> next(n);
        for (size_t i = 0; i < n; ++i) next[i] = succ[i][idx[i]];
        auto [nid, fresh] = intern(std::move(next), id, s);
        if (fresh && is_accepting(tuples[nid])) return emit(nid);
        size_t k = n;
        while (k > 0 && ++idx[k - 1] == succ[k - 1].size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  return std::nullopt;
}

std::optional<ProductWitness> shortest_witness(std::span<const Nfa> automata,
                                               const Alphabet& alphabet, Budget* budget) {
  std::vector<NfaView> views;
  views.reserve(automata.size());
  for (const Nfa& a : automata) views.push_back(view(a));
  return shortest_witness(std::span<const NfaView>(views), alphabet, budget);
}

// ---- DOT export ------------------------------------------------------------

static std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

static std::string sym_str(Symbol s) {
  if (s == kEpsilonSym) return "eps";
  return word_to_string(Word(1, s));
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::string out = "digraph \"" + dot_escape(name) + "\" {\n  rankdir=LR;\n";
  for (State q = 0; q < g.num_states(); ++q) {
    out += "  " + std::to_string(q) + " [label=\"" + dot_escape(g.label(q)) + "\"];\n";
  }
  for (State q = 0; q < g.num_states(); ++q) {
    for (const Arc& a : g.out(q)) {
      out += "  " + std::to_string(q) + " -> " + std::to_string(a.to) + " [label=\"" +
             dot_escape(sym_str(a.sym)) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string to_dot(const Nfa& a, const std::string& name) {
  const Graph& g = *a.graph;
  std::string out = "digraph \"" + dot_escape(name) + "\" {\n  rankdir=LR;\n";
  out += "  __init [shape=point];\n";
  for (State q = 0; q < g.num_states(); ++q) {
    out += "  " + std::to_string(q) + " [label=\"" + dot_escape(g.label(q)) + "\" shape=" +
           (a.is_final(q) ? "doublecircle" : "circle") + "];\n";
  }
  out += "  __init -> " + std::to_string(a.initial) + ";\n";
  for (State q = 0; q < g.num_states(); ++q) {
    for (const Arc& arc : g.out(q)) {
      out += "  " + std::to_string(q) + " -> " + std::to_string(arc.to) + " [label=\"" +
             dot_escape(sym_str(arc.sym)) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace resat
