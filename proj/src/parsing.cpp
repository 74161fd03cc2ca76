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

#include "resat/parsing.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace resat {

// ---- window profiles ---------------------------------------------------------

std::string WindowProfile::display() const {
  std::string s;
  for (uint32_t j = 0; j < len; ++j) s += get(j) ? "T" : "_";
  return s;
}

WindowProfile profile_step(const WindowProfile& w, Symbol a, const Word& u) {
  WindowProfile next{0, w.len};
  if (a == u[0]) next.bits |= 1u;
  for (uint32_t j = 1; j < w.len; ++j) {
    if (w.get(j - 1) && a == u[j]) next.bits |= (1u << j);
  }
  return next;
}

std::vector<WindowProfile> window_profiles(const Word& u, const Alphabet& sigma) {
  assert(u.size() >= 2);
  uint32_t len = static_cast<uint32_t>(u.size()) - 1;
  // profiles of position 1 of single-letter strings seed the closure; every
  // later position's profile is the step of its predecessor's
  std::vector<WindowProfile> todo, seen;
  auto visit = [&](const WindowProfile& w) {
    if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
      seen.push_back(w);
      todo.push_back(w);
    }
  };
  WindowProfile fresh{0, len};
  for (Symbol a : sigma) visit(profile_step(fresh, a, u));
  while (!todo.empty()) {
    WindowProfile w = todo.back();
    todo.pop_back();
    for (Symbol a : sigma) visit(profile_step(w, a, u));
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

// ---- A_u ----------------------------------------------------------------------

namespace {
struct ConstKey {
  ConstParser::Kind kind;
  uint32_t verify_pos;
  WindowProfile prof;
  friend auto operator<=>(const ConstKey&, const ConstKey&) = default;
};
}  // namespace

ConstParser build_parsing_automaton_const(const Word& u, const Alphabet& sigma) {
  assert(u.size() >= 2);
  if (u.size() > 32) throw BudgetExceeded("constant pattern longer than 32 symbols");
  const uint32_t k = static_cast<uint32_t>(u.size());
  ConstParser p;
  p.pattern = u;

  GraphBuilder b;
  using Key = ConstKey;
  std::map<Key, State> index;
  std::vector<Key> todo;

  auto intern = [&](const Key& key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::string label;
    switch (key.kind) {
      case ConstParser::Kind::kQ0: label = "q0"; break;
      case ConstParser::Kind::kSearch: label = "s:" + key.prof.display(); break;
      case ConstParser::Kind::kVerify:
        label = "v" + std::to_string(key.verify_pos) + ":" + key.prof.display();
        break;
    }
    State q = b.add_state(label);
    index.emplace(key, q);
    p.kind.push_back(key.kind);
    p.verify_pos.push_back(key.verify_pos);
    p.profile.push_back(key.prof);
    todo.push_back(key);
    return q;
  };

  Key q0_key{ConstParser::Kind::kQ0, 0, WindowProfile{0, k - 1}};
  State q0 = intern(q0_key);
  assert(q0 == 0);
  (void)q0;

  while (!todo.empty()) {
    Key cur = todo.back();
    todo.pop_back();
    State from = index.at(cur);
    for (Symbol a : sigma) {
      switch (cur.kind) {
        case ConstParser::Kind::kQ0:
        case ConstParser::Kind::kSearch: {
          // the window of q0 is all-bottom, so the same update rule covers both
          WindowProfile next = profile_step(cur.prof, a, u);
          bool guard = !cur.prof.get(k - 2) || a != u[k - 1];
          if (cur.kind == ConstParser::Kind::kQ0) guard = true;
          // from q0 a completed occurrence is impossible (|u| >= 2), so the
          // guard is vacuous there
          if (guard) {
            b.add_arc(from, a, intern({ConstParser::Kind::kSearch, 0, next}));
            if (a == u[0]) {
              b.add_arc(from, a, intern({ConstParser::Kind::kVerify, 1, next}));
            }
          }
          break;
        }
        case ConstParser::Kind::kVerify: {
          uint32_t i = cur.verify_pos + 1;  // next verify depth
          if (i <= k - 1) {
            // guard: the window still tracks u[0..i-2] and the letter extends it
            bool ok = cur.prof.get(i - 2) && a == u[i - 1];
            bool guard = !cur.prof.get(k - 2) || a != u[k - 1];
            if (ok && guard) {
              WindowProfile next = profile_step(cur.prof, a, u);
              b.add_arc(from, a, intern({ConstParser::Kind::kVerify, i, next}));
            }
          }
          if (cur.verify_pos == k - 1 && cur.prof.get(k - 2) && a == u[k - 1]) {
            b.add_arc(from, a, intern(q0_key));
          }
          break;
        }
      }
    }
  }

  GraphPtr g = b.build();
  std::vector<State> finals;
  for (State q = 0; q < g->num_states(); ++q) {
    if (p.kind[q] != ConstParser::Kind::kVerify) finals.push_back(q);
  }
  std::sort(finals.begin(), finals.end());
  p.nfa = Nfa{g, 0, std::move(finals)};

  // corridors: walk the deterministic verify chain from each non-verify state
  for (State entry = 0; entry < g->num_states(); ++entry) {
    if (p.kind[entry] == ConstParser::Kind::kVerify) continue;
    ConstParser::Corridor c{entry, {}};
    State cur = entry;
    bool complete = true;
    for (uint32_t i = 1; i <= k - 1; ++i) {
      State next = kNoState;
      for (const Arc& arc : g->out(cur)) {
        if (arc.sym == u[i - 1] && p.kind[arc.to] == ConstParser::Kind::kVerify &&
            p.verify_pos[arc.to] == i) {
          next = arc.to;
          break;
        }
      }
      if (next == kNoState) {
        complete = false;
        break;
      }
      c.chain.push_back(next);
      cur = next;
    }
    // the exit transition to q0 must exist in A_u as well
    if (complete && g->has_arc(cur, u[k - 1], 0)) p.corridors.push_back(std::move(c));
  }
  return p;
}

// ---- red ----------------------------------------------------------------------

std::vector<Bits> red(std::vector<Bits> sets) {
  std::vector<Bits> out;
  Bits seen = 0;
  for (Bits s : sets) {
    Bits fresh = s & ~seen;
    if (fresh == 0) continue;  // empty or absorbed by earlier sets
    out.push_back(fresh);
    seen |= fresh;
  }
  return out;
}

std::vector<std::vector<State>> red(const std::vector<std::vector<State>>& sets) {
  std::vector<Bits> packed;
  for (const auto& s : sets) {
    Bits b = 0;
    for (State q : s) {
      assert(q < 64);
      b |= Bits{1} << q;
    }
    packed.push_back(b);
  }
  std::vector<std::vector<State>> out;
  for (Bits b : red(std::move(packed))) {
    std::vector<State> s;
    for (State q = 0; q < 64; ++q) {
      if ((b >> q) & 1) s.push_back(q);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---- pattern automaton ---------------------------------------------------------

Bits PatternAutomaton::step(Bits set, Symbol a) const {
  Bits out = 0;
  const Graph& g = *nfa.graph;
  for (State q = 0; q < g.num_states(); ++q) {
    if (!((set >> q) & 1)) continue;
    for (const Arc& arc : g.out(q)) {
      if (arc.sym == a) out |= Bits{1} << arc.to;
    }
  }
  return out;
}

PatternAutomaton normalize_pattern_automaton(const Nfa& a0) {
  assert(!a0.graph->has_epsilon());
  const Graph& g = *a0.graph;
  bool initial_has_in = !g.in(a0.initial).empty();

  Nfa n = a0;
  if (initial_has_in) {
    GraphBuilder b(g.num_states());
    for (State q = 0; q < g.num_states(); ++q) {
      b.set_label(q, g.label(q));
      for (const Arc& arc : g.out(q)) b.add_arc(q, arc.sym, arc.to);
    }
    State fresh = b.add_state("i");
    for (const Arc& arc : g.out(a0.initial)) b.add_arc(fresh, arc.sym, arc.to);
    std::vector<State> finals = a0.finals;
    if (a0.is_final(a0.initial)) {
      finals.push_back(fresh);
      std::sort(finals.begin(), finals.end());
    }
    n = Nfa{b.build(), fresh, std::move(finals)};
  }
  if (n.graph->num_states() > 64) {
    throw BudgetExceeded("pattern automaton exceeds 64 states");
  }
  PatternAutomaton out;
  out.nfa = std::move(n);
  for (State f : out.nfa.finals) out.finals |= Bits{1} << f;
  return out;
}

// ---- A_e0 ----------------------------------------------------------------------

namespace {

std::string bits_display(Bits b) {
  std::string s = "{";
  bool first = true;
  for (State q = 0; q < 64; ++q) {
    if ((b >> q) & 1) {
      if (!first) s += ",";
      s += std::to_string(q);
      first = false;
    }
  }
  return s + "}";
}

struct RegexKey {
  RegexParser::Mode mode;
  std::vector<Bits> rho;  // searchleft, without the trailing {q00}
  Bits thread;
  Bits forbidden;
  friend auto operator<=>(const RegexKey&, const RegexKey&) = default;
};

std::string regex_state_label(const RegexKey& k) {
  std::string s;
  if (k.mode == RegexParser::Mode::kSearchLeft) {
    for (Bits b : k.rho) s += bits_display(b);
    s += "{i}|sl|";
  } else {
    s = bits_display(k.thread) + "|lg|";
  }
  return s + bits_display(k.forbidden);
}

}  // namespace

RegexParser build_parsing_automaton_regex(const Nfa& a0_in, const Alphabet& sigma,
                                          Budget* budget) {
  RegexParser p;
  p.pattern = normalize_pattern_automaton(a0_in);
  const PatternAutomaton& pa = p.pattern;
  const Bits f0 = pa.finals;
  const State q00 = pa.nfa.initial;
  const Bits init_thread = Bits{1} << q00;
  assert(!(f0 & init_thread) && "pattern must not accept the empty word");

  GraphBuilder b;
  std::map<RegexKey, State> index;
  std::vector<RegexKey> todo;

  auto intern = [&](RegexKey key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (budget) budget->charge_states(1);
    State q = b.add_state(regex_state_label(key));
    index.emplace(key, q);
    RegexParser::StateInfo si;
    si.mode = key.mode;
    si.rho = key.rho;
    si.thread = key.thread;
    si.forbidden = key.forbidden;
    p.info.push_back(std::move(si));
    todo.push_back(std::move(key));
    return q;
  };

  auto add = [&](State from, Symbol a, const RegexKey& to, RegexParserFamily fam) {
    State t = intern(to);
    b.add_arc(from, a, t);
    p.tagged.push_back({from, a, t, fam});
  };

  RegexKey init{RegexParser::Mode::kSearchLeft, {}, 0, 0};
  intern(init);

  while (!todo.empty()) {
    RegexKey cur = todo.back();
    todo.pop_back();
    State from = index.at(cur);
    if (budget) budget->check_time();
    for (Symbol a : sigma) {
      if (cur.mode == RegexParser::Mode::kSearchLeft) {
        Bits adv_forbidden = pa.step(cur.forbidden, a);
        Bits adv_new = pa.step(init_thread, a);
        std::vector<Bits> adv_rho;
        Bits adv_union = 0;
        for (Bits s : cur.rho) {
          Bits t = pa.step(s, a);
          adv_rho.push_back(t);
          adv_union |= t;
        }
        bool forb_ok = (adv_forbidden & f0) == 0;
        bool rho_ok = (adv_union & f0) == 0;

        // continue searchleft: no thread may reach a final state here
        if (forb_ok && rho_ok && (adv_new & f0) == 0) {
          std::vector<Bits> with_new = adv_rho;
          with_new.push_back(adv_new);
          add(from, a,
              {RegexParser::Mode::kSearchLeft, red(std::move(with_new)), 0, adv_forbidden},
              RegexParserFamily::kContinueSearchLeft);
        }
        // start searchlong: the freshest thread is the match, older threads
        // become forbidden
        if (forb_ok && rho_ok && (adv_new & ~(adv_forbidden | adv_union)) != 0) {
          add(from, a,
              {RegexParser::Mode::kSearchLong, {}, adv_new, adv_forbidden | adv_union},
              RegexParserFamily::kStartSearchLong);
        }
        // the letter alone is the match
        if (forb_ok && rho_ok && (adv_new & f0) != 0) {
          add(from, a,
              {RegexParser::Mode::kSearchLeft, {}, 0, adv_forbidden | adv_union | adv_new},
              RegexParserFamily::kLetterMatch);
        }
      } else {
        Bits adv_thread = pa.step(cur.thread, a);
        Bits adv_forbidden = pa.step(cur.forbidden, a);
        if ((adv_forbidden & f0) != 0) continue;
        // continue searchlong
        if ((adv_thread & ~adv_forbidden) != 0) {
          add(from, a, {RegexParser::Mode::kSearchLong, {}, adv_thread, adv_forbidden},
              RegexParserFamily::kContinueSearchLong);
        }
        // end searchlong: the match ends at this letter
        if ((adv_thread & f0) != 0) {
          add(from, a,
              {RegexParser::Mode::kSearchLeft, {}, 0, adv_forbidden | adv_thread},
              RegexParserFamily::kEndSearchLong);
        }
      }
    }
  }

  GraphPtr g = b.build();
  std::vector<State> finals;
  for (State q = 0; q < g->num_states(); ++q) {
    if (p.info[q].mode == RegexParser::Mode::kSearchLeft) finals.push_back(q);
  }
  p.nfa = Nfa{g, 0, std::move(finals)};
  return p;
}

// ---- nullable variant ------------------------------------------------------------

namespace {

struct NullKey {
  NullableParser::Mode mode;
  Bits thread;
  Bits forbidden;
  friend auto operator<=>(const NullKey&, const NullKey&) = default;
};

std::string null_state_label(const NullKey& k) {
  const char* m = k.mode == NullableParser::Mode::kPreMatch    ? "pre"
                  : k.mode == NullableParser::Mode::kInMatch   ? "in"
                                                               : "post";
  std::string s = m;
  if (k.mode == NullableParser::Mode::kInMatch) s += bits_display(k.thread);
  return s + "|" + bits_display(k.forbidden);
}

}  // namespace

NullableParser build_parsing_automaton_nullable(const Nfa& a0_in, const Alphabet& sigma,
                                                Budget* budget) {
  NullableParser p;
  p.pattern = normalize_pattern_automaton(a0_in);
  const PatternAutomaton& pa = p.pattern;
  const Bits f0 = pa.finals;
  const Bits init_thread = Bits{1} << pa.nfa.initial;

  GraphBuilder b;
  std::map<NullKey, State> index;
  std::vector<NullKey> todo;

  auto intern = [&](const NullKey& key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (budget) budget->charge_states(1);
    State q = b.add_state(null_state_label(key));
    index.emplace(key, q);
    p.info.push_back({key.mode, key.thread, key.forbidden});
    todo.push_back(key);
    return q;
  };

  auto add = [&](State from, Symbol a, const NullKey& to, RegexParserFamily fam) {
    State t = intern(to);
    b.add_arc(from, a, t);
    p.tagged.push_back({from, a, t, fam});
  };

  intern({NullableParser::Mode::kPreMatch, 0, 0});

  while (!todo.empty()) {
    NullKey cur = todo.back();
    todo.pop_back();
    State from = index.at(cur);
    if (budget) budget->check_time();
    for (Symbol a : sigma) {
      Bits adv_forbidden = pa.step(cur.forbidden, a);
      if ((adv_forbidden & f0) != 0) continue;
      switch (cur.mode) {
        case NullableParser::Mode::kPreMatch: {
          Bits adv_new = pa.step(init_thread, a);
          if ((adv_new & f0) == 0) {
            // the empty match: no nonempty prefix may ever match, so the
            // position's thread joins the forbidden set; the letter passes
            add(from, a,
                {NullableParser::Mode::kPreMatch, 0, adv_forbidden | adv_new},
                RegexParserFamily::kEpsilonMatch);
          } else {
            // the letter alone is a (complete) nonempty match
            add(from, a,
                {NullableParser::Mode::kPostMatch, 0, adv_forbidden | adv_new},
                RegexParserFamily::kLetterMatch);
          }
          // start a match of length >= 2
          if ((adv_new & ~adv_forbidden) != 0) {
            add(from, a, {NullableParser::Mode::kInMatch, adv_new, adv_forbidden},
                RegexParserFamily::kStartMatch);
          }
          break;
        }
        case NullableParser::Mode::kInMatch: {
          Bits adv_thread = pa.step(cur.thread, a);
          if ((adv_thread & ~adv_forbidden) != 0) {
            add(from, a, {NullableParser::Mode::kInMatch, adv_thread, adv_forbidden},
                RegexParserFamily::kContinueSearchLong);
          }
          if ((adv_thread & f0) != 0) {
            add(from, a,
                {NullableParser::Mode::kPostMatch, 0, adv_forbidden | adv_thread},
                RegexParserFamily::kEndSearchLong);
          }
          break;
        }
        case NullableParser::Mode::kPostMatch: {
          add(from, a, {NullableParser::Mode::kPreMatch, 0, adv_forbidden},
              RegexParserFamily::kContinueSearchLeft);
          break;
        }
      }
    }
  }

  GraphPtr g = b.build();
  std::vector<State> finals;
  for (State q = 0; q < g->num_states(); ++q) {
    if (p.info[q].mode != NullableParser::Mode::kInMatch) finals.push_back(q);
  }
  p.nfa = Nfa{g, 0, std::move(finals)};
  return p;
}

// ---- run analysis -----------------------------------------------------------------

uint64_t count_accepting_runs(const Nfa& a, const Word& w) {
  const Graph& g = *a.graph;
  std::vector<uint64_t> cur(g.num_states(), 0);
  cur[a.initial] = 1;
  for (Symbol s : w) {
    std::vector<uint64_t> next(g.num_states(), 0);
    for (State q = 0; q < g.num_states(); ++q) {
      if (cur[q] == 0) continue;
      for (const Arc& arc : g.out(q)) {
        if (arc.sym == s) next[arc.to] += cur[q];
      }
    }
    cur = std::move(next);
  }
  uint64_t total = 0;
  for (State f : a.finals) total += cur[f];
  return total;
}

std::optional<std::vector<State>> unique_accepting_run(const Nfa& a, const Word& w) {
  const Graph& g = *a.graph;
  size_t n = w.size();
  std::vector<std::vector<uint64_t>> fwd(n + 1, std::vector<uint64_t>(g.num_states(), 0));
  fwd[0][a.initial] = 1;
  for (size_t i = 0; i < n; ++i) {
    for (State q = 0; q < g.num_states(); ++q) {
      if (fwd[i][q] == 0) continue;
      for (const Arc& arc : g.out(q)) {
        if (arc.sym == w[i]) fwd[i + 1][arc.to] += fwd[i][q];
      }
    }
  }
  std::vector<std::vector<uint64_t>> bwd(n + 1, std::vector<uint64_t>(g.num_states(), 0));
  for (State f : a.finals) bwd[n][f] = 1;
  for (size_t i = n; i-- > 0;) {
    for (State q = 0; q < g.num_states(); ++q) {
      for (const Arc& arc : g.out(q)) {
        if (arc.sym == w[i]) bwd[i][q] += bwd[i + 1][arc.to];
      }
    }
  }
  uint64_t total = 0;
  for (State f : a.finals) total += fwd[n][f];
  if (total != 1) return std::nullopt;
  std::vector<State> run(n + 1, kNoState);
  for (size_t i = 0; i <= n; ++i) {
    for (State q = 0; q < g.num_states(); ++q) {
      if (fwd[i][q] * bwd[i][q] == 1) {
        run[i] = q;
        break;
      }
    }
    assert(run[i] != kNoState);
  }
  return run;
}

std::vector<MatchSpan> spans_from_const_run(const ConstParser& p, const std::vector<State>& run) {
  std::vector<MatchSpan> spans;
  size_t k = p.pattern.size();
  for (size_t i = 1; i < run.size(); ++i) {
    if (run[i] == p.q0()) spans.push_back({i - k, k});
  }
  return spans;
}

std::vector<MatchSpan> spans_from_regex_run(const RegexParser& p, const std::vector<State>& run,
                                            const Word& w) {
  std::vector<MatchSpan> spans;
  size_t start = 0;
  for (size_t i = 1; i < run.size(); ++i) {
    const auto& prev = p.info[run[i - 1]];
    const auto& cur = p.info[run[i]];
    if (prev.mode == RegexParser::Mode::kSearchLeft && cur.mode == RegexParser::Mode::kSearchLong) {
      start = i - 1;  // first match letter is w[i-1]
    } else if (prev.mode == RegexParser::Mode::kSearchLong &&
               cur.mode == RegexParser::Mode::kSearchLeft) {
      spans.push_back({start, i - start});
    } else if (prev.mode == RegexParser::Mode::kSearchLeft &&
               cur.mode == RegexParser::Mode::kSearchLeft) {
      // continue-searchleft and letter-match both stay in searchleft; they
      // are told apart by whether the fresh thread reaches a final state
      Bits adv_new = p.pattern.step(Bits{1} << p.pattern.nfa.initial, w[i - 1]);
      if ((adv_new & p.pattern.finals) != 0) spans.push_back({i - 1, 1});
    }
  }
  return spans;
}

std::vector<MatchSpan> spans_from_nullable_run(const NullableParser& p,
                                               const std::vector<State>& run, const Word& w) {
  (void)w;
  std::vector<MatchSpan> spans;
  size_t start = 0;
  for (size_t i = 1; i < run.size(); ++i) {
    const auto& prev = p.info[run[i - 1]];
    const auto& cur = p.info[run[i]];
    using M = NullableParser::Mode;
    if (prev.mode == M::kPreMatch && cur.mode == M::kPreMatch) {
      spans.push_back({i - 1, 0});  // empty match, then the letter passes
    } else if (prev.mode == M::kPreMatch && cur.mode == M::kInMatch) {
      start = i - 1;
    } else if (prev.mode == M::kPreMatch && cur.mode == M::kPostMatch) {
      spans.push_back({i - 1, 1});
    } else if (prev.mode == M::kInMatch && cur.mode == M::kPostMatch) {
      spans.push_back({start, i - start});
    }
  }
  // the trailing match is empty exactly when the run ends pre-match
  if (!run.empty() && p.info[run.back()].mode == NullableParser::Mode::kPreMatch) {
    spans.push_back({run.size() - 1, 0});
  }
  return spans;
}

}  // namespace resat
