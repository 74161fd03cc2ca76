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

#include "resat/elimination.hpp"

#include <algorithm>
#include <cassert>
#include <random>

#include "resat/oracle.hpp"

namespace resat {

std::vector<NfaView> SuccinctConstraint::views() const {
  std::vector<NfaView> out;
  out.reserve(atoms.size());
  for (const ConstraintAtom& a : atoms) out.push_back({graph.get(), a.start, a.ends});
  return out;
}

std::vector<State> SuccinctConstraint::atom_starts() const {
  std::vector<State> out;
  for (const ConstraintAtom& a : atoms) out.push_back(a.start);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<State> SuccinctConstraint::atom_ends_union() const {
  std::vector<State> out;
  for (const ConstraintAtom& a : atoms) out.insert(out.end(), a.ends.begin(), a.ends.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t ConstraintEnv::total_constraints() const {
  size_t n = 0;
  for (const auto& v : env) n += v.size();
  return n;
}

std::string GuessTrace::to_text() const {
  std::string out;
  for (const Event& e : events) {
    if (e.kind == Event::Kind::kFinalChoice) {
      out += "final membership=" + std::to_string(e.index) + " state=" +
             std::to_string(e.final_state) + "\n";
    } else {
      out += "tz definition=" + std::to_string(e.index) + " constraint=" +
             std::to_string(e.constraint_idx) + " pairs={";
      for (size_t i = 0; i < e.pairs.size(); ++i) {
        if (i) out += ",";
        out += "(" + std::to_string(e.pairs[i].from) + "," + std::to_string(e.pairs[i].to) + ")";
      }
      out += "}\n";
    }
  }
  return out;
}

// ---- pattern preparation -----------------------------------------------------

namespace {

// Differential gate for the nullable construction: its parse must reproduce
// replace_all on a batch of random subjects before the automaton is trusted.
void validate_nullable_parser(const NullableParser& parser, const Regex& re,
                              const Alphabet& sigma, uint32_t seed) {
  std::mt19937 rng(0x9E3779B9u ^ seed);
  const Word marker(1, static_cast<Symbol>(0xE0FF));
  CompiledPattern pat = CompiledPattern::make(re);
  for (int iter = 0; iter < 64; ++iter) {
    size_t len = rng() % 9;
    Word subject;
    for (size_t i = 0; i < len && !sigma.empty(); ++i) {
      subject.push_back(sigma.symbols()[rng() % sigma.size()]);
    }
    if (count_accepting_runs(parser.nfa, subject) != 1) {
      throw std::logic_error("nullable parser: accepting run not unique");
    }
    auto run = unique_accepting_run(parser.nfa, subject);
    auto spans = spans_from_nullable_run(parser, *run, subject);
    Word rebuilt;
    size_t pos = 0;
    for (const MatchSpan& s : spans) {
      rebuilt += subject.substr(pos, s.start - pos);
      rebuilt += marker;
      pos = s.start + s.length;
    }
    rebuilt += subject.substr(pos);
    if (rebuilt != replace_all(subject, pat, marker)) {
      throw std::logic_error("nullable parser: parse disagrees with the evaluator");
    }
  }
}

}  // namespace

PreparedPattern prepare_pattern(const Pattern& p, const Alphabet& sigma, Budget* budget,
                                uint32_t seed) {
  assert(p.kind != Pattern::Kind::kVar);
  PreparedPattern out;
  std::optional<Word> word;
  if (p.kind == Pattern::Kind::kConst) {
    word = p.text;
    out.re = re::word(p.text);
  } else {
    word = literal_word(p.re);
    out.re = p.re;
  }
  if (word) {
    if (word->empty()) {
      out.route = PatternRoute::kEpsilonOnly;
    } else if (word->size() == 1) {
      out.route = PatternRoute::kSingleLetter;
      out.letter = (*word)[0];
    } else {
      out.route = PatternRoute::kConstWord;
      out.word = *word;
      out.const_parser =
          std::make_shared<const ConstParser>(build_parsing_automaton_const(*word, sigma));
    }
    return out;
  }

  Nfa a0 = compile(p.re, sigma);
  bool nullable = epsilon_member(p.re);
  if (nullable && a0.graph->num_arcs() == 0) {
    out.route = PatternRoute::kEpsilonOnly;
    return out;
  }
  if (nullable) {
    out.route = PatternRoute::kRegexNullable;
    auto parser = std::make_shared<NullableParser>(
        build_parsing_automaton_nullable(a0, sigma, budget));
    validate_nullable_parser(*parser, p.re, sigma, seed);
    out.nullable_parser = std::move(parser);
  } else {
    out.route = PatternRoute::kRegex;
    out.regex_parser =
        std::make_shared<const RegexParser>(build_parsing_automaton_regex(a0, sigma, budget));
  }
  return out;
}

// ---- direct constructions ------------------------------------------------------

GraphPtr build_B_single(const GraphPtr& t, Symbol a, std::span<const StatePair> tz) {
  GraphBuilder b(t->num_states());
  for (State q = 0; q < t->num_states(); ++q) {
    b.set_label(q, t->label(q));
    for (const Arc& arc : t->out(q)) {
      if (arc.sym != a) b.add_arc(q, arc.sym, arc.to);
    }
  }
  for (const StatePair& p : tz) b.add_arc(p.from, a, p.to);
  return b.build();
}

RewriteResult build_B_epsilon(const GraphPtr& t, std::span<const StatePair> tz) {
  // composite arcs: an insertion jump (q -> q') followed by one subject
  // letter; acceptance lands on the source of the trailing jump
  GraphBuilder b(t->num_states());
  for (State q = 0; q < t->num_states(); ++q) b.set_label(q, t->label(q));
  for (const StatePair& p : tz) {
    for (const Arc& arc : t->out(p.to)) b.add_arc(p.from, arc.sym, arc.to);
  }
  RewriteResult r;
  r.graph = b.build();
  r.start_of.resize(t->num_states());
  r.ends_of.resize(t->num_states());
  for (State q = 0; q < t->num_states(); ++q) r.start_of[q] = q;
  for (const StatePair& p : tz) r.ends_of[p.to].push_back(p.from);
  for (auto& e : r.ends_of) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return r;
}

// ---- templates ------------------------------------------------------------------

std::shared_ptr<const RewriteTemplate> RewriteTemplate::make(GraphPtr t,
                                                             const PreparedPattern& pat,
                                                             Budget* budget) {
  auto tpl = std::shared_ptr<RewriteTemplate>(new RewriteTemplate());
  tpl->subject_ = std::move(t);
  tpl->route_ = pat.route;
  const Graph& g = *tpl->subject_;

  if (pat.route == PatternRoute::kSingleLetter || pat.route == PatternRoute::kEpsilonOnly) {
    tpl->direct_ = true;
    tpl->letter_ = pat.letter;
    return tpl;
  }

  const Nfa* pa_nfa = nullptr;
  if (pat.route == PatternRoute::kConstWord) {
    pa_nfa = &pat.const_parser->nfa;
  } else if (pat.route == PatternRoute::kRegex) {
    pa_nfa = &pat.regex_parser->nfa;
  } else {
    pa_nfa = &pat.nullable_parser->nfa;
  }
  const Graph& pg = *pa_nfa->graph;
  tpl->pa_states_ = pg.num_states();
  tpl->init_col_ = pa_nfa->initial;
  if (budget) budget->charge_states(uint64_t(g.num_states()) * tpl->pa_states_);
  tpl->col_labels_.resize(tpl->pa_states_);
  for (uint32_t c = 0; c < tpl->pa_states_; ++c) tpl->col_labels_[c] = pg.label(c);

  auto both_move = [&](uint32_t from_col, Symbol sym, uint32_t to_col) {
    for (State q = 0; q < g.num_states(); ++q) {
      for (const Arc& arc : g.out(q)) {
        if (arc.sym == sym) {
          tpl->base_arcs_.emplace_back(tpl->index(q, from_col),
                                       Arc{sym, tpl->index(arc.to, to_col)});
        }
      }
    }
  };
  // arcs that track a pending insertion stay on one subject state; they are
  // only reachable for states that some guessed pair leaves, so they are
  // stamped out per guess
  auto frozen = [&](uint32_t from_col, Symbol sym, uint32_t to_col) {
    tpl->frozen_slots_.push_back({from_col, sym, to_col});
  };

  switch (pat.route) {
    case PatternRoute::kConstWord: {
      const ConstParser& cp = *pat.const_parser;
      const Word& u = cp.pattern;
      // kept transitions: both endpoints outside the verify corridors
      for (State p = 0; p < pg.num_states(); ++p) {
        if (cp.kind[p] == ConstParser::Kind::kVerify) continue;
        for (const Arc& arc : pg.out(p)) {
          if (cp.kind[arc.to] == ConstParser::Kind::kVerify) continue;
          both_move(p, arc.sym, arc.to);
        }
      }
      // insertion corridors, frozen on the subject side
      for (const ConstParser::Corridor& c : cp.corridors) {
        frozen(c.entry, u[0], c.chain[0]);
        for (size_t i = 1; i < c.chain.size(); ++i) frozen(c.chain[i - 1], u[i], c.chain[i]);
        tpl->column_slots_.push_back({c.chain.back(), u[u.size() - 1], 0});
      }
      for (State f : pa_nfa->finals) tpl->final_cols_.push_back(f);
      break;
    }
    case PatternRoute::kRegex: {
      const RegexParser& rp = *pat.regex_parser;
      for (const auto& tr : rp.tagged) {
        switch (tr.family) {
          case RegexParserFamily::kContinueSearchLeft:
            both_move(tr.from, tr.sym, tr.to);
            break;
          case RegexParserFamily::kStartSearchLong:
          case RegexParserFamily::kContinueSearchLong:
            frozen(tr.from, tr.sym, tr.to);
            break;
          case RegexParserFamily::kEndSearchLong:
          case RegexParserFamily::kLetterMatch:
            tpl->column_slots_.push_back({tr.from, tr.sym, tr.to});
            break;
          default:
            assert(false);
        }
      }
      for (State f : pa_nfa->finals) tpl->final_cols_.push_back(f);
      break;
    }
    case PatternRoute::kRegexNullable: {
      const NullableParser& np = *pat.nullable_parser;
      for (const auto& tr : np.tagged) {
        switch (tr.family) {
          case RegexParserFamily::kContinueSearchLeft:  // pass-through letter
            both_move(tr.from, tr.sym, tr.to);
            break;
          case RegexParserFamily::kStartMatch:
          case RegexParserFamily::kContinueSearchLong:
            frozen(tr.from, tr.sym, tr.to);
            break;
          case RegexParserFamily::kEndSearchLong:
          case RegexParserFamily::kLetterMatch:
            tpl->column_slots_.push_back({tr.from, tr.sym, tr.to});
            break;
          case RegexParserFamily::kEpsilonMatch:
            tpl->pair_slots_.push_back({tr.from, tr.sym, tr.to});
            break;
          default:
            assert(false);
        }
      }
      for (State q = 0; q < pg.num_states(); ++q) {
        if (np.info[q].mode == NullableParser::Mode::kPostMatch) tpl->final_cols_.push_back(q);
        if (np.info[q].mode == NullableParser::Mode::kPreMatch) tpl->pre_insert_cols_.push_back(q);
      }
      break;
    }
    default:
      break;
  }
  std::sort(tpl->base_arcs_.begin(), tpl->base_arcs_.end());
  tpl->base_arcs_.erase(std::unique(tpl->base_arcs_.begin(), tpl->base_arcs_.end()),
                        tpl->base_arcs_.end());
  return tpl;
}

RewriteResult RewriteTemplate::apply_raw(std::span<const StatePair> tz, Budget* budget) const {
  const Graph& g = *subject_;
  if (direct_) {
    if (route_ == PatternRoute::kEpsilonOnly) return build_B_epsilon(subject_, tz);
    RewriteResult r;
    r.graph = build_B_single(subject_, letter_, tz);
    r.start_of.resize(g.num_states());
    r.ends_of.resize(g.num_states());
    for (State q = 0; q < g.num_states(); ++q) {
      r.start_of[q] = q;
      r.ends_of[q] = {q};
    }
    return r;
  }

  uint32_t n = g.num_states() * pa_states_;
  if (budget) budget->charge_states(n);
  GraphBuilder b(n);
  for (State q = 0; q < g.num_states(); ++q) {
    for (uint32_t c = 0; c < pa_states_; ++c) {
      b.set_label(index(q, c), "(" + g.label(q) + "," + col_labels_[c] + ")");
    }
  }
  for (const auto& [from, arc] : base_arcs_) b.add_arc(from, arc.sym, arc.to);
  std::vector<State> dom;
  for (const StatePair& p : tz) dom.push_back(p.from);
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  for (State q : dom) {
    for (const Slot& s : frozen_slots_) b.add_arc(index(q, s.from_col), s.sym, index(q, s.to_col));
  }
  for (const StatePair& p : tz) {
    for (const Slot& s : column_slots_) {
      b.add_arc(index(p.from, s.from_col), s.sym, index(p.to, s.to_col));
    }
    for (const Slot& s : pair_slots_) {
      // insertion jump p.from -> p.to, then one subject letter from p.to
      for (const Arc& arc : g.out(p.to)) {
        if (arc.sym == s.sym) b.add_arc(index(p.from, s.from_col), s.sym, index(arc.to, s.to_col));
      }
    }
  }

  RewriteResult r;
  r.graph = b.build();
  r.start_of.resize(g.num_states());
  r.ends_of.resize(g.num_states());
  for (State q = 0; q < g.num_states(); ++q) {
    r.start_of[q] = index(q, init_col_);
    for (uint32_t c : final_cols_) r.ends_of[q].push_back(index(q, c));
  }
  if (!pre_insert_cols_.empty()) {
    // nullable: the trailing insertion's jump source accepts for the target
    for (const StatePair& p : tz) {
      for (uint32_t c : pre_insert_cols_) r.ends_of[p.to].push_back(index(p.from, c));
    }
  }
  for (auto& e : r.ends_of) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return r;
}

std::optional<SuccinctConstraint> lift_constraint(const SuccinctConstraint& c,
                                                  const RewriteResult& rewrite, bool prune,
                                                  Budget* budget) {
  const Graph& bg = *rewrite.graph;
  SuccinctConstraint lifted;
  lifted.graph = rewrite.graph;
  std::vector<State> starts, ends;
  for (const ConstraintAtom& a : c.atoms) {
    ConstraintAtom la;
    la.start = rewrite.start_of[a.start];
    if (la.start == kNoState) return std::nullopt;
    for (State e : a.ends) {
      const auto& lifted_ends = rewrite.ends_of[e];
      la.ends.insert(la.ends.end(), lifted_ends.begin(), lifted_ends.end());
    }
    std::sort(la.ends.begin(), la.ends.end());
    la.ends.erase(std::unique(la.ends.begin(), la.ends.end()), la.ends.end());
    starts.push_back(la.start);
    ends.insert(ends.end(), la.ends.begin(), la.ends.end());
    lifted.atoms.push_back(std::move(la));
  }

  // per-atom emptiness: no end reachable from the start and the start is not
  // itself an end
  for (const ConstraintAtom& a : lifted.atoms) {
    State seed[] = {a.start};
    auto fwd = reachable(bg, seed);
    bool nonempty = false;
    for (State e : a.ends) {
      if (fwd[e]) {
        nonempty = true;
        break;
      }
    }
    if (!nonempty) return std::nullopt;
  }
  if (!prune) return lifted;

  auto fwd = reachable(bg, starts);
  auto bwd = coreachable(bg, ends);
  std::vector<State> remap(bg.num_states(), kNoState);
  GraphBuilder nb;
  for (State q = 0; q < bg.num_states(); ++q) {
    if (fwd[q] && bwd[q]) remap[q] = nb.add_state(bg.label(q));
  }
  if (budget) budget->charge_states(nb.num_states());
  for (State q = 0; q < bg.num_states(); ++q) {
    if (remap[q] == kNoState) continue;
    for (const Arc& arc : bg.out(q)) {
      if (remap[arc.to] != kNoState) nb.add_arc(remap[q], arc.sym, remap[arc.to]);
    }
  }
  SuccinctConstraint pruned;
  pruned.graph = nb.build();
  for (const ConstraintAtom& a : lifted.atoms) {
    ConstraintAtom pa;
    if (remap[a.start] == kNoState) return std::nullopt;  // start off every path
    pa.start = remap[a.start];
    for (State e : a.ends) {
      if (remap[e] != kNoState) pa.ends.push_back(remap[e]);
    }
    std::sort(pa.ends.begin(), pa.ends.end());
    if (pa.ends.empty()) return std::nullopt;
    pruned.atoms.push_back(std::move(pa));
  }
  return pruned;
}

std::optional<SuccinctConstraint> RewriteTemplate::rewrite(const SuccinctConstraint& c,
                                                           std::span<const StatePair> tz,
                                                           Budget* budget) const {
  RewriteResult raw = apply_raw(tz, budget);
  return lift_constraint(c, raw, /*prune=*/true, budget);
}

std::vector<StatePair> RewriteTemplate::useful_pairs(const SuccinctConstraint& c,
                                                     std::vector<StatePair> cands,
                                                     Budget* budget) const {
  const Graph& g = *subject_;
  while (true) {
    RewriteResult all = apply_raw(cands, budget);
    const Graph& bg = *all.graph;
    std::vector<State> starts, ends;
    for (const ConstraintAtom& a : c.atoms) {
      starts.push_back(all.start_of[a.start]);
      for (State e : a.ends) {
        const auto& le = all.ends_of[e];
        ends.insert(ends.end(), le.begin(), le.end());
      }
    }
    auto fwd = reachable(bg, starts);
    auto bwd = coreachable(bg, ends);
    auto on_path = [&](State from, State to) { return fwd[from] && bwd[to]; };

    std::vector<StatePair> kept;
    for (const StatePair& p : cands) {
      bool used = false;
      if (direct_) {
        if (route_ == PatternRoute::kEpsilonOnly) {
          for (const Arc& arc : g.out(p.to)) {
            if (on_path(p.from, arc.to)) used = true;
          }
          // a trailing insertion is an end, not an arc
          for (const ConstraintAtom& a : c.atoms) {
            if (fwd[p.from] &&
                std::binary_search(a.ends.begin(), a.ends.end(), p.to)) {
              used = true;
            }
          }
        } else {
          used = on_path(p.from, p.to);
        }
      } else {
        for (const Slot& s : column_slots_) {
          if (on_path(index(p.from, s.from_col), index(p.to, s.to_col))) used = true;
        }
        for (const Slot& s : pair_slots_) {
          for (const Arc& arc : g.out(p.to)) {
            if (arc.sym == s.sym && on_path(index(p.from, s.from_col), index(arc.to, s.to_col))) {
              used = true;
            }
          }
        }
        if (!used && !pre_insert_cols_.empty()) {
          for (const ConstraintAtom& a : c.atoms) {
            if (!std::binary_search(a.ends.begin(), a.ends.end(), p.to)) continue;
            for (uint32_t col : pre_insert_cols_) {
              if (fwd[index(p.from, col)]) used = true;
            }
          }
        }
      }
      if (used) kept.push_back(p);
    }
    if (kept.size() == cands.size()) return kept;
    cands = std::move(kept);
    if (cands.empty()) return cands;
  }
}

RewriteResult build_B_const(const GraphPtr& t, const ConstParser& parser,
                            std::span<const StatePair> tz, Budget* budget) {
  PreparedPattern p;
  p.route = PatternRoute::kConstWord;
  p.word = parser.pattern;
  p.const_parser = std::make_shared<const ConstParser>(parser);
  return RewriteTemplate::make(t, p, budget)->apply_raw(tz, budget);
}

RewriteResult build_B_regex(const GraphPtr& t, const RegexParser& parser,
                            std::span<const StatePair> tz, Budget* budget) {
  PreparedPattern p;
  p.route = PatternRoute::kRegex;
  p.regex_parser = std::make_shared<const RegexParser>(parser);
  return RewriteTemplate::make(t, p, budget)->apply_raw(tz, budget);
}

RewriteResult build_B_nullable(const GraphPtr& t, const NullableParser& parser,
                               std::span<const StatePair> tz, Budget* budget) {
  PreparedPattern p;
  p.route = PatternRoute::kRegexNullable;
  p.nullable_parser = std::make_shared<const NullableParser>(parser);
  return RewriteTemplate::make(t, p, budget)->apply_raw(tz, budget);
}

RewriteResult build_B(const GraphPtr& t, const PreparedPattern& pat, std::span<const StatePair> tz,
                      Budget* budget) {
  return RewriteTemplate::make(t, pat, budget)->apply_raw(tz, budget);
}

// ---- eliminate_vertex -----------------------------------------------------------

std::optional<ConstraintEnv> eliminate_vertex(const ConstraintEnv& env, uint32_t vertex,
                                              const EliminationStep& step,
                                              std::span<const std::vector<StatePair>> guesses,
                                              Budget* budget) {
  const auto& constraints = env.env[vertex];
  assert(guesses.size() == constraints.size());
  ConstraintEnv out = env;
  for (size_t j = 0; j < constraints.size(); ++j) {
    const SuccinctConstraint& c = constraints[j];
    const auto& tz = guesses[j];
    if (!tz.empty()) {
      SuccinctConstraint repl;
      repl.graph = c.graph;
      for (const StatePair& p : tz) repl.atoms.push_back({p.from, {p.to}});
      out.env[step.replacement_vertex].push_back(std::move(repl));
    }
    auto tpl = RewriteTemplate::make(c.graph, *step.pattern, budget);
    auto lifted = tpl->rewrite(c, tz, budget);
    if (!lifted) return std::nullopt;
    out.env[step.subject_vertex].push_back(std::move(*lifted));
  }
  out.env[vertex].clear();  // discharged
  out.discharged += 1;
  return out;
}

}  // namespace resat
