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

#include "resat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <future>

#include "resat/oracle.hpp"

namespace resat {

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::kSat: return "sat";
    case VerdictKind::kUnsat: return "unsat";
    case VerdictKind::kUnsupported: return "unsupported";
    case VerdictKind::kResourceOut: return "resource-out";
  }
  return "?";
}

const char* const kReasonVarPattern =
    "variable patterns: satisfiability is undecidable (Post correspondence reduction)";
const char* const kReasonLength =
    "length constraints: satisfiability is undecidable (Diophantine equation reduction)";
const char* const kReasonChar =
    "character constraints: satisfiability is undecidable (encodes length equality)";
const char* const kReasonIndexOf =
    "indexOf constraints: satisfiability is undecidable (encodes length equality)";

// ---- verification ---------------------------------------------------------------

std::optional<std::string> verify_model(const Formula& f, const Model& model) {
  auto value_of = [&](const StringTerm& t) -> std::optional<Word> {
    if (t.is_const) return t.value;
    const Word* w = model_value(model, t.var);
    if (!w) return std::nullopt;
    return *w;
  };
  for (const Definition& d : f.definitions) {
    const Word* lhs = model_value(model, d.lhs);
    if (!lhs) return "variable '" + d.lhs + "' unassigned";
    if (d.kind == Definition::Kind::kConcat) {
      auto l = value_of(d.cat_left), r = value_of(d.cat_right);
      if (!l || !r) return "operand of '" + d.lhs + "' unassigned";
      if (*lhs != *l + *r) return "definition of '" + d.lhs + "' violated";
      continue;
    }
    if (d.pattern.kind == Pattern::Kind::kVar) {
      return "definition of '" + d.lhs + "' has a variable pattern";
    }
    auto subj = value_of(d.subject), repl = value_of(d.replacement);
    if (!subj || !repl) return "operand of '" + d.lhs + "' unassigned";
    Regex pat = d.pattern.kind == Pattern::Kind::kRegex ? d.pattern.re : re::word(d.pattern.text);
    if (*lhs != replace_all(*subj, pat, *repl)) {
      return "definition of '" + d.lhs + "' violated";
    }
  }
  for (const Membership& m : f.memberships) {
    const Word* w = model_value(model, m.var);
    if (!w) return "variable '" + m.var + "' unassigned";
    if (!naive_match(m.re, *w)) {
      return "membership '" + m.var + " in /" + m.re_text + "/' violated";
    }
  }
  return std::nullopt;
}

// ---- session ---------------------------------------------------------------------

SolverSession::SolverSession(const Formula& f, const SearchLimits& limits)
    : formula_(f), limits_(limits) {
  budget_.product_states_left = limits.max_product_states;
  budget_.deadline_ms = limits.timeout_ms ? steady_now_ms() + int64_t(limits.timeout_ms) : -1;

  auto intern_var = [&](const std::string& name, bool defined) {
    for (uint32_t i = 0; i < vertices_.size(); ++i) {
      if (!vertices_[i].is_const && vertices_[i].name == name) {
        vertices_[i].defined |= defined;
        return i;
      }
    }
    vertices_.push_back({name, false, {}, defined});
    return static_cast<uint32_t>(vertices_.size() - 1);
  };
  for (const std::string& v : formula_.variables) intern_var(v, false);
  for (const Definition& d : formula_.definitions) intern_var(d.lhs, true);

  auto intern_term = [&](const StringTerm& t) {
    if (!t.is_const) return intern_var(t.var, false);
    uint32_t id = static_cast<uint32_t>(vertices_.size());
    vertices_.push_back({"lit#" + std::to_string(id) + " \"" + word_to_string(t.value) + "\"",
                         true, t.value, false});
    return id;
  };

  patterns_.resize(formula_.definitions.size());
  def_vertex_.resize(formula_.definitions.size());
  std::vector<uint32_t> subj(formula_.definitions.size()), repl(formula_.definitions.size());
  for (uint32_t i = 0; i < formula_.definitions.size(); ++i) {
    const Definition& d = formula_.definitions[i];
    assert(d.kind == Definition::Kind::kReplaceAll);
    def_vertex_[i] = intern_var(d.lhs, true);
    subj[i] = intern_term(d.subject);
    repl[i] = intern_term(d.replacement);
    patterns_[i] = prepare_pattern(d.pattern, formula_.working_alphabet, &budget_, limits.seed);
  }

  for (const Membership& m : formula_.memberships) {
    memberships_.push_back({vertex_of(m.var), compile(m.re, formula_.working_alphabet)});
  }
  // constant terms enter as singleton-language constraints
  for (uint32_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].is_const) {
      memberships_.push_back({v, compile(re::word(vertices_[v].const_word),
                                         formula_.working_alphabet)});
    }
  }

  // eliminate in reverse definition order: the last defined variable never
  // has remaining predecessors
  for (uint32_t i = static_cast<uint32_t>(formula_.definitions.size()); i-- > 0;) {
    steps_.push_back({subj[i], repl[i], &patterns_[i]});
    step_def_.push_back(i);
  }
}

uint32_t SolverSession::vertex_of(const std::string& name) const {
  for (uint32_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].is_const && vertices_[i].name == name) return i;
  }
  throw std::out_of_range("unknown variable " + name);
}

ConstraintEnv SolverSession::initial_env(std::span<const State> final_choices) const {
  assert(final_choices.size() == memberships_.size());
  ConstraintEnv env;
  env.env.resize(vertices_.size());
  for (size_t i = 0; i < memberships_.size(); ++i) {
    const MembershipAutomaton& m = memberships_[i];
    SuccinctConstraint c;
    c.graph = m.nfa.graph;
    ConstraintAtom atom;
    atom.start = m.nfa.initial;
    if (final_choices[i] == kNoState) {
      atom.ends = m.nfa.finals;
    } else {
      atom.ends = {final_choices[i]};
    }
    c.atoms.push_back(std::move(atom));
    env.env[m.vertex].push_back(std::move(c));
  }
  return env;
}

std::shared_ptr<const RewriteTemplate> SolverSession::template_for(uint32_t def_index,
                                                                   const GraphPtr& graph) {
  auto key = std::make_pair(def_index, graph.get());
  auto it = templates_.find(key);
  if (it != templates_.end()) return it->second;
  auto tpl = RewriteTemplate::make(graph, patterns_[def_index], &budget_);
  stats_.templates += 1;
  templates_.emplace(key, tpl);
  return tpl;
}

const std::vector<std::vector<bool>>& SolverSession::closure_of(const GraphPtr& g) {
  auto it = closures_.find(g.get());
  if (it != closures_.end()) return it->second;
  std::vector<std::vector<bool>> closure;
  closure.reserve(g->num_states());
  for (State q = 0; q < g->num_states(); ++q) {
    State seed[] = {q};
    closure.push_back(reachable(*g, seed));
  }
  return closures_.emplace(g.get(), std::move(closure)).first->second;
}

std::optional<ConstraintEnv> SolverSession::eliminate(
    const ConstraintEnv& env, uint32_t step_index,
    std::span<const std::vector<StatePair>> guesses) {
  const EliminationStep& step = steps_[step_index];
  uint32_t x = def_vertex_[step_def_[step_index]];
  const auto& constraints = env.env[x];
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
    auto tpl = template_for(step_def_[step_index], c.graph);
    auto lifted = tpl->rewrite(c, tz, &budget_);
    if (!lifted) return std::nullopt;
    out.env[step.subject_vertex].push_back(std::move(*lifted));
  }
  out.env[x].clear();  // discharged
  out.discharged += 1;
  stats_.peak_env = std::max<uint64_t>(stats_.peak_env, out.total_constraints());
  for (const auto& v : out.env) {
    stats_.peak_var_env = std::max<uint64_t>(stats_.peak_var_env, v.size());
  }

  // constraint collections only ever shrink a variable's language, so a joint
  // intersection that is already empty kills the whole branch
  auto joint_nonempty = [&](uint32_t v) {
    std::vector<NfaView> views;
    for (const SuccinctConstraint& sc : out.env[v]) {
      auto more = sc.views();
      views.insert(views.end(), more.begin(), more.end());
    }
    stats_.witness_searches += 1;
    return shortest_witness(std::span<const NfaView>(views), formula_.working_alphabet, &budget_)
        .has_value();
  };
  if (!joint_nonempty(step.subject_vertex)) return std::nullopt;
  if (step.replacement_vertex != step.subject_vertex && !joint_nonempty(step.replacement_vertex)) {
    return std::nullopt;
  }
  return out;
}

bool SolverSession::replacement_side_feasible(const ConstraintEnv& env, uint32_t vertex,
                                              const GraphPtr& graph,
                                              std::span<const StatePair> pairs) {
  std::vector<NfaView> views;
  for (const StatePair& p : pairs) views.push_back({graph.get(), p.from, {p.to}});
  for (const SuccinctConstraint& c : env.env[vertex]) {
    auto more = c.views();
    views.insert(views.end(), more.begin(), more.end());
  }
  stats_.witness_searches += 1;
  return shortest_witness(std::span<const NfaView>(views), formula_.working_alphabet, &budget_)
      .has_value();
}

std::vector<StatePair> SolverSession::candidates(const ConstraintEnv& env, uint32_t step_index,
                                                 uint32_t j) {
  const EliminationStep& step = steps_[step_index];
  uint32_t x = def_vertex_[step_def_[step_index]];
  const SuccinctConstraint& c = env.env[x][j];

  auto tpl = template_for(step_def_[step_index], c.graph);
  if (tpl->inert()) return {};  // the pattern can never complete a match

  auto starts = c.atom_starts();
  auto ends = c.atom_ends_union();
  auto fwd = reachable(*c.graph, starts);
  auto bwd = coreachable(*c.graph, ends);
  const auto& closure = closure_of(c.graph);

  std::vector<StatePair> out;
  for (State q = 0; q < c.graph->num_states(); ++q) {
    if (!fwd[q]) continue;
    for (State r = 0; r < c.graph->num_states(); ++r) {
      if (bwd[r] && closure[q][r]) out.push_back({q, r});
    }
  }
  out = tpl->useful_pairs(c, std::move(out), &budget_);
  // contextual per-pair pruning pays off once the pair space gets large
  if (out.size() > 24) {
    std::vector<StatePair> kept;
    for (const StatePair& p : out) {
      StatePair one[] = {p};
      if (replacement_side_feasible(env, step.replacement_vertex, c.graph, one)) {
        kept.push_back(p);
      }
    }
    out = std::move(kept);
  }
  return out;
}

SolverSession::Step2Result SolverSession::step2(const ConstraintEnv& env) {
  // per source vertex, the intersection of all expanded constraints must be
  // nonempty; checks run in ascending product-size order to fail fast
  struct Check {
    uint32_t vertex;
    double estimate;
    std::vector<NfaView> views;
  };
  std::vector<Check> checks;
  for (uint32_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].defined) continue;
    Check ch{v, 0.0, {}};
    for (const SuccinctConstraint& c : env.env[v]) {
      for (const ConstraintAtom& a : c.atoms) {
        ch.views.push_back({c.graph.get(), a.start, a.ends});
        ch.estimate += std::log2(double(c.graph->num_states()) + 1.0);
      }
    }
    checks.push_back(std::move(ch));
  }
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.estimate < b.estimate; });

  Step2Result res;
  std::vector<std::pair<uint32_t, Word>> values;

  if (!limits_.parallel || checks.size() < 2) {
    for (const Check& ch : checks) {
      stats_.witness_searches += 1;
      auto w = shortest_witness(std::span<const NfaView>(ch.views), formula_.working_alphabet,
                                &budget_);
      if (!w) {
        res.ok = false;
        res.failed_vertex = ch.vertex;
        return res;
      }
      values.emplace_back(ch.vertex, w->word);
    }
  } else {
    // deterministic fan-out: each check runs on an isolated budget slice and
    // the outcomes are committed in the sequential order, so the verdict,
    // the witnesses, and the budget accounting match the sequential mode
    struct Outcome {
      std::optional<ProductWitness> witness;
      uint64_t states_used = 0;
      bool overran = false;
    };
    uint64_t pool = budget_.product_states_left;
    int64_t deadline = budget_.deadline_ms;
    std::vector<std::future<Outcome>> futs;
    for (const Check& ch : checks) {
      futs.push_back(std::async(std::launch::async, [&ch, pool, deadline, this]() {
        Budget local{pool, deadline};
        Outcome o;
        try {
          o.witness = shortest_witness(std::span<const NfaView>(ch.views),
                                       formula_.working_alphabet, &local);
          o.states_used = pool - local.product_states_left;
        } catch (const BudgetExceeded&) {
          o.overran = true;
        }
        return o;
      }));
    }
    for (size_t i = 0; i < checks.size(); ++i) {
      Outcome o = futs[i].get();
      stats_.witness_searches += 1;
      if (o.overran || o.states_used > budget_.product_states_left) {
        budget_.product_states_left = 0;
        throw BudgetExceeded("product state budget exhausted");
      }
      budget_.product_states_left -= o.states_used;
      if (!o.witness) {
        res.ok = false;
        res.failed_vertex = checks[i].vertex;
        return res;
      }
      values.emplace_back(checks[i].vertex, o.witness->word);
    }
  }
  res.ok = true;
  res.source_values = std::move(values);
  return res;
}

Model SolverSession::extract_model(const Step2Result& s2) const {
  assert(s2.ok);
  std::vector<Word> value(vertices_.size());
  for (const auto& [v, w] : s2.source_values) value[v] = w;
  for (uint32_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].is_const) assert(value[v] == vertices_[v].const_word);
  }
  // defined variables bottom-up, in definition order
  for (uint32_t i = 0; i < formula_.definitions.size(); ++i) {
    const Definition& d = formula_.definitions[i];
    uint32_t lhs = def_vertex_[i];
    auto term_value = [&](const StringTerm& t) {
      return t.is_const ? t.value : value[vertex_of(t.var)];
    };
    value[lhs] = replace_all(term_value(d.subject), patterns_[i].re, term_value(d.replacement));
  }
  Model m;
  for (uint32_t v = 0; v < vertices_.size(); ++v) {
    if (!vertices_[v].is_const) m.emplace_back(vertices_[v].name, value[v]);
  }
  return m;
}

// ---- search ------------------------------------------------------------------------

namespace {

struct Search {
  SolverSession& s;
  const SearchLimits& limits;
  GuessTrace trace;
  GuessTrace best_trace;
  Model model;
  bool found = false;

  // per-(step, constraint) failing replacement-side cores, valid within the
  // enclosing branch; cleared on entry
  using Core = std::vector<uint32_t>;

  bool run() {
    std::vector<State> finals(s.membership_automata().size(), kNoState);
    return choose_finals(0, finals);
  }

  bool choose_finals(size_t i, std::vector<State>& finals) {
    if (i == s.membership_automata().size()) {
      s.stats().final_choices += 1;
      ConstraintEnv env = s.initial_env(finals);
      return eliminate_from(0, env);
    }
    if (limits.defer_finals) {
      finals[i] = kNoState;
      return choose_finals(i + 1, finals);
    }
    const Nfa& nfa = s.membership_automata()[i].nfa;
    if (nfa.finals.empty()) return false;  // empty language: no run can satisfy it
    for (State f : nfa.finals) {
      finals[i] = f;
      trace.events.push_back({GuessTrace::Event::Kind::kFinalChoice,
                              static_cast<uint32_t>(i), 0, f, {}});
      bool ok = choose_finals(i + 1, finals);
      trace.events.pop_back();
      if (ok) return true;
    }
    return false;
  }

  struct StepState {
    std::vector<std::vector<StatePair>> cand;
    std::vector<std::vector<Core>> cores;
    std::vector<std::map<Core, bool>> feasible_memo;  // env is fixed per step
  };

  bool eliminate_from(uint32_t step_index, const ConstraintEnv& env) {
    s.budget().check_time();
    if (step_index == s.steps().size()) return finish(env);
    uint32_t x = s.eliminated_vertex(step_index);
    std::vector<std::vector<StatePair>> guesses(env.env[x].size());
    StepState st;
    st.cores.resize(env.env[x].size());
    st.feasible_memo.resize(env.env[x].size());
    st.cand.resize(env.env[x].size());
    for (uint32_t j = 0; j < st.cand.size(); ++j) st.cand[j] = s.candidates(env, step_index, j);
    return choose_tz(step_index, 0, env, st, guesses);
  }

  bool choose_tz(uint32_t step_index, uint32_t j, const ConstraintEnv& env, StepState& st,
                 std::vector<std::vector<StatePair>>& guesses) {
    if (j == guesses.size()) {
      auto next = s.eliminate(env, step_index, guesses);
      if (!next) return false;
      return eliminate_from(step_index + 1, *next);
    }
    uint32_t x = s.eliminated_vertex(step_index);
    uint32_t def = s.step_def(step_index);
    const SuccinctConstraint& c = env.env[x][j];
    uint32_t repl_vertex = s.steps()[step_index].replacement_vertex;
    const std::vector<StatePair>& cand = st.cand[j];
    const uint32_t n = static_cast<uint32_t>(cand.size());

    // pair sets ascending by size, lexicographic within one size; a partial
    // set whose replacement side is already infeasible prunes every superset
    // (growing the set only shrinks that side), recorded as a core
    std::vector<uint32_t> idx;
    auto partial_ok = [&](const Core& partial) {
      for (const Core& core : st.cores[j]) {
        if (std::includes(partial.begin(), partial.end(), core.begin(), core.end())) return false;
      }
      auto it = st.feasible_memo[j].find(partial);
      if (it != st.feasible_memo[j].end()) return it->second;
      std::vector<StatePair> pairs;
      for (uint32_t k : partial) pairs.push_back(cand[k]);
      bool ok = s.replacement_side_feasible(env, repl_vertex, c.graph, pairs);
      st.feasible_memo[j].emplace(partial, ok);
      if (!ok) st.cores[j].push_back(partial);
      return ok;
    };

    auto visit_full = [&]() {
      if (s.stats().branches >= limits.max_branches) {
        throw BudgetExceeded("guess branch budget exhausted");
      }
      s.stats().branches += 1;
      s.budget().check_time();
      guesses[j].clear();
      for (uint32_t k : idx) guesses[j].push_back(cand[k]);
      trace.events.push_back(
          {GuessTrace::Event::Kind::kTzChoice, def, j, kNoState, guesses[j]});
      bool ok = choose_tz(step_index, j + 1, env, st, guesses);
      trace.events.pop_back();
      return ok;
    };

    // depth = remaining picks; positions ascend so subsets come out in
    // lexicographic order within a size class
    auto rec = [&](auto&& self, uint32_t remaining, uint32_t min_pos) -> bool {
      if (remaining == 0) return visit_full();
      s.budget().check_time();
      for (uint32_t pos = min_pos; pos + remaining <= n; ++pos) {
        idx.push_back(pos);
        if (partial_ok(idx)) {
          if (self(self, remaining - 1, pos + 1)) return true;
        }
        idx.pop_back();
      }
      return false;
    };

    for (uint32_t size = 0; size <= n; ++size) {
      if (rec(rec, size, 0)) return true;
    }
    return false;
  }

  bool finish(const ConstraintEnv& env) {
    auto s2 = s.step2(env);
    if (!s2.ok) return false;
    model = s.extract_model(s2);
    best_trace = trace;
    found = true;
    return true;
  }
};

}  // namespace

SolveResult solve(const Formula& f, const SearchLimits& limits) {
  SolveResult result;
  result.fragment = classify(f);

  if (result.fragment.kind == FragmentKind::kVarPattern) {
    result.verdict = {VerdictKind::kUnsupported, {}, kReasonVarPattern};
    return result;
  }
  if (result.fragment.kind == FragmentKind::kExtendedUndecidable) {
    const char* reason = kReasonLength;
    switch (f.extensions.front().kind) {
      case ExtensionAtom::Kind::kLength: reason = kReasonLength; break;
      case ExtensionAtom::Kind::kChar: reason = kReasonChar; break;
      case ExtensionAtom::Kind::kIndexOf: reason = kReasonIndexOf; break;
    }
    result.verdict = {VerdictKind::kUnsupported, {}, reason};
    return result;
  }

  Formula prepared = desugar_concat(f);
  check_straight_line(prepared);

  std::optional<SolverSession> session;
  try {
    session.emplace(prepared, limits);
    Search search{*session, limits, {}, {}, {}, false};
    bool sat = search.run();
    result.stats = session->stats();
    result.stats.states_charged =
        limits.max_product_states - session->budget().product_states_left;
    // soft telemetry: per-variable collections should stay within the
    // exponential-in-diamond-index envelope
    {
      double vars = double(prepared.variables.size() + prepared.definitions.size()) + 1.0;
      double edges = 2.0 * double(prepared.definitions.size()) + 1.0;
      double k = std::max<double>(1.0, double(prepared.memberships.size()));
      double bound = k * vars * std::pow(vars * edges, 2.0 * result.fragment.diamond + 1.0);
      if (double(result.stats.peak_var_env) > bound) {
        std::fprintf(stderr,
                     "note: constraint collection peak %llu exceeded the expected envelope %.0f\n",
                     static_cast<unsigned long long>(result.stats.peak_var_env), bound);
      }
    }
    if (sat) {
      // report only the original formula's variables
      Model reported;
      for (const std::string& v : f.variables) {
        const Word* w = model_value(search.model, v);
        reported.emplace_back(v, w ? *w : Word{});
      }
      if (auto bad = verify_model(f, reported)) {
        throw std::logic_error("extracted model failed verification: " + *bad);
      }
      result.verdict = {VerdictKind::kSat, std::move(reported), ""};
      result.trace = std::move(search.best_trace);
    } else {
      result.verdict = {VerdictKind::kUnsat, {}, ""};
    }
  } catch (const BudgetExceeded& e) {
    if (session) {
      result.stats = session->stats();
      result.stats.states_charged =
          limits.max_product_states - session->budget().product_states_left;
    }
    result.verdict = {VerdictKind::kResourceOut, {}, e.what()};
  }
  return result;
}

}  // namespace resat
