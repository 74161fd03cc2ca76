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

#include "resat/report.hpp"

#include <sstream>

namespace resat {

std::string RunReport::to_text() const {
  std::string out = std::string("verdict: ") + verdict_kind_name(verdict) + "\n";
  if (!reason.empty()) out += "reason: " + reason + "\n";
  for (const auto& [var, word] : model) {
    out += "model " + var + " = \"" + word_to_string(word) + "\"\n";
  }
  for (const auto& [key, value] : stats) {
    out += "stat " + key + " = " + value + "\n";
  }
  return out;
}

RunReport RunReport::from_text(const std::string& text) {
  RunReport r;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("verdict: ", 0) == 0) {
      std::string v = line.substr(9);
      if (v == "sat") r.verdict = VerdictKind::kSat;
      else if (v == "unsat") r.verdict = VerdictKind::kUnsat;
      else if (v == "unsupported") r.verdict = VerdictKind::kUnsupported;
      else if (v == "resource-out") r.verdict = VerdictKind::kResourceOut;
      else throw std::runtime_error("bad verdict line: " + line);
    } else if (line.rfind("reason: ", 0) == 0) {
      r.reason = line.substr(8);
    } else if (line.rfind("model ", 0) == 0) {
      size_t eq = line.find(" = \"");
      if (eq == std::string::npos || line.back() != '"')
        throw std::runtime_error("bad model line: " + line);
      r.model.emplace_back(line.substr(6, eq - 6),
                           to_word(line.substr(eq + 4, line.size() - eq - 5)));
    } else if (line.rfind("stat ", 0) == 0) {
      size_t eq = line.find(" = ");
      if (eq == std::string::npos) throw std::runtime_error("bad stat line: " + line);
      r.stats.emplace_back(line.substr(5, eq - 5), line.substr(eq + 3));
    } else if (!line.empty()) {
      throw std::runtime_error("bad report line: " + line);
    }
  }
  return r;
}

RunReport RunReport::from_result(const SolveResult& r) {
  RunReport out;
  out.verdict = r.verdict.kind;
  out.reason = r.verdict.reason;
  out.model = r.verdict.model;
  out.stats = {
      {"class", fragment_kind_name(r.fragment.kind)},
      {"diamond-index", std::to_string(r.fragment.diamond)},
      {"l-length", std::to_string(r.fragment.l_len)},
      {"depth", std::to_string(r.fragment.graph_depth)},
      {"final-choices", std::to_string(r.stats.final_choices)},
      {"branches", std::to_string(r.stats.branches)},
      {"peak-env-constraints", std::to_string(r.stats.peak_env)},
      {"rewrite-templates", std::to_string(r.stats.templates)},
      {"witness-searches", std::to_string(r.stats.witness_searches)},
      {"product-states", std::to_string(r.stats.states_charged)},
      {"advisory", r.fragment.advisory},
  };
  return out;
}

int RunReport::exit_code() const {
  switch (verdict) {
    case VerdictKind::kSat: return 0;
    case VerdictKind::kUnsat: return 1;
    case VerdictKind::kUnsupported: return 2;
    case VerdictKind::kResourceOut: return 3;
  }
  return 4;
}

}  // namespace resat
