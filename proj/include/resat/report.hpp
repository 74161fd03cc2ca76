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

#ifndef RESAT_REPORT_HPP_
#define RESAT_REPORT_HPP_

#include "resat/solver.hpp"

namespace resat {

/// Line-oriented run report:
///   verdict: sat|unsat|unsupported|resource-out
///   reason: ...                   (unsupported / resource-out)
///   model <var> = "<word>"        (sat; first-appearance order)
///   stat <key> = <value>          (stable key order)
struct RunReport {
  VerdictKind verdict = VerdictKind::kUnsat;
  std::string reason;
  Model model;
  std::vector<std::pair<std::string, std::string>> stats;

  std::string to_text() const;
  static RunReport from_text(const std::string& text);
  static RunReport from_result(const SolveResult& r);

  int exit_code() const;
};

}  // namespace resat

#endif  // RESAT_REPORT_HPP_
