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

#ifndef RESAT_ORACLE_HPP_
#define RESAT_ORACLE_HPP_

#include "resat/formula.hpp"
#include "resat/replace.hpp"

namespace resat {

/// Recursive regex membership, straight off the language equations. Shares
/// nothing with the automata pipeline; this is the reference the solver's
/// answers are checked against.
bool naive_match(const Regex& r, const Word& w);

struct OracleResult {
  bool sat = false;
  Model model;          // sat
  uint32_t bound = 0;   // !sat: no witness with source values up to this length
};

/// Bounded brute-force satisfiability: enumerates assignments of words of
/// length <= max_len to the source variables in length-lexicographic order
/// (total length first, then componentwise), evaluates defined variables via
/// replace_all, and checks memberships with naive_match. Concat definitions
/// are evaluated directly.
OracleResult brute_force_sat(const Formula& f, uint32_t max_len);

}  // namespace resat

#endif  // RESAT_ORACLE_HPP_
