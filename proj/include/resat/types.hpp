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

#ifndef RESAT_TYPES_HPP_
#define RESAT_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace resat {

/// A symbol is a code point. User alphabets are printable ASCII; the range
/// 0xE000.. is reserved for internal fresh letters (concat desugaring).
using Symbol = char32_t;
using Word = std::u32string;

using State = uint32_t;
constexpr State kNoState = UINT32_MAX;

struct StatePair {
  State from;
  State to;
  friend bool operator==(const StatePair&, const StatePair&) = default;
  friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

constexpr Symbol kFreshLetterBase = 0xE000;

inline bool is_fresh_letter(Symbol s) { return s >= kFreshLetterBase && s != U'￿'; }

/// ASCII string -> word. Bytes are taken as code points.
inline Word to_word(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (unsigned char c : s) w.push_back(static_cast<Symbol>(c));
  return w;
}

/// Word -> printable string; non-ASCII symbols are escaped as \uXXXX.
inline std::string word_to_string(const Word& w) {
  std::string out;
  for (Symbol s : w) {
    if (s < 0x80) {
      out.push_back(static_cast<char>(s));
    } else {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "\\u%04X", static_cast<unsigned>(s));
      out += buf;
    }
  }
  return out;
}

/// Raised when a search budget (product states, branches, wall clock) runs out.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Joint resource accounting for one solver run.
struct Budget {
  uint64_t product_states_left = UINT64_MAX;
  int64_t deadline_ms = -1;  // steady-clock ms; -1 = none

  void charge_states(uint64_t n);
  void check_time() const;
};

int64_t steady_now_ms();

}  // namespace resat

#endif  // RESAT_TYPES_HPP_
