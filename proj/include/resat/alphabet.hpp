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

#ifndef RESAT_ALPHABET_HPP_
#define RESAT_ALPHABET_HPP_

#include <algorithm>
#include <initializer_list>

#include "resat/types.hpp"

namespace resat {

/// Ordered finite alphabet. Declaration order is the canonical symbol order
/// used for lexicographic tie-breaking everywhere.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(Word symbols) {
    for (Symbol s : symbols) add(s);
  }
  Alphabet(std::initializer_list<Symbol> symbols) {
    for (Symbol s : symbols) add(s);
  }

  void add(Symbol s) {
    if (!contains(s)) symbols_.push_back(s);
  }

  bool contains(Symbol s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
  }

  size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

}  // namespace resat

#endif  // RESAT_ALPHABET_HPP_
