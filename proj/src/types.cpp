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

#include "resat/types.hpp"

#include <chrono>

namespace resat {

int64_t steady_now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

void Budget::charge_states(uint64_t n) {
  if (n > product_states_left) {
    product_states_left = 0;
    throw BudgetExceeded("product state budget exhausted");
  }
  product_states_left -= n;
}

void Budget::check_time() const {
  if (deadline_ms >= 0 && steady_now_ms() > deadline_ms) {
    throw BudgetExceeded("wall clock budget exhausted");
  }
}

}  // namespace resat
