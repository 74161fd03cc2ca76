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

// The named instances the suites keep coming back to: one replaceall under
// each pattern shape against the same membership triple, plus the nested
// two-definition chain.

#ifndef RESAT_TESTS_GOLDENS_HPP_
#define RESAT_TESTS_GOLDENS_HPP_

namespace resat::test {

// x = replaceall(y, 0, z), memberships as in the worked single-letter instance
inline const char* kSingleLetterInstance = R"(
alphabet "01";
x := replaceall(y, "0", z);
assert x in /(0+1)*(00(0+1)*+11(0+1)*)/;
assert y in /(01)*/;
assert z in /(10)*/;
)";

// nested chain: y from y', then x from y
inline const char* kNestedInstance = R"(
alphabet "01";
y := replaceall(y', "1", z');
x := replaceall(y, "0", z);
assert x in /(0+1)*(00(0+1)*+11(0+1)*)/;
assert y in /(01)*/;
assert z in /(10)*/;
assert y' in /0*1*0*1*/;
assert z' in /0*1*/;
)";

// constant pattern 010
inline const char* kConstInstance = R"(
alphabet "01";
x := replaceall(y, "010", z);
assert x in /(0+1)*(00(0+1)*+11(0+1)*)/;
assert y in /(01)*/;
assert z in /(10)*/;
)";

// regex pattern 0*01(1*+0*)
inline const char* kRegexInstance = R"(
alphabet "01";
x := replaceall(y, /0*01(1*+0*)/, z);
assert x in /(0+1)*(00(0+1)*+11(0+1)*)/;
assert y in /(01)*/;
assert z in /(10)*/;
)";

inline const char* kVarPatternInstance = R"(
alphabet "01";
x := replaceall(y, p, z);
assert x in /0*/;
)";

inline const char* kLengthInstance = R"(
alphabet "01";
x := replaceall(y, "0", z);
assert len(x) = len(y);
)";

inline const char* kCharInstance = R"(
alphabet "01";
x := replaceall(y, "0", z);
assert x[i] = y[1];
)";

inline const char* kIndexOfInstance = R"(
alphabet "01";
x := replaceall(y, "0", z);
assert t <= indexof(x, y);
)";

}  // namespace resat::test

#endif  // RESAT_TESTS_GOLDENS_HPP_
