// Copyright 2026 The carshare Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   carshare solve <instance|fig1|fig2|fig3> [--alg ...] [--alpha 1|2] ...
//   carshare verify-paper
//   carshare sweep --count N --n 2,3 [--a 2] [--mode general|st] [--seed S] [--out F]
//   carshare gen --n N [--a 2] [--mode general|st] [--seed S] [--out F]
//   carshare validate <instance>
//
// Machine-readable output is one JSON object per line on `out`; the human
// summary goes to `err`. Exit status: 0 ok, 1 bound or check violation,
// 2 usage, parse or capability error.

#ifndef CARSHARE_CLI_H_
#define CARSHARE_CLI_H_

#include <ostream>

namespace carshare {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace carshare

#endif  // CARSHARE_CLI_H_
