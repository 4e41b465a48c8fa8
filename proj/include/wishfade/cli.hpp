// SPDX-License-Identifier: Apache-2.0
//
// wishfade: Wishart surrogates for generalized-fading MIMO channels
// Copyright (C) 2026 The wishfade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WISHFADE_CLI_HPP
#define WISHFADE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wishfade::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs one command line (argv[0] is the program name). Results go to `out`
// unless --out is given; diagnostics go to `err`. Returns the exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// Parses "a:b:step" (inclusive), a comma list, or a single number.
std::vector<double> parse_grid(const std::string &text);

// The one place where decibels become linear ratios.
double db_to_linear(double db);

} // namespace wishfade::cli

#endif
