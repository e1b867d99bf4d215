// Copyright 2026 The schmidtkit Authors
//
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schmidtkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one command line (program name excluded). Everything the command
/// prints goes to `out`/`err`; files go to the paths named by the flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV behind `figure-step`: F, the exact one-copy Schmidt number and (when
/// copies == 2) the two-copy fidelity lower bound, on an evenly spaced grid
/// merged with the step locations. For N = 2 and two copies, marker rows for
/// the tight point F = 1/sqrt(2) and the conjectured F = sqrt(3)/2 follow.
std::string figure_step_csv(int n, int copies, int grid);

}  // namespace schmidtkit::cli
