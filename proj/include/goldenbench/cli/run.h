// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOLDENBENCH_CLI_RUN_H_
#define GOLDENBENCH_CLI_RUN_H_

#include <ostream>
#include <string>
#include <vector>

namespace goldenbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the goldenbench tool. `args` excludes the program name.
// Returns 0 on success, 1 on validation or metric errors (reported on
// `err`), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace goldenbench::cli

#endif  // GOLDENBENCH_CLI_RUN_H_
