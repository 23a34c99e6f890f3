// Copyright 2026 The speechveil Authors.
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

#ifndef SPEECHVEIL_CLI_CLI_H_
#define SPEECHVEIL_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace speechveil {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBackend = 3;
inline constexpr int kExitValidation = 4;

// Runs one command line. Results go to `out`; failures are written to `err`
// as {"error": {"code", "message", "exit_code"}}.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace speechveil

#endif  // SPEECHVEIL_CLI_CLI_H_
