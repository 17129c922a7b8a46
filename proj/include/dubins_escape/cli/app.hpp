// Copyright 2026 The Dubins Escape Authors
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

#ifndef DUBINS_ESCAPE_CLI_APP_HPP_
#define DUBINS_ESCAPE_CLI_APP_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dubins_escape::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitDomain = 3,
  kExitVerification = 4,
};

// Runs the command line `args` (args[0] is the program name). "-" for
// --input/--output means `in`/`out`; errors are written to `err` as a JSON
// object {"error": {"code", "path", "message"}}.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace dubins_escape::cli

#endif  // DUBINS_ESCAPE_CLI_APP_HPP_
