// Copyright 2026 The mtrbac Authors
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

#ifndef MTRBAC_CLI_HPP_
#define MTRBAC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace mtrbac::cli {

// Runs one mtrbac command. `args` excludes the program name. Output is
// byte-identical for identical inputs; every defect produces exactly one
// line on `err`.
//
// Exit codes: 0 success; 1 data failure (invalid input, divergences);
// 64 usage error. `eval` maps the outcome instead: Permit 0, Deny 1,
// NotApplicable 2, Indeterminate 3, engine error 4.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mtrbac::cli

#endif  // MTRBAC_CLI_HPP_
