// Copyright 2026 The waning authors.
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

#ifndef WANING_CLI_HPP
#define WANING_CLI_HPP

#include <iostream>
#include <string>
#include <vector>

namespace waning {

// Executes one CLI invocation. `args` holds the subcommand and its flags
// (no program name): run_command({"simulate", "--alpha", "1", ...}).
//
// Subcommands: simulate, ccdf, fit, theory, gof, regime.
// Exit status: 0 success, 1 usage error (bad grammar, bad flag values,
// impossible parameter combinations), 2 data/computation error (unreadable
// or malformed input, too little data, unsupported configuration at run
// time). A failing goodness-of-fit verdict is a successful run.
//
// Every file is written atomically (temp + rename). Stochastic subcommands
// seed from --seed, falling back to the WANING_SEED environment variable,
// then to 1; given a seed, reruns are byte-identical.
int run_command(const std::vector<std::string>& args,
                std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace waning

#endif  // WANING_CLI_HPP
