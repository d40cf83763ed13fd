// speechaug/cli.h

// Copyright 2026  The speechaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPEECHAUG_CLI_H_
#define SPEECHAUG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace speechaug {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // runtime or data failure
constexpr int kExitUsage = 2;    // usage or configuration error

/// Entry point of the `speechaug` tool. `args` excludes the program name,
/// e.g. {"augment", "--manifest", "m.jsonl", ...}. Subcommands: augment,
/// featurize, score, report, render. Returns the process exit code.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace speechaug

#endif  // SPEECHAUG_CLI_H_
