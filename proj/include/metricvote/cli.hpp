// Copyright 2026 The metricvote Authors.
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

#ifndef METRICVOTE_CLI_HPP
#define METRICVOTE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace metricvote {

// Runs one command line (without the program name). Returns 0 on success,
// 1 when a computation fails and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metricvote

#endif  // METRICVOTE_CLI_HPP
