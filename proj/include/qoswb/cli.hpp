/*
 * Copyright 2026 The qoswb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QOSWB_CLI_HPP
#define QOSWB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qoswb::cli {

enum ExitCode : int
{
	kSuccess = 0,
	kInputError = 1,
	kInfeasible = 2,
	kUsage = 64
};

/// Runs one command line. `args` excludes the program name. Nothing is written to
/// std::cout or std::cerr directly, so the same call can be captured in tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool styled = false);

} // namespace qoswb::cli

#endif // QOSWB_CLI_HPP
