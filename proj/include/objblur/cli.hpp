/*******************************************************************************
* Copyright 2026 The objblur Authors
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
*******************************************************************************/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace objblur::cli {

enum ExitCode : int
{
    success       = 0,
    runtime_error = 1,
    usage_error   = 2,
};

/// Runs one command line (args[0] is the program name). Every run prints the
/// fully resolved configuration as a re-runnable command line before doing
/// any work. Returns 0, 1 or 2 and never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace objblur::cli
