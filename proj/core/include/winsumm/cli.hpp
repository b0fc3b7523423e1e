// Copyright 2026 The winsumm Authors.
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
#include <span>
#include <string>

namespace winsumm {

/// Entry point of the `winsumm` command-line tool. Subcommands: ingest,
/// label, train, summarize, evaluate, sweep, rouge, gradcheck.
///
/// Returns 0 on success, 1 on usage errors (unknown flags, bad values) and
/// 2 on data errors (unreadable or malformed input, failed gradient check).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args[0] is the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace winsumm
