/* Copyright 2026 The Proofmine Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PROOFMINE_CLI_HPP
#define PROOFMINE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace proofmine::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInsufficientData = 4;

// Runs 'proofmine <args...>' (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proofmine::cli

#endif
