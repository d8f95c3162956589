// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <span>
#include <string>

namespace tropreal::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNo = 1;     // a decided negative answer: empty set, unequal, not a member
inline constexpr int kError = 2;  // bad input or a failure

/// Runs one command; `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tropreal::cli
