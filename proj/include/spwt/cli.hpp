// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end. `run` is the whole program minus process plumbing so that
// tests can drive it in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace spwt::cli {

inline constexpr std::string_view kToolName = "spwt";
inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr const char* kConfigEnvVar = "SPWT_CONFIG";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,      // bad flags, bad config, infeasible request
    kExitProcedure = 2,  // randomization exhausted, replay mismatch
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spwt::cli
