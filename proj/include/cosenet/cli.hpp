#pragma once

#include <iosfwd>

namespace cosenet {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitIo = 3,
};

/// Entry point for the command-line tool. Output goes to out/err so tests can
/// drive it in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cosenet
