#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfap::cli {

// Exit statuses of `mfap`.
enum ExitCode : int {
    kOk = 0,
    kBadArguments = 2,       // unparsable option, spec string or g-file
    kPrecondition = 3,       // a parameter is outside what the operation accepts
    kTheoremViolation = 4,   // a proven inequality failed: implementation bug
    kOutputUnwritable = 5,
};

// Seed recorded in every report when --seed is not given.
inline constexpr unsigned long long kDefaultSeed = 20240611;

// Runs the command line `args` (without the program name). Reports go to
// --out or to `out`; diagnostics are one line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfap::cli
