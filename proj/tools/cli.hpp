#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acmdm::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  // check-reduction ran but a deviation exceeds its threshold
    kUsage = 2,        // bad flags or invalid parameter values
    kDomain = 3,       // above threshold, singular path/point, mismatched arms
    kInfrared = 4,     // infrared-divergent kinematics
    kNonConvergence = 5,
    kParse = 6,        // unreadable or malformed JSON input
};

// Runs one command line. `args` excludes the program name. Tables and JSON go
// to `out`, diagnostics to `err`. Nothing is written to `out` when an error is
// raised; a failed check (kCheckFailed) still prints its table.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acmdm::cli
