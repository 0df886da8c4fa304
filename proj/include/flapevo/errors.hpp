#pragma once

#include <stdexcept>
#include <string>

namespace flapevo {

// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError -> 2 (usage / configuration), IoError -> 3, everything else -> 1.

// Invalid configuration, invalid argument combinations, or inputs that violate
// a documented precondition (bad ranges, infeasible designs, malformed values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file content (JSON/CSV). Messages carry the offending token or
// line number so the user can locate the problem.
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};

// Filesystem problems: missing files, unwritable paths.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulation blow-up (non-finite state). Carries where and when it happened.
struct SimAbort : std::runtime_error {
    double time_s;
    int blade_index;
    SimAbort(const std::string& what, double time, int blade)
        : std::runtime_error(what), time_s(time), blade_index(blade) {}
};

}  // namespace flapevo
