#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include "extremal/linalg.hpp"

namespace extremal::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kUnbounded = 3,
    kNotFullDimensional = 4,
    kRedundant = 5,
    kEmpty = 6,
    kInvalidInput = 7,  // zero normal, degenerate vertex list, size guard
    kNoCover = 8,
    kDimensionMismatch = 9,
    kIo = 10,
};

/// Tolerances from EXTREMAL_TOL (one scalar for all three), else defaults.
Tolerances tolerances_from_env();

/// Parses one interleaved "re,im,re,im,..." point.
ComplexVector parse_point(std::string_view text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace extremal::cli
