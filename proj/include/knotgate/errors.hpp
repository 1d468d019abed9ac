#pragma once

#include <stdexcept>
#include <string>

namespace knotgate {

/// Bad input: malformed text, out-of-range parameters, violated preconditions.
/// The CLI maps this family to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: non-convergence, degenerate spectra, collapsed overlaps.
/// The CLI maps this family to exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateSpectrum : NumericError {
    explicit DegenerateSpectrum(const std::string& msg) : NumericError(msg) {}
};

} // namespace knotgate
