#pragma once

#include <stdexcept>
#include <string>

namespace bswg {

// Configuration / validation problems: bad inputs, impossible run windows.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical non-convergence or degeneracy, with diagnostics in the message.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bswg
