#pragma once

#include <stdexcept>
#include <string>

namespace heatcurve {

// Error categories map 1:1 to CLI exit codes: config/usage -> 1,
// bad input data -> 2, infeasible problem -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace heatcurve
