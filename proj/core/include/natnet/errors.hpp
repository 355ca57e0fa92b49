#pragma once

#include <stdexcept>
#include <string>

namespace natnet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Network dynamics left the sane coordinate range or produced non-finite values.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

// Iterative solver failed to reach the requested tolerance.
struct SolverError : Error {
    SolverError(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace natnet
