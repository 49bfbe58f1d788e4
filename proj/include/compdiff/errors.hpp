#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compdiff {

// Expression text could not be parsed. Carries the byte offset of the
// failure and a human-readable set of tokens that would have been accepted.
class ExprParseError : public std::runtime_error {
public:
    ExprParseError(std::size_t offset, const std::string& expected,
                   const std::string& message)
        : std::runtime_error(message), offset_(offset), expected_(expected) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Evaluation hit a domain restriction (division by zero, non-integer power
// of a non-positive base, non-finite result).
class ExprDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration or precondition violation detected before any
// numerics run (bad field values, unknown preset, non-stationary
// coefficients where stationary ones are required).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure at run time: definiteness guard violation, solver or
// iteration non-convergence, loss of positivity beyond round-off, or a
// coefficient sample that violates the model assumptions mid-run.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace compdiff
