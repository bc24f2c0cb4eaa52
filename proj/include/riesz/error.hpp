#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Bad argument to a public operation (shape, range, exponent, coefficient bound).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two functions/spectra/symbols living on different groups.
class GroupMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// The time quadrature cannot certify its tail bound. Carries the t_max
// that would have been needed.
class QuadratureInfeasible : public std::runtime_error {
public:
    QuadratureInfeasible(const std::string& what, double required_t_max)
        : std::runtime_error(what), required_t_max_(required_t_max) {}

    double required_t_max() const noexcept { return required_t_max_; }

private:
    double required_t_max_;
};

// A numerically observed quantity exceeded a proven bound.
class BoundViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed serialized input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace riesz
