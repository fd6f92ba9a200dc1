#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace galerkin {

/// Raised when inputs violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class IndexOutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidInterval : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotDifferentiable : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class TruncationOutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class QuadratureTooCoarse : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class BreakpointOrder : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class LambdaTooLarge : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Raised when a computation cannot produce a trustworthy number.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class IntegrandNotFinite : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Iteration cap reached; carries the state at the point of giving up.
class NoConvergence : public NumericalFailure {
public:
    NoConvergence(const std::string& what, double residual, std::size_t iterations)
        : NumericalFailure(what + " (residual " + std::to_string(residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
          residual_(residual),
          iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    double residual_;
    std::size_t iterations_;
};

}  // namespace galerkin
