#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace spps {

using cplx = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problems with what the user supplied: malformed files, bad expressions,
/// pieces that do not tile the interval, singular coefficients.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: vanishing particular solutions, failed shifts,
/// stalled sweeps, degenerate polynomials.
class SolverError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public InputError {
public:
    EvalError(const std::string& what, double x)
        : InputError(what + " at x=" + std::to_string(x)), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

class StructureError : public InputError {
public:
    using InputError::InputError;
};

class SingularCoefficientError : public InputError {
public:
    using InputError::InputError;
};

class ConfigurationError : public InputError {
public:
    using InputError::InputError;
};

class NonvanishingError : public SolverError {
public:
    NonvanishingError(const std::string& what, std::size_t slot)
        : SolverError(what), slot_(slot) {}
    std::size_t slot() const noexcept { return slot_; }

private:
    std::size_t slot_;
};

class BoundViolation : public SolverError {
public:
    using SolverError::SolverError;
};

class SeedFailure : public SolverError {
public:
    using SolverError::SolverError;
};

class ShiftFailure : public SolverError {
public:
    using SolverError::SolverError;
};

class DegeneratePolynomial : public SolverError {
public:
    using SolverError::SolverError;
};

class ContourTooClose : public SolverError {
public:
    ContourTooClose(const std::string& what, cplx location)
        : SolverError(what), location_(location) {}
    cplx location() const noexcept { return location_; }

private:
    cplx location_;
};

class OracleFailure : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace spps
