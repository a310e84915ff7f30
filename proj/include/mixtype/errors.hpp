#pragma once

#include <stdexcept>
#include <string>

namespace mixtype {

// Base class for all solver-level failures; the CLI maps subclasses to exit codes.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coupling coefficients outside the admissible range (divisions by 1 +/- sigma degenerate).
class SigmaInvalid : public SolverError {
public:
    using SolverError::SolverError;
};

// A type-change curve violates the standing assumptions (endpoint values,
// strict interior position, or smoothness of the sampled data).
class CurveInvalid : public SolverError {
public:
    using SolverError::SolverError;
};

// The curve's characteristic image t -> t +/- gamma(t) is not strictly increasing.
class NonMonotone : public CurveInvalid {
public:
    using CurveInvalid::CurveInvalid;
};

// Bracketed root finding failed to locate a curve/characteristic intersection.
class NoIntersection : public SolverError {
public:
    using SolverError::SolverError;
};

// A 2x2 step system of the Volterra march is numerically singular.
class StepSingular : public SolverError {
public:
    using SolverError::SolverError;
};

// Evaluation requested outside the subdomain a representation is valid on.
class OutOfRegion : public SolverError {
public:
    using SolverError::SolverError;
};

// Heat kernels require y1 < y.
class InvalidTime : public SolverError {
public:
    using SolverError::SolverError;
};

// Expression evaluated outside its numeric domain (sqrt of a negative, 1/0, ...).
class DomainError : public SolverError {
public:
    using SolverError::SolverError;
};

// Expression text could not be parsed; carries the byte offset of the offending token.
class ParseError : public SolverError {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : SolverError(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Configuration file problem; message carries the section.key path.
class ConfigError : public SolverError {
public:
    using SolverError::SolverError;
};

} // namespace mixtype
