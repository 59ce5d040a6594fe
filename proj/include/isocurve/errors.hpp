#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isocurve {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed expression text. `offset` is the byte offset into the source
/// string where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Numeric domain violation during evaluation (log of non-positive,
/// division by zero, ...). Carries the offset of the offending node.
class EvalError : public Error {
public:
    EvalError(const std::string& what, std::size_t offset)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

/// |phi_u x phi_v| fell below the regularity threshold.
class DegenerateSurfaceError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Curvature below kappa_min: the Frenet frame is undefined here.
class DegenerateCurvatureError : public GeometryError {
public:
    DegenerateCurvatureError(const std::string& what, double kappa)
        : GeometryError(what), kappa_(kappa) {}
    double kappa() const { return kappa_; }

private:
    double kappa_ = 0.0;
};

class OutOfDomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Curve speed vanished (ds/dt <= 1e-10).
class NonRegularCurveError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// An internal cross-check failed; indicates an implementation bug, not
/// bad user input.
class InternalCheckError : public Error {
public:
    using Error::Error;
};

/// Lookup of a catalog entity or CLI argument set that cannot be resolved.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace isocurve
