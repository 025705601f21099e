// Error types shared across the library. All failures surface as exceptions
// derived from ltensor::Error; the CLI maps them onto exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace ltensor {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension or layout mismatch (wrong axis size, non-square slice, ...).
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

/// Transform does not match the tensor it is applied to, is not invertible
/// enough, or lacks a property an operation requires (e.g. unitarity).
class TransformError : public Error {
public:
    explicit TransformError(const std::string& what) : Error(what) {}
};

/// Numerical failure: singular slice, non-convergent factorization, ...
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

/// File-format or filesystem failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace ltensor
