#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the singularity threshold during LU factorisation.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : Error(what), pivot_(pivot) {}
    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

/// The solution formula is singular at the requested point (det W or a
/// quasideterminant body vanishes).
class PoleError : public Error {
public:
    PoleError(const std::string& what, double x, double t)
        : Error(what), x_(x), t_(t) {}
    double x() const noexcept { return x_; }
    double t() const noexcept { return t_; }

private:
    double x_;
    double t_;
};

/// Grid too small for the finite-difference stencil.
class StencilError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::string field)
        : Error(what), line_(line), field_(std::move(field)) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace ncwave
