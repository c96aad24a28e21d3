#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nct {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonSquare : Error {
    explicit NonSquare(const std::string& what = "matrix is not square") : Error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what = "matrix is singular") : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what = "dimension mismatch") : Error(what) {}
};

struct DimensionTooSmall : Error {
    explicit DimensionTooSmall(const std::string& what = "dimension too small") : Error(what) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& what = "matrix determinant is not +-1") : Error(what) {}
};

struct NotSkew : Error {
    explicit NotSkew(const std::string& what = "matrix is not skew-symmetric") : Error(what) {}
};

/// Fractional-linear action undefined: C*theta + D singular at some step.
struct ActionUndefined : Error {
    std::size_t step;
    explicit ActionUndefined(std::size_t step_index = 0,
                             const std::string& what = "group action undefined at this theta")
        : Error(what + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
};

struct Theta11Singular : Error {
    explicit Theta11Singular(const std::string& what = "top-left 2x2 block of theta is zero")
        : Error(what) {}
};

struct ThetaMismatch : Error {
    explicit ThetaMismatch(const std::string& what = "operands live over different theta") : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what = "index out of range") : Error(what) {}
};

struct CutoffTooSmall : Error {
    explicit CutoffTooSmall(const std::string& what = "basis cutoff too small") : Error(what) {}
};

struct BoundaryViolation : Error {
    explicit BoundaryViolation(const std::string& what = "shifted support leaves the safe grid region")
        : Error(what) {}
};

struct NotRational : Error {
    explicit NotRational(const std::string& what = "value is not rational") : Error(what) {}
};

struct UnsupportedGenerator : Error {
    explicit UnsupportedGenerator(const std::string& what = "generator not supported by this check")
        : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what = "malformed input") : Error(what) {}
};

}  // namespace nct
