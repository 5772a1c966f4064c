#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgi {

enum class ErrorKind {
    DegenerateDiagram,
    ParallelTangents,
    NumericalInstability,
    TimeTie,
    TangentIntersection,
    BoundaryGraze,
    SurfaceContact,
    NotTimeOrdered,
    NonSeparatingProjection,
    DegenerateRay,
    OnBoundary,
    InvalidInput,
    NoAdmissibleMove,
    InvarianceBroken,
    ParseError,
    SchemaError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for all hard failures; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors caused by knife-edge geometry rather than bad input.
    bool is_degeneracy() const noexcept;

private:
    ErrorKind kind_;
};

}  // namespace qgi
