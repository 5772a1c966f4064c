#include "qgi/errors.hpp"

namespace qgi {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateDiagram: return "DegenerateDiagram";
        case ErrorKind::ParallelTangents: return "ParallelTangents";
        case ErrorKind::NumericalInstability: return "NumericalInstability";
        case ErrorKind::TimeTie: return "TimeTie";
        case ErrorKind::TangentIntersection: return "TangentIntersection";
        case ErrorKind::BoundaryGraze: return "BoundaryGraze";
        case ErrorKind::SurfaceContact: return "SurfaceContact";
        case ErrorKind::NotTimeOrdered: return "NotTimeOrdered";
        case ErrorKind::NonSeparatingProjection: return "NonSeparatingProjection";
        case ErrorKind::DegenerateRay: return "DegenerateRay";
        case ErrorKind::OnBoundary: return "OnBoundary";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NoAdmissibleMove: return "NoAdmissibleMove";
        case ErrorKind::InvarianceBroken: return "InvarianceBroken";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

bool Error::is_degeneracy() const noexcept {
    switch (kind_) {
        case ErrorKind::DegenerateDiagram:
        case ErrorKind::ParallelTangents:
        case ErrorKind::NumericalInstability:
        case ErrorKind::TimeTie:
        case ErrorKind::TangentIntersection:
        case ErrorKind::BoundaryGraze:
        case ErrorKind::DegenerateRay:
            return true;
        default:
            return false;
    }
}

}  // namespace qgi
