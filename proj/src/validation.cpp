#include "qgi/validation.hpp"

#include <algorithm>

namespace qgi {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Structure: return "Structure";
        case ViolationKind::T1: return "T1";
        case ViolationKind::T2: return "T2";
        case ViolationKind::NotGenericPosition: return "NotGenericPosition";
        case ViolationKind::Incomparable: return "Incomparable";
        case ViolationKind::SurfaceInvalid: return "SurfaceInvalid";
        case ViolationKind::SurfaceContact: return "SurfaceContact";
        case ViolationKind::SurfaceOrder: return "SurfaceOrder";
        case ViolationKind::RegionInvalid: return "RegionInvalid";
        case ViolationKind::RegionContact: return "RegionContact";
        case ViolationKind::MixedSigns: return "MixedSigns";
        case ViolationKind::OddNodeCount: return "OddNodeCount";
        case ViolationKind::NodeInvalid: return "NodeInvalid";
        case ViolationKind::OnBoundary: return "OnBoundary";
    }
    return "Unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

bool ValidationReport::only_degeneracies() const {
    return !violations.empty() &&
           std::all_of(violations.begin(), violations.end(), [](const Violation& v) {
               return v.kind == ViolationKind::NotGenericPosition;
           });
}

}  // namespace qgi
