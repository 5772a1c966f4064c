#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgi {

enum class ViolationKind {
    Structure,
    T1,
    T2,
    NotGenericPosition,
    Incomparable,
    SurfaceInvalid,
    SurfaceContact,
    SurfaceOrder,
    RegionInvalid,
    RegionContact,
    MixedSigns,
    OddNodeCount,
    NodeInvalid,
    OnBoundary,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty report means valid.
struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    /// True when every violation is of a knife-edge kind (non-generic position).
    bool only_degeneracies() const;

    void add(ViolationKind kind, std::string detail) {
        violations.push_back({kind, std::move(detail)});
    }
    void merge(const ValidationReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

}  // namespace qgi
