#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgi/framing_region.hpp"
#include "qgi/geom4.hpp"
#include "qgi/mesh.hpp"
#include "qgi/surface_invariants.hpp"

namespace qgi {

inline constexpr const char* kToolName = "qgi";
inline constexpr const char* kToolVersion = "1.0.0";

/// Full problem instance: matter hyperlink with its nodes, geometric
/// hyperlink, surfaces and regions.
struct Scene {
    double tolerance = kDefaultTolerance;
    Hyperlink matter;
    Hyperlink geometric;
    /// Nodes live on matter loops.
    std::vector<Node> nodes;
    std::vector<Surface4> surfaces;
    std::vector<Region3> regions;

    std::vector<Loop> all_loops() const;
    FramedHyperlink framed_matter() const { return {matter, nodes}; }
};

struct Provenance {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Invariants of a scene. Entries are present only when the inputs they need
/// are present and the scene validated.
struct InvariantReport {
    std::optional<int> sk;
    /// False when some matter/geometric pair is not time-ordered.
    std::optional<bool> sk_invariant;
    /// surface id -> "A0".."A3" -> lk(geometric, S)
    std::map<std::string, std::map<std::string, int>> lk_surface;
    /// surface id -> piercing number of the matter hyperlink
    std::map<std::string, PiercingNumber> nu_S;
    /// region id -> confinement number of the matter hyperlink
    std::map<std::string, int> nu_R;
    ValidationReport validation;
    Provenance provenance;

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// Static checks only: structure, time-likeness, ordering, meshes, contacts, frame.
ValidationReport check_scene(const Scene& s);

/// check_scene plus a dry run of every invariant; knife-edge failures during
/// the dry run become NotGenericPosition entries.
ValidationReport validate_scene(const Scene& s);

/// Validates, then computes the invariants. Violations that only affect the
/// invariance of sk (incomparable matter/geometric pairs) do not block the
/// computation; every other violation leaves the invariant fields empty.
InvariantReport compute_invariants(const Scene& s, std::span<const ProjectionAxis> axes = kAllAxes);

/// Same invariants without validation; throws qgi::Error on any failure.
InvariantReport compute_invariants_unchecked(const Scene& s, std::span<const ProjectionAxis> axes = kAllAxes);

/// Applies a seeded random spatial rotation about the origin to every object.
Scene pregeneric(const Scene& s, std::uint64_t seed);

/// Maps a computation error to the violation it represents.
ViolationKind violation_for(const class Error& e);

}  // namespace qgi
