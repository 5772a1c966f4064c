#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgi/errors.hpp"
#include "qgi/scene.hpp"
#include "qgi/transform.hpp"

namespace qgi {

enum class MoveKind { SpatialRigid, TimeTranslateComponent, VertexJitter, EdgeSubdivide, NodeSlide, RegionRigid };

inline constexpr MoveKind kAllMoveKinds[] = {MoveKind::SpatialRigid, MoveKind::TimeTranslateComponent,
                                             MoveKind::VertexJitter, MoveKind::EdgeSubdivide,
                                             MoveKind::NodeSlide,     MoveKind::RegionRigid};

std::string to_string(MoveKind k);
std::optional<MoveKind> parse_move_kind(std::string_view name);

/// One discrete deformation step. Only the fields of its kind are meaningful.
struct Move {
    MoveKind kind = MoveKind::SpatialRigid;
    std::uint64_t seed = 0;
    /// Loop id (TimeTranslateComponent, VertexJitter, EdgeSubdivide) or region id (RegionRigid).
    std::string target;
    /// Vertex, edge or node index.
    std::size_t index = 0;
    /// Time shift, subdivision parameter, or signed slide length.
    double amount = 0.0;
    /// Vertex displacement for VertexJitter.
    Point4 delta{};
    /// SpatialRigid and RegionRigid.
    RigidMotion motion;
    /// Admissibility bound the sampler respected (0 for EdgeSubdivide).
    double bound = 0.0;
};

struct FuzzOptions {
    std::vector<MoveKind> moves{std::begin(kAllMoveKinds), std::end(kAllMoveKinds)};
    /// Samples moves with bounds switched off.
    bool adversarial = false;
    /// Keep going until this many steps were accepted instead of stopping
    /// after this many attempts.
    bool until_accepted = false;
    /// Attempt cap when until_accepted is set.
    std::size_t max_attempts = 100000;
};

/// Deterministic in (scene, seed, options). Throws Error(NoAdmissibleMove)
/// when no enabled kind applies with a bound above the tolerance.
Move generate_move(const Scene& s, std::uint64_t seed, const FuzzOptions& opts = {});

Scene apply_move(const Scene& s, const Move& m);

enum class StepViolationKind { TimeLikeLost, OrderingFlipped, SurfaceBoundaryOrderLost, NodeCrossedBoundary, InvariantChanged };
std::string to_string(StepViolationKind k);

struct StepViolation {
    StepViolationKind kind;
    std::string detail;
    /// InvariantChanged only.
    std::string name, before, after;
};

struct StepReport {
    Move move;
    std::vector<StepViolation> violations;

    bool ok() const { return violations.empty(); }
    /// True when some violation is an admissibility failure rather than an invariant change.
    bool inadmissible() const;
    bool invariant_changed() const;
};

/// Admissibility of before -> after plus comparison of all invariants.
StepReport check_step(const Scene& before, const Scene& after);

struct FuzzSummary {
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    std::size_t accepted = 0;
    std::size_t skipped = 0;
    std::map<std::string, std::size_t> accepted_by_kind;
    /// Skips counted by the first violation kind of the step.
    std::map<std::string, std::size_t> skipped_by_reason;
    /// Invariants of the starting scene, unchanged across the run.
    InvariantReport invariants;
    Scene final_scene;
};

/// Thrown by fuzz when an admissible step changes an invariant.
class InvarianceBrokenError : public Error {
public:
    InvarianceBrokenError(std::size_t step, StepReport report);
    std::size_t step() const { return step_; }
    const StepReport& report() const { return report_; }

private:
    std::size_t step_;
    StepReport report_;
};

/// Runs generated moves from `seed`, skipping inadmissible ones. The scene must
/// validate. Throws InvarianceBrokenError on an invariant change in an
/// admissible step.
FuzzSummary fuzz(const Scene& s, std::size_t n_steps, std::uint64_t seed, const FuzzOptions& opts = {});

}  // namespace qgi
