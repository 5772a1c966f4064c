#pragma once

#include <array>
#include <vector>

#include "qgi/diagram.hpp"
#include "qgi/geom4.hpp"

namespace qgi {

/// Inter-component crossing together with the times of its two preimages.
struct TimedCrossing {
    Crossing crossing;
    /// Time of the preimage on the first loop.
    double x0_first = 0.0;
    /// Time of the preimage on the second loop.
    double x0_second = 0.0;
    int timelag = 0;
};

/// +1 when the preimage on `first` is earlier than the preimage on `second`.
/// The crossing must come from a diagram whose strand 0 is pi_0(first) and
/// strand 1 is pi_0(second). Throws Error(TimeTie) when the times are within tol.
int time_lag(const Crossing& c, const Loop& first, const Loop& second, double tol = kDefaultTolerance);

/// Inter-component crossings of pi_0(first), pi_0(second) on one plane, with time-lags.
std::vector<TimedCrossing> timed_crossings(const Loop& first, const Loop& second, Plane plane,
                                           double tol = kDefaultTolerance);

/// Per-plane partial sums of eps * time-lag, indexed S1..S3.
std::array<int, 3> sk_by_plane(const Loop& first, const Loop& second, double tol = kDefaultTolerance);

/// Hyperlinking number: sum over the three coordinate planes of eps * time-lag.
int sk_pair(const Loop& first, const Loop& second, double tol = kDefaultTolerance);

struct SkResult {
    int value = 0;
    /// False when some (matter, geometric) pair is not time-ordered; the value
    /// is then the formula value but not an invariant of the pair.
    bool invariant = true;
};

/// Double sum of sk_pair over matter x geometric components.
SkResult sk_hyperlink(const TimeOrderedPair& pair, double tol = kDefaultTolerance);

}  // namespace qgi
