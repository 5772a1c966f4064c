#include "qgi/hyperlink_invariants.hpp"

#include <cmath>
#include <sstream>

#include "qgi/errors.hpp"

namespace qgi {

namespace {

double preimage_time(const StrandRef& ref, const Loop& first, const Loop& second) {
    const Loop& loop = ref.strand == 0 ? first : second;
    return time_of(loop.point_at(ref.edge, ref.u));
}

}  // namespace

int time_lag(const Crossing& c, const Loop& first, const Loop& second, double tol) {
    if (!c.inter_component) throw Error(ErrorKind::InvalidInput, "time-lag needs an inter-component crossing");
    const StrandRef& on_first = c.over.strand == 0 ? c.over : c.under;
    const StrandRef& on_second = c.over.strand == 0 ? c.under : c.over;
    const double t1 = preimage_time(on_first, first, second);
    const double t2 = preimage_time(on_second, first, second);
    if (std::abs(t1 - t2) <= tol) {
        std::ostringstream os;
        os << "crossing of '" << first.id << "' and '" << second.id << "' on " << to_string(c.plane)
           << " has equal preimage times " << t1;
        throw Error(ErrorKind::TimeTie, os.str());
    }
    return t1 < t2 ? 1 : -1;
}

std::vector<TimedCrossing> timed_crossings(const Loop& first, const Loop& second, Plane plane, double tol) {
    const Polyline3 link[] = {spatial_projection(first), spatial_projection(second)};
    const Diagram d = build_diagram(link, plane, tol);
    std::vector<TimedCrossing> out;
    for (const auto& c : d.crossings) {
        if (!c.inter_component) continue;
        TimedCrossing tc;
        tc.crossing = c;
        const StrandRef& on_first = c.over.strand == 0 ? c.over : c.under;
        const StrandRef& on_second = c.over.strand == 0 ? c.under : c.over;
        tc.x0_first = time_of(first.point_at(on_first.edge, on_first.u));
        tc.x0_second = time_of(second.point_at(on_second.edge, on_second.u));
        tc.timelag = time_lag(c, first, second, tol);
        out.push_back(std::move(tc));
    }
    return out;
}

std::array<int, 3> sk_by_plane(const Loop& first, const Loop& second, double tol) {
    std::array<int, 3> sums{};
    for (Plane plane : kAllPlanes) {
        int s = 0;
        for (const auto& tc : timed_crossings(first, second, plane, tol)) s += tc.crossing.eps * tc.timelag;
        sums[index_of(plane) - 1] = s;
    }
    return sums;
}

int sk_pair(const Loop& first, const Loop& second, double tol) {
    const auto parts = sk_by_plane(first, second, tol);
    return parts[0] + parts[1] + parts[2];
}

SkResult sk_hyperlink(const TimeOrderedPair& pair, double tol) {
    SkResult r;
    for (const auto& lbar : pair.matter.loops)
        for (const auto& lunder : pair.geometric.loops) r.value += sk_pair(lbar, lunder, tol);
    r.invariant = all_comparable(order_matrix(pair.matter, pair.geometric));
    return r;
}

}  // namespace qgi
