#include "folded/axis.hpp"

#include "folded/segmatch.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace folded {

namespace {

int axis_of(const Vec3& d, double tol) {
    double a[3] = {std::fabs(d.x), std::fabs(d.y), std::fabs(d.z)};
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (a[i] > a[best]) best = i;
    if (a[best] <= tol) return -1;
    for (int i = 0; i < 3; ++i)
        if (i != best && a[i] > tol) return -1;
    return best;
}

double urand(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * (1.0 / 9007199254740992.0);
}

} // namespace

AxisParallelCertificate is_axis_parallel(const FoldedPolygon& P) {
    AxisParallelCertificate cert;
    cert.pass = true;
    const double tol = kTol * P.extent();
    std::set<std::pair<int, int>> seen;
    int idx = 0;
    for (size_t fi = 0; fi < P.faces.size(); ++fi) {
        const auto& f = P.faces[fi];
        for (size_t i = 0; i < f.size(); ++i) {
            int a = f[i], b = f[(i + 1) % f.size()];
            auto key = std::minmax(a, b);
            if (!seen.insert({key.first, key.second}).second) continue;
            Vec3 d = P.vertices[b] - P.vertices[a];
            int ax = axis_of(d, tol);
            cert.segmentAxis.push_back(ax);
            if (ax < 0) {
                cert.pass = false;
                cert.offending.push_back("segment (" + std::to_string(a) + "," +
                                         std::to_string(b) + ") not axis-parallel");
            }
            ++idx;
        }
    }
    (void)idx;
    return cert;
}

double exact_axis_parallel(const FoldedPolygon& P, const FoldedPolygon& Q, std::string* diagnostic) {
    AxisParallelCertificate cp = is_axis_parallel(P);
    AxisParallelCertificate cq = is_axis_parallel(Q);
    if (!cp.pass || !cq.pass)
        throw std::invalid_argument("axis-parallel certificate failed");
    const Metric m = Metric::Linf;
    double value = minimize_monotonicity_eps(P, Q, m);
    // Verification: at the optimum, every accepted diagonal must also match
    // its plain geodesic shortest path within the same threshold.
    auto map = diagonal_monotonicity_test(P, Q, value, m);
    if (!map) {
        if (diagnostic) *diagnostic = "optimum no longer accepted on re-check";
        return value;
    }
    std::vector<DiagonalInfo> ds = diagonals_of(P);
    for (const DiagonalWitness& w : map->witnesses) {
        GeodesicPath geo = geodesic_shortest_path(Q, w.placement.u, w.placement.v);
        double df = frechet_segment_to_path(ds[w.placement.diag].seg, geo.polyline, m);
        if (df > value + 1e-6 && diagnostic)
            *diagnostic = "geodesic verification exceeded the optimum by " +
                          std::to_string(df - value);
    }
    return value;
}

HalfSpaceCheck halfspace_restriction_check(const FoldedPolygon& Q, const HalfSpace& R,
                                           const BoundaryPoint& a, const BoundaryPoint& b,
                                           int samplePaths, std::uint64_t seed) {
    HalfSpaceCheck res;
    Point3 pa = Q.boundary_point(a), pb = Q.boundary_point(b);
    if (!R.contains(pa) || !R.contains(pb)) {
        res.detail = "endpoints not inside the half-space";
        return res;
    }
    std::vector<int> seq = shortest_path_edge_sequence(Q, a, b);
    std::vector<Segment> segs;
    for (int e : seq) segs.push_back(Q.interior_edge_segment(e));
    std::mt19937_64 rng(seed);
    for (int it = 0; it < samplePaths; ++it) {
        ++res.samplesTried;
        bool in = true;
        for (const Segment& s : segs) {
            Point3 p = s.at(urand(rng));
            if (!R.contains(p)) { in = false; break; }
        }
        if (in) ++res.samplesInR;
    }
    GeodesicPath geo = geodesic_shortest_path(Q, a, b);
    res.geodesicInR = true;
    for (const Point3& p : geo.polyline)
        if (!R.contains(p, 10 * kTol)) res.geodesicInR = false;
    res.violation = res.samplesInR > 0 && !res.geodesicInR;
    if (res.violation) res.detail = "a sampled in-R path exists but the geodesic leaves R";
    return res;
}

SequenceEquivalence shortest_vs_sequence_equivalence(const FoldedPolygon& Q, const Segment& d,
                                                     const BoundaryPoint& u,
                                                     const BoundaryPoint& v, double eps,
                                                     Metric m) {
    SequenceEquivalence res;
    std::vector<int> seq = shortest_path_edge_sequence(Q, u, v);
    Point3 pu = Q.boundary_point(u), pv = Q.boundary_point(v);
    res.sequenceFeasible = match_segment_to_sequence(d, Q, seq, pu, pv, eps, m).has_value();
    GeodesicPath geo = geodesic_shortest_path(Q, u, v);
    res.geodesicFrechet = frechet_segment_to_path(d, geo.polyline, m);
    res.geodesicWithinEps = res.geodesicFrechet <= eps + 1e-7;
    return res;
}

} // namespace folded
