#pragma once

#include "folded/decide.hpp"
#include "folded/surface.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace folded {

struct AxisParallelCertificate {
    bool pass = false;
    // Per subdivision segment: -1 when not axis-parallel, otherwise 0/1/2.
    std::vector<int> segmentAxis;
    std::vector<std::string> offending;
};

AxisParallelCertificate is_axis_parallel(const FoldedPolygon& P);

// Exact Frechet distance for axis-parallel subdivisions under the L-infinity
// metric: the monotonicity-test optimum, with each accepted diagonal verified
// against its geodesic shortest path. Throws std::invalid_argument when a
// certificate fails.
double exact_axis_parallel(const FoldedPolygon& P, const FoldedPolygon& Q,
                           std::string* diagnostic = nullptr);

// Axis-aligned half-space coord <= c (sign +1) or coord >= c (sign -1).
struct HalfSpace {
    int axis = 2;
    int sign = +1;
    double c = 0.0;
    bool contains(const Point3& p, double tol = kTol) const {
        double v = p[axis];
        return sign > 0 ? v <= c + tol : v >= c - tol;
    }
};

struct HalfSpaceCheck {
    int samplesTried = 0;
    int samplesInR = 0;
    bool geodesicInR = false;
    bool violation = false; // some sampled path stayed in R but the geodesic left it
    std::string detail;
};

HalfSpaceCheck halfspace_restriction_check(const FoldedPolygon& Q, const HalfSpace& R,
                                           const BoundaryPoint& a, const BoundaryPoint& b,
                                           int samplePaths, std::uint64_t seed);

struct SequenceEquivalence {
    bool sequenceFeasible = false;
    bool geodesicWithinEps = false;
    double geodesicFrechet = 0.0;
};

// Compares sequence-following feasibility with the geodesic's Frechet
// distance at the same threshold.
SequenceEquivalence shortest_vs_sequence_equivalence(const FoldedPolygon& Q, const Segment& d,
                                                     const BoundaryPoint& u,
                                                     const BoundaryPoint& v, double eps,
                                                     Metric m);

} // namespace folded
