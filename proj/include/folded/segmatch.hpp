#pragma once

#include "folded/geometry.hpp"
#include "folded/surface.hpp"

#include <optional>
#include <vector>

namespace folded {

// Witness curve through Q matching a diagonal d against an edge sequence:
// straight segments between consecutive edge crossings, preimages monotone
// along d.
struct FrechetShortestPath {
    Point3 u, v;                   // endpoints on the target boundary
    std::vector<int> edgeSeq;      // interior edge ids (context supplied by caller)
    std::vector<double> tOnD;      // preimage parameters on d, nondecreasing
    std::vector<double> sOnEdge;   // crossing parameter on each edge
    std::vector<Point3> polyline;  // u, crossings..., v
};

// Feasibility and witness construction for matching segment d against the
// edge sequence (given as geometry) from u to v at threshold eps. Absent iff
// no curve following the sequence stays within Frechet distance eps of d.
std::optional<FrechetShortestPath> match_segment_to_sequence(const Segment& d,
                                                             const std::vector<Segment>& seq,
                                                             const Point3& u, const Point3& v,
                                                             double eps, Metric m);

// Convenience overload resolving interior-edge ids of Q.
std::optional<FrechetShortestPath> match_segment_to_sequence(const Segment& d,
                                                             const FoldedPolygon& Q,
                                                             const std::vector<int>& edgeIds,
                                                             const Point3& u, const Point3& v,
                                                             double eps, Metric m);

// Evaluates feasibility for a sequence and one of its subsequences; the
// second component can only be false when the first is.
std::pair<bool, bool> subsequence_feasibility(const Segment& d,
                                              const std::vector<Segment>& fullSeq,
                                              const std::vector<int>& subIndices,
                                              const Point3& u, const Point3& v, double eps,
                                              Metric m);

// Exact Frechet distance between a segment and a polyline.
double frechet_segment_to_path(const Segment& d, const std::vector<Point3>& path, Metric m);

} // namespace folded
