#pragma once

#include "folded/curves.hpp"
#include "folded/segmatch.hpp"
#include "folded/surface.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace folded {

// Diagonal of P with its boundary-cycle anchoring. The segment runs from the
// endpoint met first along the boundary cycle.
struct DiagonalInfo {
    int edgeIdx = -1; // index into P.interiorEdges
    Segment seg;
    int posStart = 0, posEnd = 0; // boundary-cycle positions of the endpoints
};

std::vector<DiagonalInfo> diagonals_of(const FoldedPolygon& P);

struct Placement {
    int diag = -1;
    BoundaryPoint u, v; // on the boundary of Q
};

struct DiagonalWitness {
    Placement placement;
    FrechetShortestPath path; // includes edge ids, preimages, crossings
};

// Host boundary edges (rows of the doubled diagram, in [0, 2q)) assigned to
// each diagonal-endpoint column, listed per diagonal as (row of u, row of v).
struct CombinatorialClass {
    std::vector<std::pair<int, int>> hostRows;
    bool operator<(const CombinatorialClass& o) const { return hostRows < o.hostRows; }
    bool operator==(const CombinatorialClass& o) const { return hostRows == o.hostRows; }
};

struct MonotoneDiagonalMapping {
    double eps = 0.0;
    Metric metric = Metric::L2;
    BoundaryMatching matching; // cut-P params vs unrolled doubled-Q params
    CombinatorialClass cls;
    std::vector<DiagonalWitness> witnesses;
};

std::optional<MonotoneDiagonalMapping> diagonal_monotonicity_test(const FoldedPolygon& P,
                                                                  const FoldedPolygon& Q,
                                                                  double eps, Metric m);

// Every accepting class (host rows reduced mod q are deduplicated), in
// lexicographic class order. maxClasses caps the enumeration.
std::vector<MonotoneDiagonalMapping> all_accepting_mappings(const FoldedPolygon& P,
                                                            const FoldedPolygon& Q, double eps,
                                                            Metric m,
                                                            std::size_t maxClasses = 4096);

std::vector<double> surface_critical_values(const FoldedPolygon& P, const FoldedPolygon& Q,
                                            Metric m);

double minimize_monotonicity_eps(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m,
                                 std::string* diagnostic = nullptr);

// Diagonals whose sequences contain the given interior edge of Q, ordered as
// their boundary endpoints occur on the arc cut off by that edge.
std::vector<int> proper_intersection_order(const FoldedPolygon& Q,
                                           const std::vector<Placement>& placements,
                                           const std::vector<std::vector<int>>& seqs,
                                           int interiorEdge);

struct ConvexReductionCheck {
    double surfaceValue = 0.0;
    double boundaryValue = 0.0;
    bool ok = false;
};

// For a convex single-face Q the surface pipeline must agree with the
// boundary-curve Frechet distance.
ConvexReductionCheck convex_target_reduction_check(const FoldedPolygon& P,
                                                   const FoldedPolygon& Q, Metric m);

// Re-verification of a mapping from raw geometry: all matched boundary pairs
// within eps, every witness path within eps of its diagonal.
bool verify_mapping(const FoldedPolygon& P, const FoldedPolygon& Q,
                    const MonotoneDiagonalMapping& map, std::string* whyNot = nullptr);

// Conversion between cut-curve parameters (the diagram x axis) and boundary
// parameters of P.
double cut_param_to_boundary(const FoldedPolygon& P, double x);
int boundary_pos_to_cut_column(const FoldedPolygon& P, int pos);

} // namespace folded
