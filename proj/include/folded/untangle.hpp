#pragma once

#include "folded/decide.hpp"
#include "folded/surface.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace folded {

enum class Feas { Feasible, Infeasible, Indeterminate };

// Feasibility tolerance tau_feas; mutable so the CLI can override it.
double& feas_tolerance();

struct FeasReport {
    Feas verdict = Feas::Indeterminate;
    double gap = 0.0;        // residual violation for numeric verdicts
    std::string certificate; // short reason for exact infeasibility
};

// One crossing variable pair: diagonal diag crosses interior edge `edge` of Q
// at preimage t (on the diagonal) and parameter s (on the edge).
struct Crossing {
    int diag = -1;
    int edge = -1;
    int posInSeq = 0;
};

// Constraint system over crossing parameters: pairwise distance constraints,
// proper intersection order per edge, monotone preimages per diagonal.
struct UntangleSystem {
    const FoldedPolygon* Q = nullptr;
    double eps = 0.0;
    Metric m = Metric::L2;
    std::vector<Segment> diagSegs;           // per diagonal
    std::vector<std::vector<int>> seqs;      // per diagonal: interior edge ids
    std::vector<Crossing> crossings;         // flattened variables
    std::vector<std::vector<int>> byDiag;    // diagonal -> crossing indices in sequence order
    std::vector<std::vector<int>> byEdge;    // interior edge -> crossing indices in proper order
};

UntangleSystem build_untangle_system(const FoldedPolygon& P, const FoldedPolygon& Q,
                                     const MonotoneDiagonalMapping& map);

// Solves the system restricted to a subset of crossings (empty = all).
FeasReport solve_untangle(const UntangleSystem& sys, const std::vector<int>& crossingSubset = {});

FeasReport global_untangle_feasible(const FoldedPolygon& P, const FoldedPolygon& Q,
                                    const MonotoneDiagonalMapping& map);

// Single-edge untangleability: can points on the diagonals of D_e be mapped
// to crossing points on e within eps in the proper order.
bool untangle_space_feasible(const FoldedPolygon& Q, int interiorEdge,
                             const std::vector<Segment>& diagsInOrder, double eps, Metric m);

// Membership test for the single-edge space (exact greedy over s-windows).
bool untangle_space_contains(const FoldedPolygon& Q, int interiorEdge,
                             const std::vector<Segment>& diagsInOrder,
                             const std::vector<double>& tTuple, double eps, Metric m);

struct ConvexityProbeResult {
    int trials = 0;
    int feasiblePairs = 0;
    int violations = 0;
};

// Samples pairs of feasible tuples and checks midpoints (the convexity of the
// single-edge space).
ConvexityProbeResult convexity_probe(const FoldedPolygon& Q, int interiorEdge,
                                     const std::vector<Segment>& diagsInOrder, double eps,
                                     Metric m, int trials, std::uint64_t seed);

// Explicit H-polytope with closure rays, used by the ray-closure operation.
struct PropagationSpace {
    int dim = 0;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<std::vector<double>> rays;
};

PropagationSpace minkowski_ray_closure(const PropagationSpace& space,
                                       const std::vector<std::vector<double>>& rays);

bool propagation_space_contains(const PropagationSpace& space, const std::vector<double>& x);

// Bottom-up constraint propagation over the edge tree rooted at rootEdge;
// equivalent to the global feasibility of the same convex system.
FeasReport propagate_edge_tree(const FoldedPolygon& P, const FoldedPolygon& Q,
                               const MonotoneDiagonalMapping& map, int rootEdge);

struct FptResult {
    bool accepted = false;
    bool indeterminate = false;
    int classesTried = 0;
    std::optional<MonotoneDiagonalMapping> witness;
};

FptResult fpt_decide(const FoldedPolygon& P, const FoldedPolygon& Q, double eps, Metric m);

double fpt_compute(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m);

} // namespace folded
