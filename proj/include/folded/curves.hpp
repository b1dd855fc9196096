#pragma once

#include "folded/geometry.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace folded {

struct PolyCurve {
    std::vector<Point3> vertices;
    bool closed = false;

    int edge_count() const {
        if (vertices.size() < 2) return 0;
        return closed ? (int)vertices.size() : (int)vertices.size() - 1;
    }
    Segment edge(int i) const {
        int n = (int)vertices.size();
        return Segment(vertices[i % n], vertices[(i + 1) % n]);
    }
    // t in [0, edge_count]; closed curves wrap.
    Point3 at(double t) const;
    double param_length() const { return edge_count(); }
};

// Monotone boundary matching as a polyline of matched parameter pairs
// (x on curve f, y on curve g). For closed g the y values run unrolled
// (may exceed g.edge_count()); offset is the starting y.
struct BoundaryMatching {
    std::vector<std::array<double, 2>> pts;
    double offset = 0.0;
    double x_at_y(double y) const;
    double y_at_x(double x) const;
};

// Restriction used by the surface decision procedure: the monotone path must
// touch [ylo, yhi] (global y units) while crossing column x = column.
struct ColumnTouch {
    int column = 0;
    double ylo = 0.0, yhi = 0.0;
};

// Free-space grid over an open curve f (columns) and a list of row segments
// (rows; for closed curves the caller doubles the rows).
struct FreeSpaceGrid {
    int cols = 0; // number of f edges
    int rows = 0;
    // V[i][j]: feasible interval (row-local in [0,1]) on vertical line x=i in row j,
    //   i in 0..cols, j in 0..rows-1.
    // H[i][j]: feasible interval (col-local) on horizontal line y=j in column i,
    //   i in 0..cols-1, j in 0..rows.
    std::vector<std::vector<Interval>> V, H;

    void build(const std::vector<Segment>& colEdges, const std::vector<Segment>& rowEdges,
               double eps, Metric m);
};

// Result of a reachability run: per-vertical-boundary lowest reachable y
// (global units), +infinity when unreachable.
struct ReachTable {
    std::vector<std::vector<double>> rv; // rv[i][j], i in 0..cols, j in 0..rows-1
    std::vector<std::vector<double>> rh; // rh[i][j], i in 0..cols-1, j in 0..rows
};

// Propagates reachability from a seed point (0, seedY). Touch constraints
// force the path to intersect each given window while crossing its column.
ReachTable propagate_reachability(const FreeSpaceGrid& g, double seedY,
                                  const std::vector<ColumnTouch>& touches);

// Extracts a monotone witness path from (0, seedY) to (cols, targetY) given a
// successful reachability table; points are (x, global y) breakpoints.
std::vector<std::array<double, 2>> extract_witness_path(const FreeSpaceGrid& g,
                                                        const ReachTable& r, double seedY,
                                                        double targetY,
                                                        const std::vector<ColumnTouch>& touches);

bool frechet_decide_open(const PolyCurve& f, const PolyCurve& g, double eps, Metric m);

// Open-curve witness matching (empty when infeasible).
std::optional<BoundaryMatching> frechet_match_open(const PolyCurve& f, const PolyCurve& g,
                                                   double eps, Metric m);

std::optional<BoundaryMatching> frechet_decide_closed(const PolyCurve& f, const PolyCurve& g,
                                                      double eps, Metric m);

// Decision dispatching on the closed flag (both curves must agree).
bool frechet_decide(const PolyCurve& f, const PolyCurve& g, double eps, Metric m);

std::vector<double> curve_critical_values(const PolyCurve& f, const PolyCurve& g, Metric m);

double frechet_compute(const PolyCurve& f, const PolyCurve& g, Metric m);

// Upper bound via the uniform-speed matching (aligned start for closed curves).
double uniform_matching_bound(const PolyCurve& f, const PolyCurve& g, Metric m);

// Discrete Frechet distance over the vertex sequences (dynamic program);
// the brute-force oracle used by tests.
double discrete_frechet(const std::vector<Point3>& a, const std::vector<Point3>& b, Metric m);

// Subdivides every edge into k pieces (open curves).
std::vector<Point3> subsample_curve(const PolyCurve& c, int k);

} // namespace folded
