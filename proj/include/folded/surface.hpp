#pragma once

#include "folded/curves.hpp"
#include "folded/geometry.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace folded {

// Raw surface description as parsed from a document; validated into a
// FoldedPolygon before use.
struct RawSurface {
    std::vector<Point3> vertices;
    std::vector<std::vector<int>> faces; // vertex index cycles
    std::vector<int> boundary;           // vertex index cycle
    std::string name;
};

struct InteriorEdge {
    int v0 = -1, v1 = -1; // oriented: v0 is first along the boundary cycle
    int f0 = -1, f1 = -1; // incident faces
};

// Point on the boundary cycle: parameter t in [0,1] along boundary edge
// (boundary[edge] -> boundary[edge+1]).
struct BoundaryPoint {
    int edge = 0;
    double t = 0.0;
};

struct FoldedPolygon {
    std::vector<Point3> vertices;
    std::vector<std::vector<int>> faces;
    std::vector<int> boundary;
    std::vector<InteriorEdge> interiorEdges;
    std::vector<int> boundaryEdgeFace;                   // face owning boundary edge i
    std::vector<std::vector<std::pair<int, int>>> dual;  // face -> (neighbor face, interior edge)
    std::vector<int> boundaryPos;                        // vertex -> position in boundary cycle (or -1)
    std::string name;

    int boundary_size() const { return (int)boundary.size(); }
    Segment boundary_edge(int i) const {
        int n = boundary_size();
        return Segment(vertices[boundary[i % n]], vertices[boundary[(i + 1) % n]]);
    }
    Segment interior_edge_segment(int e) const {
        return Segment(vertices[interiorEdges[e].v0], vertices[interiorEdges[e].v1]);
    }
    Point3 boundary_point(const BoundaryPoint& p) const { return boundary_edge(p.edge).at(p.t); }
    double boundary_param(const BoundaryPoint& p) const { return p.edge + p.t; }
    BoundaryPoint point_at_param(double s) const {
        int n = boundary_size();
        s = std::fmod(s, (double)n);
        if (s < 0) s += n;
        int e = std::min((int)s, n - 1);
        return BoundaryPoint{e, s - e};
    }
    PolyCurve boundary_curve() const {
        PolyCurve c;
        c.closed = true;
        for (int v : boundary) c.vertices.push_back(vertices[v]);
        return c;
    }
    int face_of_boundary_point(const BoundaryPoint& p) const { return boundaryEdgeFace[p.edge]; }
    // Axis-aligned size, used to scale tolerances in diagnostics.
    double extent() const;
};

struct ValidationResult {
    bool ok = false;
    std::vector<std::string> violations;
    std::optional<FoldedPolygon> polygon;
};

ValidationResult validate(const RawSurface& raw);

// Unique dual-tree face path between two faces (inclusive).
std::vector<int> dual_path_faces(const FoldedPolygon& Q, int fu, int fv);

// The interior edges crossed by any path between the two faces, in order.
std::vector<int> edge_sequence_between_faces(const FoldedPolygon& Q, int fu, int fv);

std::vector<int> shortest_path_edge_sequence(const FoldedPolygon& Q, const BoundaryPoint& u,
                                             const BoundaryPoint& v);

struct GeodesicPath {
    BoundaryPoint u, v;
    std::vector<int> edgeSeq;      // interior edge indices
    std::vector<double> crossings; // parameter on each interior edge (its oriented segment)
    std::vector<Point3> polyline;  // u, crossing points..., v
    double length = 0.0;
};

// Euclidean-shortest path between two boundary points along the unique edge
// sequence, by convex minimization over the crossing parameters.
GeodesicPath geodesic_shortest_path(const FoldedPolygon& Q, const BoundaryPoint& u,
                                    const BoundaryPoint& v);

double polyline_length(const std::vector<Point3>& pts);

} // namespace folded
