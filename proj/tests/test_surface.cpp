#include "folded/fixtures.hpp"
#include "folded/surface.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace folded;

namespace {

RawSurface two_squares_folded() {
    // Unit squares sharing an edge, folded ninety degrees.
    RawSurface s;
    s.vertices = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(1, 1, 0), Point3(0, 1, 0),
                  Point3(1, 0, 1), Point3(1, 1, 1)};
    s.faces = {{0, 1, 2, 3}, {1, 4, 5, 2}};
    s.boundary = {0, 1, 4, 5, 2, 3};
    return s;
}

FoldedPolygon must_validate(const RawSurface& s) {
    ValidationResult v = validate(s);
    if (!v.ok)
        for (auto& msg : v.violations) MESSAGE(msg);
    REQUIRE(v.ok);
    return *v.polygon;
}

} // namespace

TEST_CASE("validate accepts folded squares") {
    FoldedPolygon p = must_validate(two_squares_folded());
    CHECK(p.interiorEdges.size() == 1);
    CHECK(p.boundary_size() == 6);
}

TEST_CASE("validate rejects interior vertices") {
    // A triangulated square around a center vertex: the center is interior.
    RawSurface s;
    s.vertices = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(1, 1, 0), Point3(0, 1, 0),
                  Point3(0.5, 0.5, 0)};
    s.faces = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    s.boundary = {0, 1, 2, 3};
    ValidationResult v = validate(s);
    CHECK(!v.ok);
    bool mentions = false;
    for (auto& msg : v.violations)
        if (msg.find("interior vertex") != std::string::npos ||
            msg.find("not acyclic") != std::string::npos)
            mentions = true;
    CHECK(mentions);
}

TEST_CASE("validate rejects a cyclic dual") {
    // Annulus-like: four quads around a square hole; the dual is a cycle and
    // the boundary is not a single cycle either.
    RawSurface s;
    s.vertices = {Point3(0, 0, 0),  Point3(3, 0, 0),  Point3(3, 3, 0),  Point3(0, 3, 0),
                  Point3(1, 1, 0),  Point3(2, 1, 0),  Point3(2, 2, 0),  Point3(1, 2, 0)};
    s.faces = {{0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    s.boundary = {0, 1, 2, 3};
    ValidationResult v = validate(s);
    CHECK(!v.ok);
}

TEST_CASE("validate rejects non-convex faces") {
    RawSurface s;
    s.vertices = {Point3(0, 0, 0), Point3(2, 0, 0), Point3(2, 2, 0), Point3(1, 0.5, 0),
                  Point3(0, 2, 0)};
    s.faces = {{0, 1, 2, 3, 4}};
    s.boundary = {0, 1, 2, 3, 4};
    ValidationResult v = validate(s);
    CHECK(!v.ok);
    bool convexMsg = false;
    for (auto& msg : v.violations)
        if (msg.find("not convex") != std::string::npos) convexMsg = true;
    CHECK(convexMsg);
}

TEST_CASE("edge sequences follow the dual path") {
    RawSurface raw = staircase_surface(3);
    FoldedPolygon p = must_validate(raw);
    // First and last faces of the chain.
    BoundaryPoint u{0, 0.5};
    int lastFace = (int)p.faces.size() - 1;
    // Find a boundary edge owned by the last face.
    int lastEdge = -1;
    for (int i = 0; i < p.boundary_size(); ++i)
        if (p.boundaryEdgeFace[i] == lastFace) lastEdge = i;
    REQUIRE(lastEdge >= 0);
    BoundaryPoint v{lastEdge, 0.5};
    auto seq = shortest_path_edge_sequence(p, u, v);
    CHECK(seq.size() == p.faces.size() - 1);
    // Same-face points give the empty sequence.
    CHECK(shortest_path_edge_sequence(p, u, BoundaryPoint{0, 0.9}).empty());
}

TEST_CASE("edge sequence equals brute-force unique dual path") {
    for (int seed = 1; seed <= 8; ++seed) {
        FoldedPolygon p = must_validate(random_folded_surface(seed, 5));
        // Brute force: enumerate all simple paths in the dual between two faces.
        for (int fu = 0; fu < (int)p.faces.size(); ++fu)
            for (int fv = 0; fv < (int)p.faces.size(); ++fv) {
                auto path = dual_path_faces(p, fu, fv);
                // Unique simple path by exhaustive DFS.
                std::vector<std::vector<int>> all;
                std::vector<int> cur{fu};
                std::vector<char> used(p.faces.size(), 0);
                used[fu] = 1;
                std::function<void(int)> dfs = [&](int f) {
                    if (f == fv) {
                        all.push_back(cur);
                        return;
                    }
                    for (auto [g, e] : p.dual[f])
                        if (!used[g]) {
                            used[g] = 1;
                            cur.push_back(g);
                            dfs(g);
                            cur.pop_back();
                            used[g] = 0;
                        }
                };
                dfs(fu);
                REQUIRE(all.size() == 1);
                CHECK(all[0] == path);
            }
    }
}

TEST_CASE("geodesic on a flat surface is the straight segment") {
    RawSurface s;
    s.vertices = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(2, 0, 0), Point3(2, 1, 0),
                  Point3(1, 1, 0), Point3(0, 1, 0)};
    s.faces = {{0, 1, 4, 5}, {1, 2, 3, 4}};
    s.boundary = {0, 1, 2, 3, 4, 5};
    FoldedPolygon p = must_validate(s);
    BoundaryPoint u{5, 0.5}; // on (5,0) west side
    BoundaryPoint v{2, 0.5}; // on (2,3) east side
    GeodesicPath g = geodesic_shortest_path(p, u, v);
    double direct = (p.boundary_point(v) - p.boundary_point(u)).norm();
    CHECK(g.length == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("two-face fold matches the planar unfolding oracle") {
    FoldedPolygon p = must_validate(two_squares_folded());
    // u on the bottom square south side, v symmetric on the folded wing.
    BoundaryPoint u{0, 0.5}; // between (0,0,0) and (1,0,0)
    BoundaryPoint v{1, 0.5}; // between (1,0,0)->(1,0,1)
    GeodesicPath g = geodesic_shortest_path(p, u, v);
    // Unfold the second square into the plane of the first: the crossing edge
    // is x=1; unfolded target of v.
    Point3 pu = p.boundary_point(u);
    Point3 pv = p.boundary_point(v);
    REQUIRE(g.edgeSeq.size() == 1);
    Point3 unfolded(1.0 + pv.z, pv.y, 0.0);
    double oracle = (unfolded - pu).norm();
    CHECK(g.length == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("geodesic beats random feasible crossing vectors") {
    Rng rng(909);
    for (int seed = 1; seed <= 6; ++seed) {
        FoldedPolygon p = must_validate(random_folded_surface(seed, 4));
        BoundaryPoint u{0, 0.3};
        int lastFace = (int)p.faces.size() - 1;
        int lastEdge = -1;
        for (int i = 0; i < p.boundary_size(); ++i)
            if (p.boundaryEdgeFace[i] == lastFace) lastEdge = i;
        BoundaryPoint v{lastEdge, 0.6};
        GeodesicPath g = geodesic_shortest_path(p, u, v);
        std::vector<Segment> segs;
        for (int e : g.edgeSeq) segs.push_back(p.interior_edge_segment(e));
        for (int it = 0; it < 2000; ++it) {
            std::vector<Point3> pts{p.boundary_point(u)};
            for (const Segment& s : segs) pts.push_back(s.at(rng.uniform()));
            pts.push_back(p.boundary_point(v));
            CHECK(g.length <= polyline_length(pts) + 1e-7);
        }
    }
}

TEST_CASE("geodesic length is convex in the crossing parameters") {
    FoldedPolygon p = must_validate(random_folded_surface(3, 5));
    BoundaryPoint u{0, 0.4};
    int lastFace = (int)p.faces.size() - 1;
    int lastEdge = -1;
    for (int i = 0; i < p.boundary_size(); ++i)
        if (p.boundaryEdgeFace[i] == lastFace) lastEdge = i;
    BoundaryPoint v{lastEdge, 0.5};
    auto seq = shortest_path_edge_sequence(p, u, v);
    std::vector<Segment> segs;
    for (int e : seq) segs.push_back(p.interior_edge_segment(e));
    Point3 pu = p.boundary_point(u), pv = p.boundary_point(v);
    auto lengthOf = [&](const std::vector<double>& s) {
        std::vector<Point3> pts{pu};
        for (size_t i = 0; i < segs.size(); ++i) pts.push_back(segs[i].at(s[i]));
        pts.push_back(pv);
        return polyline_length(pts);
    };
    Rng rng(11);
    for (int it = 0; it < 500; ++it) {
        std::vector<double> a(segs.size()), b(segs.size()), mid(segs.size());
        for (size_t i = 0; i < segs.size(); ++i) {
            a[i] = rng.uniform();
            b[i] = rng.uniform();
            mid[i] = 0.5 * (a[i] + b[i]);
        }
        CHECK(lengthOf(mid) <= 0.5 * (lengthOf(a) + lengthOf(b)) + 1e-9);
    }
}

TEST_CASE("geodesic is symmetric under endpoint swap") {
    for (int seed = 2; seed <= 6; ++seed) {
        FoldedPolygon p = must_validate(random_folded_surface(seed, 4));
        BoundaryPoint u{0, 0.25};
        int lastFace = (int)p.faces.size() - 1;
        int lastEdge = -1;
        for (int i = 0; i < p.boundary_size(); ++i)
            if (p.boundaryEdgeFace[i] == lastFace) lastEdge = i;
        BoundaryPoint v{lastEdge, 0.75};
        GeodesicPath g1 = geodesic_shortest_path(p, u, v);
        GeodesicPath g2 = geodesic_shortest_path(p, v, u);
        CHECK(g1.length == doctest::Approx(g2.length).epsilon(1e-7));
    }
}

TEST_CASE("fixtures validate") {
    CHECK(validate(fan_surface(5)).ok);
    CHECK(validate(staircase_surface(3)).ok);
    CHECK(validate(slanted_bump_surface()).ok);
    for (int seed = 1; seed <= 10; ++seed) {
        CHECK(validate(random_folded_surface(seed, 4)).ok);
        CHECK(validate(random_axis_parallel_surface(seed, 4)).ok);
        CHECK(validate(random_convex_surface(seed, 6)).ok);
    }
    auto [P, Q] = appendix_b_pair();
    CHECK(validate(P).ok);
    CHECK(validate(Q).ok);
    FoldedPolygon fp = *validate(P).polygon;
    CHECK(fp.interiorEdges.size() == 2);
}

TEST_CASE("fan fixture has the advertised diagonal count") {
    FoldedPolygon p = must_validate(fan_surface(5));
    CHECK(p.interiorEdges.size() == 4);
}

TEST_CASE("fixture generator is deterministic") {
    RawSurface a = random_folded_surface(7, 4);
    RawSurface b = random_folded_surface(7, 4);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (size_t i = 0; i < a.vertices.size(); ++i) {
        CHECK(a.vertices[i].x == b.vertices[i].x);
        CHECK(a.vertices[i].y == b.vertices[i].y);
        CHECK(a.vertices[i].z == b.vertices[i].z);
    }
}
