#include "folded/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace folded {

double FoldedPolygon::extent() const {
    if (vertices.empty()) return 1.0;
    Vec3 lo = vertices[0], hi = vertices[0];
    for (const Point3& p : vertices) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    return std::max(1.0, (hi - lo).norm());
}

double polyline_length(const std::vector<Point3>& pts) {
    double L = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) L += (pts[i + 1] - pts[i]).norm();
    return L;
}

namespace {

Vec3 newell_normal(const std::vector<Point3>& vs, const std::vector<int>& face) {
    Vec3 n;
    for (size_t i = 0; i < face.size(); ++i) {
        const Point3& a = vs[face[i]];
        const Point3& b = vs[face[(i + 1) % face.size()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return n;
}

} // namespace

ValidationResult validate(const RawSurface& raw) {
    ValidationResult res;
    auto fail = [&](const std::string& msg) { res.violations.push_back(msg); };
    const int nv = (int)raw.vertices.size();

    if (nv < 3) fail("fewer than three vertices");
    if (raw.faces.empty()) fail("no faces");
    if (raw.boundary.size() < 3) fail("boundary cycle has fewer than three vertices");

    for (const Point3& p : raw.vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            fail("non-finite vertex coordinate");

    for (size_t fi = 0; fi < raw.faces.size(); ++fi)
        for (int v : raw.faces[fi])
            if (v < 0 || v >= nv) fail("face " + std::to_string(fi) + ": vertex index out of range");
    for (int v : raw.boundary)
        if (v < 0 || v >= nv) fail("boundary vertex index out of range");
    if (!res.violations.empty()) { res.ok = false; return res; }

    double scale = 1.0;
    for (const Point3& p : raw.vertices) scale = std::max(scale, p.norm());
    const double tol = kTol * scale * 10.0;

    // Face planarity and convexity (collinear vertices permitted).
    for (size_t fi = 0; fi < raw.faces.size(); ++fi) {
        const auto& f = raw.faces[fi];
        if (f.size() < 3) { fail("face " + std::to_string(fi) + ": fewer than three vertices"); continue; }
        Vec3 n = newell_normal(raw.vertices, f);
        double nn = n.norm();
        if (nn <= tol) { fail("face " + std::to_string(fi) + ": degenerate (zero area)"); continue; }
        n = n / nn;
        double d0 = n.dot(raw.vertices[f[0]]);
        for (int v : f)
            if (std::fabs(n.dot(raw.vertices[v]) - d0) > tol) {
                fail("face " + std::to_string(fi) + ": not planar");
                break;
            }
        const int k = (int)f.size();
        for (int i = 0; i < k; ++i) {
            Vec3 e0 = raw.vertices[f[(i + 1) % k]] - raw.vertices[f[i]];
            Vec3 e1 = raw.vertices[f[(i + 2) % k]] - raw.vertices[f[(i + 1) % k]];
            if (e0.cross(e1).dot(n) < -tol) {
                fail("face " + std::to_string(fi) + ": not convex");
                break;
            }
        }
    }

    // Edge/face incidence.
    std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> edgeFaces;
    for (size_t fi = 0; fi < raw.faces.size(); ++fi) {
        const auto& f = raw.faces[fi];
        for (size_t i = 0; i < f.size(); ++i) {
            int a = f[i], b = f[(i + 1) % f.size()];
            if (a == b) { fail("face " + std::to_string(fi) + ": repeated vertex in edge"); continue; }
            auto key = std::minmax(a, b);
            edgeFaces[{key.first, key.second}].push_back({(int)fi, a < b});
        }
    }

    std::set<std::pair<int, int>> boundaryEdgeSet;
    const int nb = (int)raw.boundary.size();
    {
        std::set<int> seen;
        for (int v : raw.boundary)
            if (!seen.insert(v).second) fail("boundary cycle repeats a vertex");
    }
    for (int i = 0; i < nb; ++i) {
        auto key = std::minmax(raw.boundary[i], raw.boundary[(i + 1) % nb]);
        boundaryEdgeSet.insert({key.first, key.second});
    }

    std::vector<InteriorEdge> interior;
    for (auto& [key, incid] : edgeFaces) {
        if (incid.size() > 2) {
            fail("non-manifold edge (" + std::to_string(key.first) + "," +
                 std::to_string(key.second) + ")");
        } else if (incid.size() == 2) {
            if (boundaryEdgeSet.count(key))
                fail("boundary edge shared by two faces (" + std::to_string(key.first) + "," +
                     std::to_string(key.second) + ")");
            if (incid[0].second == incid[1].second)
                fail("inconsistent face orientation across edge (" + std::to_string(key.first) +
                     "," + std::to_string(key.second) + ")");
            InteriorEdge e;
            e.v0 = key.first; e.v1 = key.second;
            e.f0 = incid[0].first; e.f1 = incid[1].first;
            interior.push_back(e);
        } else {
            if (!boundaryEdgeSet.count(key))
                fail("face edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                     ") on one face only but absent from the boundary cycle");
        }
    }
    for (const auto& be : boundaryEdgeSet) {
        auto it = edgeFaces.find(be);
        if (it == edgeFaces.end())
            fail("boundary edge (" + std::to_string(be.first) + "," + std::to_string(be.second) +
                 ") not an edge of any face");
    }

    // No interior vertices.
    std::vector<int> boundaryPos(nv, -1);
    for (int i = 0; i < nb; ++i) boundaryPos[raw.boundary[i]] = i;
    std::set<int> used;
    for (const auto& f : raw.faces)
        for (int v : f) used.insert(v);
    for (int v : used)
        if (boundaryPos[v] < 0) fail("interior vertex " + std::to_string(v));

    // Dual graph must be a tree.
    const int nf = (int)raw.faces.size();
    if ((int)interior.size() != nf - 1) {
        fail("dual graph not acyclic: " + std::to_string(interior.size()) + " interior edges for " +
             std::to_string(nf) + " faces");
    }
    {
        std::vector<std::vector<int>> adj(nf);
        for (const InteriorEdge& e : interior) {
            adj[e.f0].push_back(e.f1);
            adj[e.f1].push_back(e.f0);
        }
        std::vector<char> vis(nf, 0);
        std::deque<int> dq{0};
        vis[0] = 1;
        int cnt = 1;
        while (!dq.empty()) {
            int f = dq.front(); dq.pop_front();
            for (int g : adj[f])
                if (!vis[g]) { vis[g] = 1; ++cnt; dq.push_back(g); }
        }
        if (cnt != nf) fail("dual graph not connected");
    }

    if (!res.violations.empty()) { res.ok = false; return res; }

    FoldedPolygon poly;
    poly.vertices = raw.vertices;
    poly.faces = raw.faces;
    poly.boundary = raw.boundary;
    poly.name = raw.name;
    poly.boundaryPos = boundaryPos;
    // Orient interior edges to start at the endpoint met first along the
    // boundary cycle (traversal starting at boundary[0]).
    for (InteriorEdge e : interior) {
        if (boundaryPos[e.v1] < boundaryPos[e.v0]) std::swap(e.v0, e.v1);
        poly.interiorEdges.push_back(e);
    }
    std::sort(poly.interiorEdges.begin(), poly.interiorEdges.end(),
              [&](const InteriorEdge& a, const InteriorEdge& b) {
                  return std::pair(boundaryPos[a.v0], boundaryPos[a.v1]) <
                         std::pair(boundaryPos[b.v0], boundaryPos[b.v1]);
              });
    poly.dual.assign(nf, {});
    for (size_t ei = 0; ei < poly.interiorEdges.size(); ++ei) {
        const InteriorEdge& e = poly.interiorEdges[ei];
        poly.dual[e.f0].push_back({e.f1, (int)ei});
        poly.dual[e.f1].push_back({e.f0, (int)ei});
    }
    // Owner face of each boundary edge.
    std::map<std::pair<int, int>, int> edgeFace;
    for (auto& [key, incid] : edgeFaces)
        if (incid.size() == 1) edgeFace[key] = incid[0].first;
    poly.boundaryEdgeFace.resize(nb);
    for (int i = 0; i < nb; ++i) {
        auto key = std::minmax(raw.boundary[i], raw.boundary[(i + 1) % nb]);
        poly.boundaryEdgeFace[i] = edgeFace.at({key.first, key.second});
    }
    res.ok = true;
    res.polygon = std::move(poly);
    return res;
}

std::vector<int> dual_path_faces(const FoldedPolygon& Q, int fu, int fv) {
    const int nf = (int)Q.faces.size();
    std::vector<int> parent(nf, -2);
    std::deque<int> dq{fu};
    parent[fu] = -1;
    while (!dq.empty()) {
        int f = dq.front(); dq.pop_front();
        if (f == fv) break;
        for (auto [g, e] : Q.dual[f])
            if (parent[g] == -2) { parent[g] = f; dq.push_back(g); }
    }
    std::vector<int> path;
    for (int f = fv; f != -1; f = parent[f]) path.push_back(f);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> edge_sequence_between_faces(const FoldedPolygon& Q, int fu, int fv) {
    std::vector<int> faces = dual_path_faces(Q, fu, fv);
    std::vector<int> seq;
    for (size_t i = 0; i + 1 < faces.size(); ++i) {
        for (auto [g, e] : Q.dual[faces[i]])
            if (g == faces[i + 1]) { seq.push_back(e); break; }
    }
    return seq;
}

std::vector<int> shortest_path_edge_sequence(const FoldedPolygon& Q, const BoundaryPoint& u,
                                             const BoundaryPoint& v) {
    return edge_sequence_between_faces(Q, Q.face_of_boundary_point(u), Q.face_of_boundary_point(v));
}

GeodesicPath geodesic_shortest_path(const FoldedPolygon& Q, const BoundaryPoint& u,
                                    const BoundaryPoint& v) {
    GeodesicPath out;
    out.u = u;
    out.v = v;
    out.edgeSeq = shortest_path_edge_sequence(Q, u, v);
    Point3 pu = Q.boundary_point(u), pv = Q.boundary_point(v);
    const int k = (int)out.edgeSeq.size();
    out.crossings.assign(k, 0.5);
    std::vector<Segment> segs;
    for (int e : out.edgeSeq) segs.push_back(Q.interior_edge_segment(e));

    auto lengthOf = [&](const std::vector<double>& s) {
        double L = 0.0;
        Point3 prev = pu;
        for (int i = 0; i < k; ++i) {
            Point3 c = segs[i].at(s[i]);
            L += (c - prev).norm();
            prev = c;
        }
        L += (pv - prev).norm();
        return L;
    };

    if (k > 0) {
        double prevLen = lengthOf(out.crossings);
        for (int sweep = 0; sweep < 5000; ++sweep) {
            for (int i = 0; i < k; ++i) {
                Point3 A = (i == 0) ? pu : segs[i - 1].at(out.crossings[i - 1]);
                Point3 B = (i == k - 1) ? pv : segs[i + 1].at(out.crossings[i + 1]);
                const Segment& e = segs[i];
                auto f = [&](double s) {
                    Point3 c = e.at(s);
                    return (c - A).norm() + (B - c).norm();
                };
                out.crossings[i] = minimize_convex(f, 0.0, 1.0, 1e-13);
            }
            double L = lengthOf(out.crossings);
            if (prevLen - L < kLenTol * 1e-3) { prevLen = L; break; }
            prevLen = L;
        }
        out.length = prevLen;
    }
    out.polyline.push_back(pu);
    for (int i = 0; i < k; ++i) out.polyline.push_back(segs[i].at(out.crossings[i]));
    out.polyline.push_back(pv);
    out.length = polyline_length(out.polyline);
    return out;
}

} // namespace folded
