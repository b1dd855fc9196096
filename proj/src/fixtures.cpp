#include "folded/fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace folded {

RawSurface fan_surface(int faces) {
    RawSurface s;
    s.name = "fan";
    int n = faces + 2;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n;
        s.vertices.push_back(Point3(std::cos(a), std::sin(a), 0.0));
    }
    for (int i = 0; i < faces; ++i) s.faces.push_back({0, i + 1, i + 2});
    for (int i = 0; i < n; ++i) s.boundary.push_back(i);
    return s;
}

RawSurface staircase_surface(int steps) {
    RawSurface s;
    s.name = "staircase";
    // South rim vertices then the mirrored north rim.
    std::vector<int> south, north;
    auto add = [&](double x, double y, double z) {
        s.vertices.push_back(Point3(x, y, z));
        return (int)s.vertices.size() - 1;
    };
    south.push_back(add(0, 0, 0));
    for (int i = 0; i < steps; ++i) {
        south.push_back(add(i + 1, 0, i));
        if (i + 1 < steps) south.push_back(add(i + 1, 0, i + 1));
    }
    for (int i = (int)south.size() - 1; i >= 0; --i) {
        const Point3& p = s.vertices[south[i]];
        north.push_back(add(p.x, 1.0, p.z));
    }
    // Faces: horizontal plate then vertical riser, alternating.
    int m = (int)south.size();
    for (int i = 0; i + 1 < m; ++i) {
        int a = south[i], b = south[i + 1];
        int bn = north[m - 2 - i], an = north[m - 1 - i];
        s.faces.push_back({a, b, bn, an});
    }
    for (int v : south) s.boundary.push_back(v);
    for (int v : north) s.boundary.push_back(v);
    return s;
}

namespace {

Point3 rotate_about_line(const Point3& p, const Point3& a, const Vec3& axisUnit, double ang) {
    Vec3 v = p - a;
    Vec3 par = axisUnit * v.dot(axisUnit);
    Vec3 perp = v - par;
    Vec3 w = axisUnit.cross(perp);
    Vec3 rot = perp * std::cos(ang) + w * std::sin(ang);
    return a + par + rot;
}

RawSurface folded_strip(Rng& rng, int faces, bool axisParallel) {
    RawSurface s;
    s.name = axisParallel ? "randomAxisParallel" : "randomFolded";
    const double W = axisParallel ? 1.0 : rng.uniform(0.8, 1.4);
    std::vector<double> xs{0.0};
    std::vector<double> slant(faces + 1, 0.0);
    for (int i = 1; i <= faces; ++i) xs.push_back(xs.back() + rng.uniform(0.6, 1.3));
    if (!axisParallel)
        for (int i = 1; i < faces; ++i) slant[i] = rng.uniform(-0.2, 0.2);

    // Planar strip: chord i runs from (xs[i]+slant, 0) to (xs[i]-slant, W).
    std::vector<int> southIdx, northIdx;
    auto add = [&](double x, double y) {
        s.vertices.push_back(Point3(x, y, 0.0));
        return (int)s.vertices.size() - 1;
    };
    for (int i = 0; i <= faces; ++i) southIdx.push_back(add(xs[i] + slant[i], 0.0));
    for (int i = 0; i <= faces; ++i) northIdx.push_back(add(xs[i] - slant[i], W));
    for (int i = 0; i < faces; ++i)
        s.faces.push_back({southIdx[i], southIdx[i + 1], northIdx[i + 1], northIdx[i]});
    for (int i = 0; i <= faces; ++i) s.boundary.push_back(southIdx[i]);
    for (int i = faces; i >= 0; --i) s.boundary.push_back(northIdx[i]);

    // Fold about the interior chords, right to left, so every chord is still
    // in its planar position when used as the axis.
    for (int i = faces - 1; i >= 1; --i) {
        double ang = axisParallel ? (M_PI / 2.0) * (rng.uniform_int(0, 1) * 2 - 1)
                                  : rng.uniform(-1.2, 1.2);
        Point3 a = s.vertices[southIdx[i]];
        Vec3 axis = s.vertices[northIdx[i]] - a;
        double len = axis.norm();
        if (len <= kTol) continue;
        axis = axis / len;
        for (int j = i + 1; j <= faces; ++j) {
            s.vertices[southIdx[j]] = rotate_about_line(s.vertices[southIdx[j]], a, axis, ang);
            s.vertices[northIdx[j]] = rotate_about_line(s.vertices[northIdx[j]], a, axis, ang);
        }
    }
    return s;
}

} // namespace

RawSurface random_folded_surface(std::uint64_t seed, int faces) {
    Rng rng(seed * 2654435761ULL + 17);
    return folded_strip(rng, faces, false);
}

RawSurface random_axis_parallel_surface(std::uint64_t seed, int faces) {
    Rng rng(seed * 0x9e3779b9ULL + 101);
    RawSurface s;
    s.name = "randomAxisParallel";
    // Staircase with random extents; plates alternate horizontal/vertical.
    std::vector<double> xz{0.0, 0.0}; // current x, z
    std::vector<int> south, north;
    auto add = [&](double x, double y, double z) {
        s.vertices.push_back(Point3(x, y, z));
        return (int)s.vertices.size() - 1;
    };
    double W = 1.0 + rng.uniform_int(0, 2) * 0.5;
    double x = 0.0, z = 0.0;
    south.push_back(add(x, 0, z));
    for (int i = 0; i < faces; ++i) {
        if (i % 2 == 0) {
            x += 0.5 + 0.5 * rng.uniform_int(1, 3);
        } else {
            z += (rng.uniform_int(0, 1) * 2 - 1) * (0.5 + 0.5 * rng.uniform_int(1, 2));
        }
        south.push_back(add(x, 0, z));
    }
    for (int i = (int)south.size() - 1; i >= 0; --i) {
        const Point3& p = s.vertices[south[i]];
        north.push_back(add(p.x, W, p.z));
    }
    int m = (int)south.size();
    for (int i = 0; i + 1 < m; ++i)
        s.faces.push_back({south[i], south[i + 1], north[m - 2 - i], north[m - 1 - i]});
    for (int v : south) s.boundary.push_back(v);
    for (int v : north) s.boundary.push_back(v);
    return s;
}

RawSurface random_convex_surface(std::uint64_t seed, int verts) {
    Rng rng(seed * 0x2545F4914F6CDD1DULL + 7);
    RawSurface s;
    s.name = "randomConvex";
    double rx = rng.uniform(0.8, 1.8), ry = rng.uniform(0.8, 1.8);
    double tilt = rng.uniform(-0.6, 0.6);
    // Strictly increasing angles around an ellipse keep the polygon convex.
    std::vector<double> angs;
    for (int i = 0; i < verts; ++i)
        angs.push_back(2.0 * M_PI * (i + 0.2 + 0.6 * rng.uniform()) / verts);
    std::sort(angs.begin(), angs.end());
    for (double a : angs) {
        double x = rx * std::cos(a), y = ry * std::sin(a);
        s.vertices.push_back(Point3(x, y, tilt * x));
    }
    std::vector<int> all;
    for (int i = 0; i < verts; ++i) all.push_back(i);
    s.faces.push_back(all);
    s.boundary = all;
    return s;
}

std::pair<RawSurface, RawSurface> zigzag_pair(const ZigzagParams& p) {
    auto build = [&]() {
        RawSurface s;
        const double w = p.halfWidth, Lt = p.topLen, Lb = p.bottomLen;
        // 0..7: tSW, d1S, d2S, bSW, bNW, d2N, d1N, tNW
        s.vertices = {
            Point3(-Lt, -w, 1), Point3(0, -w, 1),      Point3(1, -w, 0), Point3(1 - Lb, -w, 0),
            Point3(1 - Lb, w, 0), Point3(1, w, 0),     Point3(0, w, 1),  Point3(-Lt, w, 1),
        };
        s.faces = {
            {0, 1, 6, 7}, // high plate
            {1, 2, 5, 6}, // slanted band z = 1 - x
            {2, 3, 4, 5}, // low plate
        };
        s.boundary = {0, 1, 2, 3, 4, 5, 6, 7};
        return s;
    };
    RawSurface P = build();
    P.name = "appendixB-P";
    RawSurface Q = build();
    Q.name = "appendixB-Q";
    // Quarter turn about the central cube axis (cube footprint [0,1] x [-1/2,1/2]).
    const double cx = 0.5, cy = 0.0;
    for (Point3& v : Q.vertices) {
        double dx = v.x - cx, dy = v.y - cy;
        double nx, ny;
        if (p.rotation >= 0) { nx = cx - dy; ny = cy + dx; }
        else { nx = cx + dy; ny = cy - dx; }
        v.x = nx;
        v.y = ny;
        if (p.zflip) v.z = 1.0 - v.z;
    }
    return {P, Q};
}

std::pair<RawSurface, RawSurface> appendix_b_pair() {
    ZigzagParams p;
    p.topLen = 2.0 / 3.0;
    p.bottomLen = 4.0 / 3.0;
    p.halfWidth = 5.0 / 6.0;
    p.rotation = -1;
    p.zflip = false;
    return zigzag_pair(p);
}

RawSurface slanted_bump_surface() {
    RawSurface s;
    s.name = "slantedBump";
    const double W = 2.0;   // width (y)
    const double h = 0.9;   // band height
    const double skew = 1.1; // x offset of the fold across the width
    // Flat approach, rising band whose folds are skewed, flat exit.
    // 0..7: aSW, f1S, f2S, dSE... laid out along x at y=0 then mirrored.
    s.vertices = {
        Point3(-2.0, 0, 0), Point3(0.0, 0, 0),        Point3(1.0, 0, h),  Point3(3.5, 0, 0),
        Point3(3.5 - skew, W, 0), Point3(1.0 - skew, W, h), Point3(-skew, W, 0), Point3(-2.0, W, 0),
    };
    s.faces = {
        {0, 1, 6, 7},
        {1, 2, 5, 6},
        {2, 3, 4, 5},
    };
    s.boundary = {0, 1, 2, 3, 4, 5, 6, 7};
    return s;
}

} // namespace folded
