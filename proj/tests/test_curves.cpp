#include "folded/curves.hpp"
#include "folded/fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace folded;

namespace {

PolyCurve open_curve(std::vector<Point3> v) {
    PolyCurve c;
    c.vertices = std::move(v);
    return c;
}

PolyCurve closed_curve(std::vector<Point3> v) {
    PolyCurve c;
    c.vertices = std::move(v);
    c.closed = true;
    return c;
}

PolyCurve random_open(Rng& rng, int nv) {
    PolyCurve c;
    double x = 0;
    for (int i = 0; i < nv; ++i) {
        x += rng.uniform(0.2, 1.0);
        c.vertices.push_back(Point3(x, rng.uniform(-1, 1), rng.uniform(-0.5, 0.5)));
    }
    return c;
}

} // namespace

TEST_CASE("open decision on identical and offset segments") {
    PolyCurve f = open_curve({{0, 0, 0}, {1, 0, 0}});
    CHECK(frechet_decide_open(f, f, 0.0, Metric::L2));
    PolyCurve g = open_curve({{0, 1, 0}, {1, 1, 0}});
    CHECK(!frechet_decide_open(f, g, 0.999, Metric::L2));
    CHECK(frechet_decide_open(f, g, 1.0, Metric::L2));
    CHECK(frechet_compute(f, g, Metric::L2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("discrete Frechet sandwich on random open curves") {
    Rng rng(101);
    for (int it = 0; it < 25; ++it) {
        PolyCurve f = random_open(rng, 10);
        PolyCurve g = random_open(rng, 10);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        double val = frechet_compute(f, g, m);
        auto fs = subsample_curve(f, 200);
        auto gs = subsample_curve(g, 200);
        double dd = discrete_frechet(fs, gs, m);
        double h = 0.0;
        for (int i = 0; i < f.edge_count(); ++i) h = std::max(h, f.edge(i).length() / 200.0);
        for (int i = 0; i < g.edge_count(); ++i) h = std::max(h, g.edge(i).length() / 200.0);
        CHECK(val <= dd + 1e-9);
        CHECK(val >= dd - 2.0 * h - 1e-9);
    }
}

TEST_CASE("decision is monotone in eps and symmetric") {
    Rng rng(202);
    for (int it = 0; it < 20; ++it) {
        PolyCurve f = random_open(rng, 6);
        PolyCurve g = random_open(rng, 7);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        double v = frechet_compute(f, g, m);
        CHECK(!frechet_decide_open(f, g, v - 1e-5 * (1 + v), m));
        CHECK(frechet_decide_open(f, g, v + 1e-5 * (1 + v), m));
        CHECK(frechet_decide_open(g, f, v + 1e-5 * (1 + v), m));
        CHECK(frechet_decide_open(f, g, 2 * v + 1.0, m));
    }
}

TEST_CASE("frechet dominates Hausdorff") {
    Rng rng(303);
    for (int it = 0; it < 15; ++it) {
        PolyCurve f = random_open(rng, 6);
        PolyCurve g = random_open(rng, 6);
        double v = frechet_compute(f, g, Metric::L2);
        double haus = 0.0;
        for (int i = 0; i <= 100; ++i) {
            double t = f.param_length() * i / 100.0;
            double best = 1e18;
            for (int j = 0; j < g.edge_count(); ++j)
                best = std::min(best, point_segment_distance(f.at(t), g.edge(j), Metric::L2));
            haus = std::max(haus, best);
        }
        CHECK(v >= haus - 1e-7);
    }
}

TEST_CASE("critical values contain the obvious events") {
    PolyCurve f = open_curve({{0, 0, 0}, {1, 0, 0}});
    PolyCurve g = open_curve({{0, 1, 0}, {1, 1, 0}});
    auto vals = curve_critical_values(f, g, Metric::L2);
    CHECK(std::any_of(vals.begin(), vals.end(),
                      [](double v) { return std::fabs(v - 1.0) < 1e-9; }));
    auto vals2 = curve_critical_values(f, f, Metric::L2);
    CHECK(std::any_of(vals2.begin(), vals2.end(), [](double v) { return v < 1e-12; }));
}

TEST_CASE("critical-value binary search equals plain bisection") {
    Rng rng(404);
    for (int it = 0; it < 12; ++it) {
        PolyCurve f = random_open(rng, 5);
        PolyCurve g = random_open(rng, 5);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        double lo = 0.0, hi = uniform_matching_bound(f, g, m) + 1e-9;
        while (hi - lo > 1e-11) {
            double mid = 0.5 * (lo + hi);
            if (frechet_decide_open(f, g, mid, m)) hi = mid;
            else lo = mid;
        }
        auto cands = curve_critical_values(f, g, m);
        size_t a = 0, b = cands.size();
        while (a < b) {
            size_t mid = (a + b) / 2;
            if (frechet_decide_open(f, g, cands[mid], m)) b = mid;
            else a = mid + 1;
        }
        REQUIRE(a < cands.size());
        CHECK(std::fabs(cands[a] - hi) <= 1e-9 * (1 + hi) + 1e-9);
        double v = frechet_compute(f, g, m);
        CHECK(std::fabs(v - hi) <= 2e-9 * (1 + hi));
    }
}

TEST_CASE("closed curves: identity and translated square") {
    PolyCurve sq = closed_curve({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
    SUBCASE("identity at eps=0") {
        auto w = frechet_decide_closed(sq, sq, 0.0, Metric::L2);
        REQUIRE(w.has_value());
    }
    SUBCASE("unit translation") {
        PolyCurve sq2 = sq;
        for (Point3& p : sq2.vertices) p.x += 1.0;
        CHECK(frechet_decide_closed(sq, sq2, 1.0, Metric::L2).has_value());
        CHECK(!frechet_decide_closed(sq, sq2, 0.99, Metric::L2).has_value());
        CHECK(frechet_compute(sq, sq2, Metric::L2) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("closed witness matchings are valid") {
    for (int it = 0; it < 10; ++it) {
        RawSurface s1 = random_convex_surface(it * 7 + 1, 6);
        RawSurface s2 = random_convex_surface(it * 13 + 5, 7);
        PolyCurve f = closed_curve(s1.vertices);
        PolyCurve g = closed_curve(s2.vertices);
        double v = frechet_compute(f, g, Metric::L2);
        auto w = frechet_decide_closed(f, g, v + 1e-7, Metric::L2);
        REQUIRE(w.has_value());
        double q = g.param_length();
        const auto& pts = w->pts;
        REQUIRE(pts.size() >= 2);
        CHECK(pts.back()[1] - pts.front()[1] == doctest::Approx(q).epsilon(1e-9));
        double px = -1e18, py = -1e18;
        for (const auto& p : pts) {
            CHECK(p[0] >= px - 1e-9);
            CHECK(p[1] >= py - 1e-9);
            px = p[0];
            py = p[1];
        }
        PolyCurve fcut;
        fcut.vertices.push_back(f.edge(0).at(0.5));
        for (size_t i = 1; i < f.vertices.size(); ++i) fcut.vertices.push_back(f.vertices[i]);
        fcut.vertices.push_back(f.vertices[0]);
        fcut.vertices.push_back(f.edge(0).at(0.5));
        for (const auto& p : pts) {
            double d = distance(fcut.at(p[0]), g.at(p[1]), Metric::L2);
            CHECK(d <= v + 1e-6);
        }
    }
}

TEST_CASE("closed decision is monotone in eps") {
    RawSurface s1 = random_convex_surface(31, 5);
    RawSurface s2 = random_convex_surface(77, 6);
    PolyCurve f = closed_curve(s1.vertices);
    PolyCurve g = closed_curve(s2.vertices);
    double v = frechet_compute(f, g, Metric::L2);
    for (double d : {0.3, 0.7, 0.95}) {
        CHECK(!frechet_decide_closed(f, g, v * d - 1e-7, Metric::L2).has_value());
    }
    for (double u : {1.05, 1.5, 3.0}) {
        CHECK(frechet_decide_closed(f, g, v * u + 1e-7, Metric::L2).has_value());
    }
}
