#include "folded/fixtures.hpp"
#include "folded/segmatch.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace folded;

namespace {

// Dense DP oracle on a uniform grid over (t_i, s_i): feasibility of a
// monotone preimage selection with per-edge witness points.
bool grid_dp_feasible(const Segment& d, const std::vector<Segment>& seq, const Point3& u,
                      const Point3& v, double eps, Metric m, int N) {
    if (distance(d.a, u, m) > eps) return false;
    if (distance(d.b, v, m) > eps) return false;
    double cur = 0.0;
    for (const Segment& e : seq) {
        double best = 2.0;
        for (int i = 0; i <= N; ++i) {
            double t = (double)i / N;
            if (t < cur - 1e-12) continue;
            bool ok = false;
            for (int j = 0; j <= N && !ok; ++j)
                if (distance(d.at(t), e.at((double)j / N), m) <= eps) ok = true;
            if (ok) { best = t; break; }
        }
        if (best > 1.0) return false;
        cur = best;
    }
    return true;
}

std::vector<Segment> random_sequence(Rng& rng, int n) {
    std::vector<Segment> seq;
    for (int i = 0; i < n; ++i) {
        double x = 0.7 * i;
        seq.push_back(Segment(Point3(x + rng.uniform(-0.2, 0.2), rng.uniform(-1, 0), rng.uniform(-0.4, 0.4)),
                              Point3(x + rng.uniform(-0.2, 0.2), rng.uniform(0.2, 1), rng.uniform(-0.4, 0.4))));
    }
    return seq;
}

} // namespace

TEST_CASE("empty sequence gives the direct segment") {
    Segment d({0, 0, 0}, {1, 0, 0});
    Point3 u(0, 0.2, 0), v(1, -0.2, 0);
    auto r = match_segment_to_sequence(d, {}, u, v, 0.3, Metric::L2);
    REQUIRE(r.has_value());
    REQUIRE(r->polyline.size() == 2);
    CHECK((r->polyline[0] - u).norm() == doctest::Approx(0));
    CHECK((r->polyline[1] - v).norm() == doctest::Approx(0));
    CHECK(!match_segment_to_sequence(d, {}, Point3(0, 1, 0), v, 0.3, Metric::L2).has_value());
}

TEST_CASE("greedy feasibility agrees with the grid DP oracle") {
    Rng rng(1234);
    int checked = 0, boundary = 0;
    for (int it = 0; it < 250; ++it) {
        Segment d(Point3(rng.uniform(-0.3, 0.3), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)),
                  Point3(3.0 + rng.uniform(-0.3, 0.3), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)));
        auto seq = random_sequence(rng, 5);
        Point3 u = d.a + Point3(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0);
        Point3 v = d.b + Point3(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0);
        double eps = rng.uniform(0.4, 1.6);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        bool greedy = match_segment_to_sequence(d, seq, u, v, eps, m).has_value();
        bool oracle = grid_dp_feasible(d, seq, u, v, eps, m, 1000);
        ++checked;
        if (greedy != oracle) {
            // Permitted only within one grid cell of the feasibility boundary:
            // the answer must flip within an eps-margin comparable to the grid.
            double margin = 4e-3 * (1.0 + eps);
            bool below = match_segment_to_sequence(d, seq, u, v, eps - margin, m).has_value();
            bool above = match_segment_to_sequence(d, seq, u, v, eps + margin, m).has_value();
            CHECK(below != above);
            ++boundary;
        }
    }
    CHECK(checked - boundary >= checked * 9 / 10);
}

TEST_CASE("witness paths verify against the exact Frechet distance") {
    Rng rng(777);
    for (int it = 0; it < 60; ++it) {
        Segment d(Point3(0, rng.uniform(-0.5, 0.5), 0), Point3(3, rng.uniform(-0.5, 0.5), 0));
        auto seq = random_sequence(rng, rng.uniform_int(1, 4));
        Point3 u = d.a + Point3(0, rng.uniform(-0.2, 0.2), 0.1);
        Point3 v = d.b + Point3(0, rng.uniform(-0.2, 0.2), -0.1);
        double eps = rng.uniform(0.6, 1.8);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        auto r = match_segment_to_sequence(d, seq, u, v, eps, m);
        if (!r) continue;
        double df = frechet_segment_to_path(d, r->polyline, m);
        CHECK(df <= eps + 1e-7);
        for (size_t i = 1; i < r->tOnD.size(); ++i) CHECK(r->tOnD[i] >= r->tOnD[i - 1] - 1e-12);
    }
}

TEST_CASE("feasibility is monotone in eps") {
    Rng rng(888);
    for (int it = 0; it < 40; ++it) {
        Segment d(Point3(0, 0, 0), Point3(3, rng.uniform(-1, 1), 0));
        auto seq = random_sequence(rng, 4);
        Point3 u = d.a, v = d.b;
        double e1 = rng.uniform(0.2, 1.0), e2 = e1 + rng.uniform(0.0, 1.0);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        bool f1 = match_segment_to_sequence(d, seq, u, v, e1, m).has_value();
        bool f2 = match_segment_to_sequence(d, seq, u, v, e2, m).has_value();
        if (f1) CHECK(f2);
    }
}

TEST_CASE("subsequence feasibility never loses feasibility") {
    Rng rng(999);
    int violations = 0;
    for (int it = 0; it < 1000; ++it) {
        Segment d(Point3(0, rng.uniform(-0.4, 0.4), 0), Point3(3, rng.uniform(-0.4, 0.4), 0));
        int n = rng.uniform_int(2, 6);
        auto seq = random_sequence(rng, n);
        std::vector<int> sub;
        for (int i = 0; i < n; ++i)
            if (rng.uniform() < 0.6) sub.push_back(i);
        if (sub.empty()) sub.push_back(rng.uniform_int(0, n - 1));
        Point3 u = d.a + Point3(0, rng.uniform(-0.3, 0.3), 0);
        Point3 v = d.b + Point3(0, rng.uniform(-0.3, 0.3), 0);
        double eps = rng.uniform(0.4, 1.5);
        Metric m = it % 2 ? Metric::Linf : Metric::L2;
        auto [full, part] = subsequence_feasibility(d, seq, sub, u, v, eps, m);
        if (full && !part) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("identical subsequence gives identical results") {
    Segment d({0, 0, 0}, {2, 0, 0});
    std::vector<Segment> seq{Segment({0.5, -1, 0}, {0.5, 1, 0}), Segment({1.5, -1, 0}, {1.5, 1, 0})};
    auto [full, part] = subsequence_feasibility(d, seq, {0, 1}, d.a, d.b, 0.5, Metric::L2);
    CHECK(full == part);
}

TEST_CASE("frechet of a segment against itself and a lifted copy") {
    Segment d({0, 0, 0}, {1, 0.5, 0});
    CHECK(frechet_segment_to_path(d, {d.a, d.b}, Metric::L2) == doctest::Approx(0.0));
    double h = 0.7;
    std::vector<Point3> lifted{d.a + Point3(0, 0, h), d.b + Point3(0, 0, h)};
    CHECK(frechet_segment_to_path(d, lifted, Metric::Linf) == doctest::Approx(h).epsilon(1e-9));
}
