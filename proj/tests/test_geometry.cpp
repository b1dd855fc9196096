#include "folded/geometry.hpp"
#include "folded/fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace folded;

TEST_CASE("metric distances") {
    CHECK(distance({0, 0, 0}, {0, 0, 0}, Metric::L2) == doctest::Approx(0.0));
    CHECK(distance({0, 0, 0}, {1, 1, 1}, Metric::Linf) == doctest::Approx(1.0));
    CHECK(distance({0, 0, 0}, {3, 4, 0}, Metric::L2) == doctest::Approx(5.0));
}

TEST_CASE("triangle inequality on random triples") {
    Rng rng(42);
    for (int it = 0; it < 2000; ++it) {
        Point3 a(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        Point3 b(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        Point3 c(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        for (Metric m : {Metric::L2, Metric::Linf}) {
            double ab = distance(a, b, m), bc = distance(b, c, m), ac = distance(a, c, m);
            CHECK(ac <= ab + bc + 1e-12 * std::max(1.0, ab + bc));
        }
    }
}

TEST_CASE("segment point interval basics") {
    Segment s({0, 0, 0}, {1, 0, 0});
    SUBCASE("eps zero hits the exact parameter") {
        Interval iv = segment_point_interval(s, {0.5, 0, 0}, 0.0, Metric::L2);
        CHECK(!iv.empty());
        CHECK(iv.lo == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(iv.hi == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("unreachable point gives empty interval") {
        Interval iv = segment_point_interval(s, {0.5, 2, 0}, 1.0, Metric::L2);
        CHECK(iv.empty());
    }
}

TEST_CASE("segment point interval matches dense sampling") {
    Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        Segment s(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                  Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        Point3 p(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
        double eps = rng.uniform(0.0, 1.5);
        for (Metric m : {Metric::L2, Metric::Linf}) {
            Interval iv = segment_point_interval(s, p, eps, m);
            double lo = 2.0, hi = -1.0;
            const int N = 10000;
            for (int i = 0; i <= N; ++i) {
                double t = (double)i / N;
                if (distance(s.at(t), p, m) <= eps) {
                    lo = std::min(lo, t);
                    hi = std::max(hi, t);
                }
            }
            if (hi < lo) {
                // Sampled empty: the exact interval may be a sliver below grid size.
                CHECK((iv.empty() || iv.length() <= 2.0 / N));
            } else {
                REQUIRE(!iv.empty());
                CHECK(std::fabs(iv.lo - lo) <= 1.5 / N);
                CHECK(std::fabs(iv.hi - hi) <= 1.5 / N);
            }
        }
    }
}

TEST_CASE("free space cell membership agrees with rejection sampling") {
    Rng rng(11);
    for (int it = 0; it < 30; ++it) {
        Segment s1(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), 0),
                   Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), 0));
        Segment s2(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), 0),
                   Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), 0));
        double eps = rng.uniform(0.1, 1.2);
        Metric m = it % 2 ? Metric::L2 : Metric::Linf;
        FreeSpaceCell cell = free_space_cell(s1, s2, eps, m);
        // The cell is described by its four boundary intervals; sample each side.
        for (int k = 0; k <= 200; ++k) {
            double t = k / 200.0;
            bool inLeft = distance(s1.at(0), s2.at(t), m) <= eps;
            CHECK(inLeft == cell.left.contains(t, 1e-7));
            bool inRight = distance(s1.at(1), s2.at(t), m) <= eps;
            CHECK(inRight == cell.right.contains(t, 1e-7));
            bool inBottom = distance(s1.at(t), s2.at(0), m) <= eps;
            CHECK(inBottom == cell.bottom.contains(t, 1e-7));
            bool inTop = distance(s1.at(t), s2.at(1), m) <= eps;
            CHECK(inTop == cell.top.contains(t, 1e-7));
        }
    }
}

TEST_CASE("free space cell convexity: midpoints of feasible samples are feasible") {
    Rng rng(13);
    for (int it = 0; it < 20; ++it) {
        Segment s1(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                   Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        Segment s2(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                   Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        double eps = rng.uniform(0.3, 1.4);
        Metric m = it % 2 ? Metric::L2 : Metric::Linf;
        std::vector<std::array<double, 2>> feas;
        for (int k = 0; k < 4000 && feas.size() < 50; ++k) {
            double x = rng.uniform(), y = rng.uniform();
            if (distance(s1.at(x), s2.at(y), m) <= eps) feas.push_back({x, y});
        }
        for (size_t i = 0; i + 1 < feas.size(); i += 2) {
            double mx = 0.5 * (feas[i][0] + feas[i + 1][0]);
            double my = 0.5 * (feas[i][1] + feas[i + 1][1]);
            CHECK(distance(s1.at(mx), s2.at(my), m) <= eps + 1e-9);
        }
    }
}

namespace {

// Dynamic program over a discretized chain: feasibility oracle for the greedy.
bool chain_dp_feasible(const IntervalChain& chain, double start, double end, int gridN) {
    double cur = start;
    // Discretized greedy is itself the DP optimum for interval chains; emulate
    // the DP by stepping on the grid.
    for (const Interval& iv : chain) {
        if (iv.empty()) return false;
        double lo = std::ceil(iv.lo * gridN - 1e-12) / gridN;
        double t = std::max(lo, cur);
        if (t > iv.hi + 1e-12) return false;
        cur = t;
    }
    return cur <= end + 1e-12;
}

} // namespace

TEST_CASE("interval chain greedy") {
    SUBCASE("all full intervals start at zero") {
        IntervalChain chain(5, Interval::full());
        auto r = interval_chain_greedy(chain, 0.0, 1.0);
        REQUIRE(r.has_value());
        for (double t : *r) CHECK(t == doctest::Approx(0.0));
    }
    SUBCASE("forced order violation") {
        IntervalChain chain{Interval(0.5, 1.0), Interval(0.0, 0.4)};
        CHECK(!interval_chain_greedy(chain, 0.0, 1.0).has_value());
    }
    SUBCASE("agrees with discretized DP on random chains") {
        Rng rng(17);
        int agree = 0, total = 0;
        for (int it = 0; it < 1500; ++it) {
            IntervalChain chain;
            int n = rng.uniform_int(1, 6);
            for (int i = 0; i < n; ++i) {
                if (rng.uniform() < 0.1) {
                    chain.push_back(Interval::empty_interval());
                } else {
                    double a = rng.uniform(), b = rng.uniform();
                    if (a > b) std::swap(a, b);
                    chain.push_back(Interval(a, b));
                }
            }
            bool greedy = interval_chain_greedy(chain, 0.0, 1.0).has_value();
            bool dp = chain_dp_feasible(chain, 0.0, 1.0, 1000);
            ++total;
            if (greedy == dp) {
                ++agree;
            } else {
                // The DP walks a 1e-3 grid; disagreement is only possible when
                // the instance sits within one grid cell of the feasibility
                // boundary (the greedy selection has less than one cell of
                // clearance somewhere).
                REQUIRE(greedy); // the grid DP is a restriction of the continuous problem
                auto pick = interval_chain_greedy(chain, 0.0, 1.0);
                double clearance = 1.0;
                for (size_t i = 0; i < chain.size(); ++i)
                    clearance = std::min(clearance, chain[i].hi - (*pick)[i]);
                CHECK(clearance <= 2e-3);
            }
        }
        CHECK(agree >= total - 10);
    }
}

TEST_CASE("segment-to-segment parameter window is the exact sublevel set") {
    Rng rng(23);
    for (int it = 0; it < 40; ++it) {
        Segment d(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                  Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        Segment e(Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                  Point3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
        double eps = rng.uniform(0.05, 1.0);
        Metric m = it % 2 ? Metric::L2 : Metric::Linf;
        Interval iv = segment_segment_param_interval(d, e, eps, m);
        const int N = 4000;
        for (int i = 0; i <= N; ++i) {
            double t = (double)i / N;
            bool feas = point_segment_distance(d.at(t), e, m) <= eps;
            if (feas != iv.contains(t, 0.0)) {
                // Allow disagreement only within solver tolerance of the edges.
                double gap = std::min(std::fabs(t - iv.lo), std::fabs(t - iv.hi));
                if (iv.empty()) gap = 1.0;
                bool nearBoundary =
                    gap <= 2.0 / N ||
                    std::fabs(point_segment_distance(d.at(t), e, m) - eps) <= 1e-7;
                CHECK(nearBoundary);
            }
        }
    }
}
