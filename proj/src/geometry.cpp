#include "folded/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace folded {

double distance(const Point3& p, const Point3& q, Metric m) {
    Vec3 d = p - q;
    return m == Metric::L2 ? d.norm() : d.normInf();
}

double minimize_convex(const std::function<double(double)>& f, double lo, double hi,
                       double tol) {
    // Golden-section; convexity makes this globally correct.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double mid = 0.5 * (a + b);
    // Snap to the range ends when they are at least as good; keeps tangency
    // cases at interval endpoints exact.
    if (f(lo) <= f(mid)) return lo;
    if (f(hi) <= f(mid)) return hi;
    return mid;
}

double convex_level_crossing(const std::function<double(double)>& f, double tmin,
                             double tside, double level, double tol) {
    double a = tmin, b = tside; // f(a) <= level, f(b) >= level (monotone between)
    if (f(b) <= level) return b;
    while (std::fabs(b - a) > tol) {
        double m = 0.5 * (a + b);
        if (f(m) <= level) a = m; else b = m;
    }
    return a;
}

double point_segment_distance(const Point3& p, const Segment& s, Metric m) {
    if (m == Metric::L2) {
        Vec3 u = s.dir();
        double uu = u.norm2();
        if (uu <= kSolveTol * kSolveTol) return distance(p, s.a, m);
        double t = std::clamp((p - s.a).dot(u) / uu, 0.0, 1.0);
        return distance(p, s.at(t), m);
    }
    // Linf: dist(t) = max over coordinates of |affine(t)|, convex piecewise linear.
    auto f = [&](double t) { return distance(p, s.at(t), Metric::Linf); };
    double t = minimize_convex(f, 0.0, 1.0);
    return f(t);
}

double closest_param_on_segment(const Point3& p, const Segment& s, Metric m) {
    if (m == Metric::L2) {
        Vec3 u = s.dir();
        double uu = u.norm2();
        if (uu <= kSolveTol * kSolveTol) return 0.0;
        return std::clamp((p - s.a).dot(u) / uu, 0.0, 1.0);
    }
    double dmin = point_segment_distance(p, s, m);
    // Smallest parameter attaining (within solver tolerance) the minimum.
    Interval w = segment_point_interval(s, p, dmin + 1e-12, m);
    return w.empty() ? minimize_convex([&](double t) { return distance(p, s.at(t), m); }, 0.0, 1.0)
                     : w.lo;
}

double segment_segment_distance(const Segment& s1, const Segment& s2, Metric m) {
    auto f = [&](double t) { return point_segment_distance(s1.at(t), s2, m); };
    double t = minimize_convex(f, 0.0, 1.0);
    return f(t);
}

namespace {

// Intersect {t : |c + t*d| <= eps} with [0,1] for scalars c, d.
Interval linear_abs_interval(double c, double d, double eps) {
    if (std::fabs(d) <= kSolveTol) {
        return std::fabs(c) <= eps + kTol ? Interval::full() : Interval::empty_interval();
    }
    double t1 = (-eps - c) / d;
    double t2 = (eps - c) / d;
    if (t1 > t2) std::swap(t1, t2);
    Interval r(std::max(0.0, t1), std::min(1.0, t2));
    return r.empty() ? Interval::empty_interval() : r;
}

} // namespace

Interval segment_point_interval(const Segment& s, const Point3& p, double eps, Metric m) {
    if (eps < 0) return Interval::empty_interval();
    Vec3 w = s.a - p;
    Vec3 u = s.dir();
    if (m == Metric::Linf) {
        Interval r = Interval::full();
        r = r.intersect(linear_abs_interval(w.x, u.x, eps));
        r = r.intersect(linear_abs_interval(w.y, u.y, eps));
        r = r.intersect(linear_abs_interval(w.z, u.z, eps));
        return r.empty() ? Interval::empty_interval() : r;
    }
    // |w + t u|^2 <= eps^2
    double A = u.norm2();
    double B = 2.0 * w.dot(u);
    double C = w.norm2() - eps * eps;
    if (A <= kSolveTol * kSolveTol) {
        return C <= kTol ? Interval::full() : Interval::empty_interval();
    }
    double disc = B * B - 4.0 * A * C;
    if (disc < 0) {
        // Treat near-tangency as a degenerate interval at the vertex.
        if (disc >= -kTol * (4.0 * A)) {
            double t = -B / (2.0 * A);
            if (t >= -kTol && t <= 1.0 + kTol) {
                t = std::clamp(t, 0.0, 1.0);
                return Interval(t, t);
            }
        }
        return Interval::empty_interval();
    }
    double sq = std::sqrt(disc);
    double t1 = (-B - sq) / (2.0 * A);
    double t2 = (-B + sq) / (2.0 * A);
    Interval r(std::max(0.0, t1), std::min(1.0, t2));
    return r.empty() ? Interval::empty_interval() : r;
}

Interval segment_segment_param_interval(const Segment& d, const Segment& e, double eps,
                                        Metric m) {
    if (eps < 0) return Interval::empty_interval();
    auto g = [&](double t) { return point_segment_distance(d.at(t), e, m); };
    double tmin = minimize_convex(g, 0.0, 1.0);
    double gmin = g(tmin);
    if (gmin > eps + kTol) return Interval::empty_interval();
    double level = eps;
    double lo = g(0.0) <= level ? 0.0 : convex_level_crossing(g, tmin, 0.0, level);
    double hi = g(1.0) <= level ? 1.0 : convex_level_crossing(g, tmin, 1.0, level);
    return Interval(lo, hi);
}

FreeSpaceCell free_space_cell(const Segment& s1, const Segment& s2, double eps, Metric m) {
    FreeSpaceCell c;
    c.left = segment_point_interval(s2, s1.a, eps, m);
    c.right = segment_point_interval(s2, s1.b, eps, m);
    c.bottom = segment_point_interval(s1, s2.a, eps, m);
    c.top = segment_point_interval(s1, s2.b, eps, m);
    return c;
}

std::optional<std::vector<double>> interval_chain_greedy(const IntervalChain& chain,
                                                         double start, double end) {
    if (start > end + kTol) return std::nullopt;
    std::vector<double> pick;
    pick.reserve(chain.size());
    double cur = start;
    for (const Interval& iv : chain) {
        if (iv.empty()) return std::nullopt;
        double t = std::max(iv.lo, cur);
        if (t > iv.hi + kTol) return std::nullopt;
        t = std::min(t, iv.hi);
        pick.push_back(t);
        cur = t;
    }
    if (cur > end + kTol) return std::nullopt;
    return pick;
}

} // namespace folded
