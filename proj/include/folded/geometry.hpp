#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace folded {

inline constexpr double kTol = 1e-9;       // absolute geometric tolerance, world units
inline constexpr double kLenTol = 1e-7;    // geodesic length tolerance
inline constexpr double kSolveTol = 1e-12; // inner 1-d solver tolerance

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    double normInf() const { return std::max({std::fabs(x), std::fabs(y), std::fabs(z)}); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

using Point3 = Vec3;

enum class Metric { L2, Linf };

double distance(const Point3& p, const Point3& q, Metric m);

// Closed parameter interval within [0,1]; empty() when no parameter qualifies.
struct Interval {
    double lo = 1.0, hi = 0.0; // lo > hi encodes empty

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}
    static Interval empty_interval() { return Interval(1.0, 0.0); }
    static Interval full() { return Interval(0.0, 1.0); }

    bool empty() const { return lo > hi; }
    double length() const { return empty() ? 0.0 : hi - lo; }
    bool contains(double t, double tol = kTol) const {
        return !empty() && t >= lo - tol && t <= hi + tol;
    }
    Interval intersect(const Interval& o) const {
        if (empty() || o.empty()) return empty_interval();
        return Interval(std::max(lo, o.lo), std::min(hi, o.hi));
    }
};

struct Segment {
    Point3 a, b;

    Segment() = default;
    Segment(const Point3& a_, const Point3& b_) : a(a_), b(b_) {}

    Point3 at(double t) const { return a + (b - a) * t; }
    Vec3 dir() const { return b - a; }
    double length() const { return dir().norm(); }
    bool degenerate() const { return length() <= kTol; }
    Segment reversed() const { return Segment(b, a); }
};

double point_segment_distance(const Point3& p, const Segment& s, Metric m);
// Parameter on s of a point attaining point_segment_distance (L2: the unique
// closest parameter; Linf: smallest such parameter).
double closest_param_on_segment(const Point3& p, const Segment& s, Metric m);

double segment_segment_distance(const Segment& s1, const Segment& s2, Metric m);

// {t : dist(s(t), p) <= eps}, a single closed interval by convexity.
Interval segment_point_interval(const Segment& s, const Point3& p, double eps, Metric m);

// {t : dist(d(t), e) <= eps} where the distance is to the whole segment e.
// Single interval by convexity of t -> dist(d(t), e).
Interval segment_segment_param_interval(const Segment& d, const Segment& e, double eps, Metric m);

// Feasible boundary intervals of the free-space cell of two segments at
// threshold eps. x-axis parameterizes s1, y-axis s2.
struct FreeSpaceCell {
    Interval left;   // x = 0 edge, interval in y
    Interval right;  // x = 1 edge, interval in y
    Interval bottom; // y = 0 edge, interval in x
    Interval top;    // y = 1 edge, interval in x
};

FreeSpaceCell free_space_cell(const Segment& s1, const Segment& s2, double eps, Metric m);

using IntervalChain = std::vector<Interval>;

// Greedy monotone selection t_1 <= ... <= t_n with t_i in chain[i],
// start <= t_1 and t_n <= end. Returns the left-greedy selection or
// nullopt when no monotone selection exists.
std::optional<std::vector<double>> interval_chain_greedy(const IntervalChain& chain,
                                                         double start, double end);

// Minimize a convex function on [lo, hi] by golden-section search.
// Returns the arg min; tolerance is on the argument.
double minimize_convex(const std::function<double(double)>& f, double lo, double hi,
                       double tol = kSolveTol);

// Given convex f with f(tmin) <= level <= f(tside), finds t between tmin and
// tside with f(t) = level (bisection; f monotone on that side of the min).
double convex_level_crossing(const std::function<double(double)>& f, double tmin,
                             double tside, double level, double tol = kSolveTol);

} // namespace folded
