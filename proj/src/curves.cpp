#include "folded/curves.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

namespace folded {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Point3 PolyCurve::at(double t) const {
    int n = edge_count();
    if (n == 0) return vertices.empty() ? Point3() : vertices[0];
    if (closed) {
        t = std::fmod(t, (double)n);
        if (t < 0) t += n;
    } else {
        t = std::clamp(t, 0.0, (double)n);
    }
    int i = std::min((int)std::floor(t), n - 1);
    return edge(i).at(t - i);
}

double BoundaryMatching::y_at_x(double x) const {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double x0 = pts[i][0], x1 = pts[i + 1][0];
        if (x >= x0 - kTol && x <= x1 + kTol) {
            if (x1 - x0 <= kTol) return pts[i][1];
            double a = (x - x0) / (x1 - x0);
            return pts[i][1] + a * (pts[i + 1][1] - pts[i][1]);
        }
    }
    return pts.empty() ? 0.0 : (x <= pts.front()[0] ? pts.front()[1] : pts.back()[1]);
}

double BoundaryMatching::x_at_y(double y) const {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double y0 = pts[i][1], y1 = pts[i + 1][1];
        if (y >= y0 - kTol && y <= y1 + kTol) {
            if (y1 - y0 <= kTol) return pts[i][0];
            double a = (y - y0) / (y1 - y0);
            return pts[i][0] + a * (pts[i + 1][0] - pts[i][0]);
        }
    }
    return pts.empty() ? 0.0 : (y <= pts.front()[1] ? pts.front()[0] : pts.back()[0]);
}

void FreeSpaceGrid::build(const std::vector<Segment>& colEdges,
                          const std::vector<Segment>& rowEdges, double eps, Metric m) {
    cols = (int)colEdges.size();
    rows = (int)rowEdges.size();
    V.assign(cols + 1, std::vector<Interval>(rows));
    H.assign(cols, std::vector<Interval>(rows + 1));
    for (int i = 0; i <= cols; ++i) {
        Point3 fp = (i < cols) ? colEdges[i].a : colEdges[cols - 1].b;
        for (int j = 0; j < rows; ++j) V[i][j] = segment_point_interval(rowEdges[j], fp, eps, m);
    }
    for (int j = 0; j <= rows; ++j) {
        Point3 gp = (j < rows) ? rowEdges[j].a : rowEdges[rows - 1].b;
        for (int i = 0; i < cols; ++i) H[i][j] = segment_point_interval(colEdges[i], gp, eps, m);
    }
}

namespace {

// Upward closure of per-row lowest-reachable thresholds along a single
// vertical line: a monotone path may run along the line through feasible
// row corners.
void column_up_closure(const FreeSpaceGrid& g, int i, std::vector<double>& thr) {
    for (int j = 0; j + 1 < g.rows; ++j) {
        if (thr[j] == kInf) continue;
        if (g.V[i][j].empty() || g.V[i][j].hi < 1.0 - kTol) continue;
        if (g.V[i][j + 1].empty() || g.V[i][j + 1].lo > kTol) continue;
        thr[j + 1] = std::min(thr[j + 1], (double)(j + 1) + g.V[i][j + 1].lo);
    }
}

// Applies one touch window to a column's thresholds. Returns false when no
// path through the column can intersect the window.
bool apply_touch(const FreeSpaceGrid& g, int i, double ylo, double yhi,
                 std::vector<double>& thr) {
    std::vector<double> out(g.rows, kInf);
    bool touched = false;
    for (int j = 0; j < g.rows; ++j) {
        if (thr[j] == kInf || g.V[i][j].empty()) continue;
        double lo = std::max({thr[j], ylo, (double)j + g.V[i][j].lo});
        double hi = std::min(yhi, (double)j + g.V[i][j].hi);
        if (lo <= hi + kTol) {
            out[j] = std::min(out[j], std::min(lo, (double)j + g.V[i][j].hi));
            touched = true;
        }
    }
    if (!touched) return false;
    column_up_closure(g, i, out);
    thr = out;
    return true;
}

} // namespace

ReachTable propagate_reachability(const FreeSpaceGrid& g, double seedY,
                                  const std::vector<ColumnTouch>& touches) {
    ReachTable r;
    r.rv.assign(g.cols + 1, std::vector<double>(std::max(g.rows, 1), kInf));
    r.rh.assign(std::max(g.cols, 1), std::vector<double>(g.rows + 1, kInf));
    if (g.rows == 0 || g.cols == 0) return r;

    // Seed column.
    {
        int j = std::clamp((int)std::floor(seedY), 0, g.rows - 1);
        for (int cand : {j, j - 1, j + 1}) {
            if (cand < 0 || cand >= g.rows) continue;
            double local = seedY - cand;
            if (local >= -kTol && local <= 1.0 + kTol && g.V[0][cand].contains(local)) {
                r.rv[0][cand] = std::min(r.rv[0][cand], seedY);
            }
        }
        column_up_closure(g, 0, r.rv[0]);
    }

    // Bottom boundary walk (only reachable when the seed sits at y = 0).
    if (seedY <= kTol) {
        bool alive = !g.H[0][0].empty() && g.H[0][0].lo <= kTol;
        for (int i = 0; i < g.cols && alive; ++i) {
            if (g.H[i][0].empty() || g.H[i][0].lo > kTol) break;
            r.rh[i][0] = (double)i + g.H[i][0].lo;
            alive = g.H[i][0].hi >= 1.0 - kTol;
        }
    }

    std::vector<ColumnTouch> sorted = touches;
    std::stable_sort(sorted.begin(), sorted.end(), [](const ColumnTouch& a, const ColumnTouch& b) {
        if (a.column != b.column) return a.column < b.column;
        return a.ylo < b.ylo;
    });

    size_t ti = 0;
    for (int i = 0; i <= g.cols; ++i) {
        while (ti < sorted.size() && sorted[ti].column == i) {
            if (!apply_touch(g, i, sorted[ti].ylo, sorted[ti].yhi, r.rv[i])) {
                // Dead column: nothing to the right is reachable.
                for (int j = 0; j < g.rows; ++j) r.rv[i][j] = kInf;
            }
            ++ti;
        }
        if (i == g.cols) break;
        for (int j = 0; j < g.rows; ++j) {
            // Right edge of cell (i, j) -> rv[i+1][j].
            if (!g.V[i + 1][j].empty()) {
                double base = (double)j + g.V[i + 1][j].lo;
                if (r.rh[i][j] != kInf) {
                    r.rv[i + 1][j] = std::min(r.rv[i + 1][j], base);
                } else if (r.rv[i][j] != kInf) {
                    double cand = std::max(r.rv[i][j], base);
                    if (cand <= (double)j + g.V[i + 1][j].hi + kTol)
                        r.rv[i + 1][j] = std::min(r.rv[i + 1][j], cand);
                }
            }
            // Top edge of cell (i, j) -> rh[i][j+1].
            if (!g.H[i][j + 1].empty()) {
                double base = (double)i + g.H[i][j + 1].lo;
                if (r.rv[i][j] != kInf) {
                    r.rh[i][j + 1] = std::min(r.rh[i][j + 1], base);
                } else if (r.rh[i][j] != kInf) {
                    double cand = std::max(r.rh[i][j], base);
                    if (cand <= (double)i + g.H[i][j + 1].hi + kTol)
                        r.rh[i][j + 1] = std::min(r.rh[i][j + 1], cand);
                }
            }
        }
    }
    return r;
}

std::vector<std::array<double, 2>> extract_witness_path(const FreeSpaceGrid& g,
                                                        const ReachTable& r, double seedY,
                                                        double targetY,
                                                        const std::vector<ColumnTouch>& touches) {
    // Walk backwards from the target; emits breakpoints in reverse.
    std::vector<std::array<double, 2>> rev;
    int i = g.cols;
    int j = std::clamp((int)std::floor(targetY - kTol), 0, g.rows - 1);
    if (!(g.V[i][j].contains(targetY - j) && r.rv[i][j] <= targetY + kTol)) {
        int j2 = std::clamp((int)std::floor(targetY + kTol), 0, g.rows - 1);
        if (g.V[i][j2].contains(targetY - j2) && r.rv[i][j2] <= targetY + kTol) j = j2;
    }
    double y = targetY;
    bool onVertical = true;
    double x = (double)g.cols;
    rev.push_back({x, y});

    auto touch_floor = [&](int col, double ycur) {
        // Lowest pre-climb point of the vertical run at a touched column so the
        // emitted path visibly passes through every window.
        double lo = ycur;
        for (const ColumnTouch& t : touches)
            if (t.column == col) lo = std::min(lo, std::max(t.ylo, 0.0));
        int jj = std::clamp((int)std::floor(ycur - kTol), 0, g.rows - 1);
        double best = ycur;
        while (true) {
            double rowLo = (double)jj + (g.V[col][jj].empty() ? 1.0 : g.V[col][jj].lo);
            best = std::min(best, std::max(rowLo, lo));
            if (best <= lo + kTol) break;
            if (jj == 0) break;
            if (g.V[col][jj].empty() || g.V[col][jj].lo > kTol) break;
            if (g.V[col][jj - 1].empty() || g.V[col][jj - 1].hi < 1.0 - kTol) break;
            --jj;
        }
        return std::max(best, 0.0);
    };

    int guard = 8 * (g.cols + 2) * (g.rows + 2);
    while (guard-- > 0) {
        if (onVertical) {
            if (i == 0) {
                if (y > seedY + kTol) rev.push_back({0.0, seedY});
                break;
            }
            bool touchedHere = std::any_of(touches.begin(), touches.end(),
                                           [&](const ColumnTouch& t) { return t.column == i; });
            if (touchedHere) {
                double yLow = touch_floor(i, y);
                if (yLow < y - kTol) {
                    rev.push_back({(double)i, yLow});
                    y = yLow;
                    j = std::clamp((int)std::floor(y - kTol), 0, g.rows - 1);
                }
            }
            // Predecessor through cell (i-1, j).
            if (r.rh[i - 1][j] != kInf &&
                r.rh[i - 1][j] <= (double)(i - 1) + g.H[i - 1][j].hi + kTol) {
                double px = std::max(r.rh[i - 1][j], (double)(i - 1) + g.H[i - 1][j].lo);
                rev.push_back({px, (double)j});
                x = px; onVertical = false; --i; // now on horizontal boundary y = j, column i-1
                continue;
            }
            if (r.rv[i - 1][j] != kInf && r.rv[i - 1][j] <= y + kTol) {
                double py = r.rv[i - 1][j];
                --i;
                rev.push_back({(double)i, py});
                y = py;
                continue;
            }
            // Seed-column climb below (i == some column whose only source is lower rows).
            if (j > 0 && r.rv[i][j - 1] != kInf) {
                --j;
                double py = r.rv[i][j];
                rev.push_back({(double)i, py});
                y = py;
                continue;
            }
            break;
        } else {
            // On horizontal boundary y = j, at column index i (cell column i).
            if (j == 0) {
                rev.push_back({0.0, 0.0});
                break;
            }
            if (r.rv[i][j - 1] != kInf) {
                double py = r.rv[i][j - 1];
                rev.push_back({(double)i, py});
                y = py; --j; onVertical = true;
                continue;
            }
            if (r.rh[i][j - 1] != kInf && r.rh[i][j - 1] <= x + kTol) {
                double px = std::max(r.rh[i][j - 1], (double)i + g.H[i][j - 1].lo);
                --j;
                rev.push_back({px, (double)j});
                x = px;
                continue;
            }
            break;
        }
    }
    std::reverse(rev.begin(), rev.end());
    // Enforce monotone non-decreasing output (guards against kTol jitter).
    for (size_t k = 1; k < rev.size(); ++k) {
        rev[k][0] = std::max(rev[k][0], rev[k - 1][0]);
        rev[k][1] = std::max(rev[k][1], rev[k - 1][1]);
    }
    return rev;
}

namespace {

std::vector<Segment> curve_edges(const PolyCurve& c) {
    std::vector<Segment> e;
    for (int i = 0; i < c.edge_count(); ++i) e.push_back(c.edge(i));
    return e;
}

bool corner_reached(const FreeSpaceGrid& g, const ReachTable& r) {
    int j = g.rows - 1;
    return !g.V[g.cols][j].empty() && g.V[g.cols][j].hi >= 1.0 - kTol &&
           r.rv[g.cols][j] != kInf;
}

} // namespace

bool frechet_decide_open(const PolyCurve& f, const PolyCurve& g, double eps, Metric m) {
    if (distance(f.vertices.front(), g.vertices.front(), m) > eps + kTol) return false;
    if (distance(f.vertices.back(), g.vertices.back(), m) > eps + kTol) return false;
    FreeSpaceGrid grid;
    grid.build(curve_edges(f), curve_edges(g), eps, m);
    ReachTable r = propagate_reachability(grid, 0.0, {});
    return corner_reached(grid, r);
}

std::optional<BoundaryMatching> frechet_match_open(const PolyCurve& f, const PolyCurve& g,
                                                   double eps, Metric m) {
    if (distance(f.vertices.front(), g.vertices.front(), m) > eps + kTol) return std::nullopt;
    if (distance(f.vertices.back(), g.vertices.back(), m) > eps + kTol) return std::nullopt;
    FreeSpaceGrid grid;
    grid.build(curve_edges(f), curve_edges(g), eps, m);
    ReachTable r = propagate_reachability(grid, 0.0, {});
    if (!corner_reached(grid, r)) return std::nullopt;
    BoundaryMatching bm;
    bm.pts = extract_witness_path(grid, r, 0.0, (double)grid.rows, {});
    bm.offset = 0.0;
    return bm;
}

namespace {

// Cut a closed curve open at the midpoint of edge 0.
PolyCurve cut_closed(const PolyCurve& f) {
    PolyCurve out;
    out.closed = false;
    Point3 mid = f.edge(0).at(0.5);
    out.vertices.push_back(mid);
    int n = (int)f.vertices.size();
    for (int i = 1; i < n; ++i) out.vertices.push_back(f.vertices[i]);
    out.vertices.push_back(f.vertices[0]);
    out.vertices.push_back(mid);
    return out;
}

} // namespace

std::optional<BoundaryMatching> frechet_decide_closed(const PolyCurve& f, const PolyCurve& g,
                                                      double eps, Metric m) {
    const int q = g.edge_count();
    PolyCurve fc = cut_closed(f);
    std::vector<Segment> rowEdges = curve_edges(g);
    std::vector<Segment> doubled = rowEdges;
    doubled.insert(doubled.end(), rowEdges.begin(), rowEdges.end());
    FreeSpaceGrid grid;
    grid.build(curve_edges(fc), doubled, eps, m);

    std::set<double> cands;
    for (int r0 = 0; r0 < q; ++r0)
        if (!grid.V[0][r0].empty()) cands.insert((double)r0 + grid.V[0][r0].lo);
    for (int i = 0; i <= grid.cols; ++i)
        for (int j = 0; j < grid.rows; ++j) {
            if (grid.V[i][j].empty()) continue;
            double f0 = (double)j + grid.V[i][j].lo;
            double t = f0 - q;
            if (t >= -kTol && t < q) cands.insert(std::clamp(t, 0.0, (double)q));
        }

    for (double t : cands) {
        int r0 = std::clamp((int)std::floor(t), 0, q - 1);
        bool seedOk = false;
        for (int cand : {r0, r0 - 1, r0 + 1}) {
            if (cand < 0 || cand >= q) continue;
            double local = t - cand;
            if (local >= -kTol && local <= 1.0 + kTol && grid.V[0][cand].contains(local))
                seedOk = true;
        }
        if (!seedOk) continue;
        ReachTable r = propagate_reachability(grid, t, {});
        double ty = t + q;
        for (int j : {(int)std::floor(ty - kTol), (int)std::floor(ty + kTol)}) {
            if (j < 0 || j >= grid.rows) continue;
            double local = ty - j;
            if (local < -kTol || local > 1.0 + kTol) continue;
            if (!grid.V[grid.cols][j].contains(local)) continue;
            if (r.rv[grid.cols][j] > ty + kTol) continue;
            BoundaryMatching bm;
            bm.pts = extract_witness_path(grid, r, t, ty, {});
            bm.offset = t;
            return bm;
        }
    }
    return std::nullopt;
}

bool frechet_decide(const PolyCurve& f, const PolyCurve& g, double eps, Metric m) {
    if (f.closed && g.closed) return frechet_decide_closed(f, g, eps, m).has_value();
    return frechet_decide_open(f, g, eps, m);
}

namespace {

void linf_axis_breakpoints(const Vec3& w, const Vec3& u, std::set<double>& out) {
    // Parameters where the max-coordinate of |w + s u| can switch.
    double ws[3] = {w.x, w.y, w.z};
    double us[3] = {u.x, u.y, u.z};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int sa = -1; sa <= 1; sa += 2)
                for (int sb = -1; sb <= 1; sb += 2) {
                    double den = sa * us[a] - sb * us[b];
                    if (std::fabs(den) < kSolveTol) continue;
                    double s = (sb * ws[b] - sa * ws[a]) / den;
                    if (s > 0.0 && s < 1.0) out.insert(s);
                }
    // Zero crossings of each coordinate.
    for (int a = 0; a < 3; ++a) {
        if (std::fabs(us[a]) < kSolveTol) continue;
        double s = -ws[a] / us[a];
        if (s > 0.0 && s < 1.0) out.insert(s);
    }
}

// Equidistance events: values eps where dist(a, e(s)) = dist(b, e(s)) = eps
// for some s in [0, 1].
void bisector_events(const Point3& a, const Point3& b, const Segment& e, Metric m,
                     std::vector<double>& out) {
    if (m == Metric::L2) {
        // |a-e(s)|^2 - |b-e(s)|^2 is linear in s.
        Vec3 u = e.dir();
        Vec3 wa = e.a - a, wb = e.a - b;
        double c0 = wa.norm2() - wb.norm2();
        double c1 = 2.0 * (wa.dot(u) - wb.dot(u));
        if (std::fabs(c1) < kSolveTol) return;
        double s = -c0 / c1;
        if (s >= 0.0 && s <= 1.0) out.push_back(distance(a, e.at(s), m));
        return;
    }
    std::set<double> bps{0.0, 1.0};
    linf_axis_breakpoints(e.a - a, e.dir(), bps);
    linf_axis_breakpoints(e.a - b, e.dir(), bps);
    auto fa = [&](double s) { return distance(a, e.at(s), Metric::Linf); };
    auto fb = [&](double s) { return distance(b, e.at(s), Metric::Linf); };
    std::vector<double> v(bps.begin(), bps.end());
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        double s0 = v[i], s1 = v[i + 1];
        double d0 = fa(s0) - fb(s0), d1 = fa(s1) - fb(s1);
        if (d0 == 0.0) out.push_back(fa(s0));
        if ((d0 < 0) != (d1 < 0) && std::fabs(d1 - d0) > kSolveTol) {
            double s = s0 + (s1 - s0) * (-d0) / (d1 - d0);
            out.push_back(fa(std::clamp(s, s0, s1)));
        }
    }
    if (!v.empty()) {
        double s = v.back();
        if (fa(s) == fb(s)) out.push_back(fa(s));
    }
}

} // namespace

std::vector<double> curve_critical_values(const PolyCurve& f, const PolyCurve& g, Metric m) {
    std::vector<double> vals;
    std::vector<Segment> fe = curve_edges(f), ge = curve_edges(g);
    std::vector<Point3> fv = f.vertices, gv = g.vertices;
    // (a) vertex-vertex distances
    for (const Point3& p : fv)
        for (const Point3& q : gv) vals.push_back(distance(p, q, m));
    // (b) vertex-edge minimum distances
    for (const Point3& p : fv)
        for (const Segment& e : ge) vals.push_back(point_segment_distance(p, e, m));
    for (const Point3& p : gv)
        for (const Segment& e : fe) vals.push_back(point_segment_distance(p, e, m));
    // (c) monotonicity events: two vertices of one curve against an edge of the other
    for (size_t i = 0; i < fv.size(); ++i)
        for (size_t j = i + 1; j < fv.size(); ++j)
            for (const Segment& e : ge) bisector_events(fv[i], fv[j], e, m, vals);
    for (size_t i = 0; i < gv.size(); ++i)
        for (size_t j = i + 1; j < gv.size(); ++j)
            for (const Segment& e : fe) bisector_events(gv[i], gv[j], e, m, vals);

    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals) {
        if (v < 0) continue;
        if (out.empty() || v - out.back() > kTol) out.push_back(v);
    }
    return out;
}

double uniform_matching_bound(const PolyCurve& f, const PolyCurve& g, Metric m) {
    double p = f.param_length(), q = g.param_length();
    std::set<double> xs;
    for (int i = 0; i <= f.edge_count(); ++i) xs.insert((double)i);
    for (int j = 0; j <= g.edge_count(); ++j) xs.insert((double)j * p / q);
    double best = 0.0;
    for (double x : xs) best = std::max(best, distance(f.at(x), g.at(x * q / p), m));
    return best;
}

double frechet_compute(const PolyCurve& f, const PolyCurve& g, Metric m) {
    double hi = uniform_matching_bound(f, g, m) + kTol;
    double lo = 0.0;
    if (frechet_decide(f, g, 0.0, m)) return 0.0;
    // Plain bisection to well below tolerance, then snap to a critical value.
    while (hi - lo > 1e-11) {
        double mid = 0.5 * (lo + hi);
        if (frechet_decide(f, g, mid, m)) hi = mid; else lo = mid;
    }
    double v = hi;
    std::vector<double> cands = curve_critical_values(f, g, m);
    double best = v, bestGap = 1e-8;
    for (double c : cands) {
        double gap = std::fabs(c - v);
        if (gap < bestGap) { bestGap = gap; best = c; }
    }
    if (best != v && frechet_decide(f, g, best, m)) return best;
    return v;
}

double discrete_frechet(const std::vector<Point3>& a, const std::vector<Point3>& b, Metric m) {
    size_t n = a.size(), k = b.size();
    std::vector<double> prev(k), cur(k);
    for (size_t j = 0; j < k; ++j) {
        double d = distance(a[0], b[j], m);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (size_t i = 1; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            double d = distance(a[i], b[j], m);
            double reach;
            if (j == 0) reach = prev[0];
            else reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(reach, d);
        }
        std::swap(prev, cur);
    }
    return prev[k - 1];
}

std::vector<Point3> subsample_curve(const PolyCurve& c, int k) {
    std::vector<Point3> out;
    int n = c.edge_count();
    for (int i = 0; i < n; ++i) {
        Segment e = c.edge(i);
        for (int s = 0; s < k; ++s) out.push_back(e.at((double)s / k));
    }
    if (!c.closed) out.push_back(c.vertices.back());
    else out.push_back(c.vertices.front());
    return out;
}

} // namespace folded
