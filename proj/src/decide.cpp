#include "folded/decide.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace folded {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<DiagonalInfo> diagonals_of(const FoldedPolygon& P) {
    std::vector<DiagonalInfo> out;
    for (size_t i = 0; i < P.interiorEdges.size(); ++i) {
        const InteriorEdge& e = P.interiorEdges[i];
        DiagonalInfo d;
        d.edgeIdx = (int)i;
        d.seg = Segment(P.vertices[e.v0], P.vertices[e.v1]);
        d.posStart = P.boundaryPos[e.v0];
        d.posEnd = P.boundaryPos[e.v1];
        out.push_back(d);
    }
    return out;
}

int boundary_pos_to_cut_column(const FoldedPolygon& P, int pos) {
    int n = P.boundary_size();
    return pos == 0 ? n : pos;
}

double cut_param_to_boundary(const FoldedPolygon& P, double x) {
    int n = P.boundary_size();
    double b;
    if (x <= 1.0) b = 0.5 + 0.5 * x;
    else if (x <= (double)n) b = x;
    else b = (double)n + 0.5 * (x - n);
    b = std::fmod(b, (double)n);
    if (b < 0) b += n;
    return b;
}

namespace {

PolyCurve cut_boundary_curve(const FoldedPolygon& P) {
    PolyCurve c;
    c.closed = false;
    Point3 mid = P.boundary_edge(0).at(0.5);
    c.vertices.push_back(mid);
    int n = P.boundary_size();
    for (int i = 1; i < n; ++i) c.vertices.push_back(P.vertices[P.boundary[i]]);
    c.vertices.push_back(P.vertices[P.boundary[0]]);
    c.vertices.push_back(mid);
    return c;
}

// [min y, max y] of a monotone path at a fixed x.
Interval path_crossing_interval(const std::vector<std::array<double, 2>>& path, double x) {
    double lo = kInf, hi = -kInf;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        double x0 = path[i][0], x1 = path[i + 1][0];
        double y0 = path[i][1], y1 = path[i + 1][1];
        if (x < x0 - kTol || x > x1 + kTol) continue;
        if (x1 - x0 <= kTol) {
            lo = std::min({lo, y0, y1});
            hi = std::max({hi, y0, y1});
        } else {
            double a = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
            double y = y0 + a * (y1 - y0);
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    if (lo > hi) return Interval::empty_interval();
    return Interval(lo, hi);
}

struct Endpoint {
    int diag = -1;
    bool isStart = false;
    int column = 0;
    Point3 pt;
};

struct DecideContext {
    const FoldedPolygon* P = nullptr;
    const FoldedPolygon* Q = nullptr;
    double eps = 0.0;
    Metric m = Metric::L2;
    std::vector<DiagonalInfo> diags;
    int q = 0;
    PolyCurve cutP;
    FreeSpaceGrid grid;
    std::vector<double> baseCands;
    std::vector<Endpoint> endpoints;                  // sorted by column
    std::vector<std::vector<Interval>> balls;         // [endpoint][row mod q]
    mutable std::map<std::array<int, 3>, bool> bitMemo; // (diag, rowU%q, rowV%q) -> greedy bit

    void init(const FoldedPolygon& P_, const FoldedPolygon& Q_, double eps_, Metric m_) {
        P = &P_; Q = &Q_; eps = eps_; m = m_;
        diags = diagonals_of(P_);
        q = Q_.boundary_size();
        cutP = cut_boundary_curve(P_);
        std::vector<Segment> colEdges;
        for (int i = 0; i < cutP.edge_count(); ++i) colEdges.push_back(cutP.edge(i));
        std::vector<Segment> rowEdges;
        for (int j = 0; j < q; ++j) rowEdges.push_back(Q_.boundary_edge(j));
        rowEdges.insert(rowEdges.end(), rowEdges.begin(), rowEdges.begin() + q);
        grid.build(colEdges, rowEdges, eps_, m_);

        std::set<double> cs;
        for (int r = 0; r < q; ++r)
            if (!grid.V[0][r].empty()) cs.insert((double)r + grid.V[0][r].lo);
        for (int i = 0; i <= grid.cols; ++i)
            for (int j = 0; j < grid.rows; ++j) {
                if (grid.V[i][j].empty()) continue;
                double t = (double)j + grid.V[i][j].lo - q;
                if (t >= -kTol && t < q) cs.insert(std::clamp(t, 0.0, (double)q));
            }
        baseCands.assign(cs.begin(), cs.end());

        for (size_t i = 0; i < diags.size(); ++i) {
            Endpoint a;
            a.diag = (int)i; a.isStart = true;
            a.column = boundary_pos_to_cut_column(P_, diags[i].posStart);
            a.pt = diags[i].seg.a;
            Endpoint b;
            b.diag = (int)i; b.isStart = false;
            b.column = boundary_pos_to_cut_column(P_, diags[i].posEnd);
            b.pt = diags[i].seg.b;
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
        std::stable_sort(endpoints.begin(), endpoints.end(),
                         [](const Endpoint& a, const Endpoint& b) { return a.column < b.column; });
        balls.assign(endpoints.size(), std::vector<Interval>(q));
        for (size_t e = 0; e < endpoints.size(); ++e)
            for (int r = 0; r < q; ++r)
                balls[e][r] = segment_point_interval(Q->boundary_edge(r), endpoints[e].pt, eps, m);
    }

    bool interior_bit(int diag, int rowU, int rowV) const {
        std::array<int, 3> key{diag, rowU % q, rowV % q};
        auto it = bitMemo.find(key);
        if (it != bitMemo.end()) return it->second;
        int fu = Q->boundaryEdgeFace[key[1]];
        int fv = Q->boundaryEdgeFace[key[2]];
        std::vector<int> seq = edge_sequence_between_faces(*Q, fu, fv);
        IntervalChain chain;
        for (int e : seq)
            chain.push_back(
                segment_segment_param_interval(diags[diag].seg, Q->interior_edge_segment(e), eps, m));
        bool ok = interval_chain_greedy(chain, 0.0, 1.0).has_value();
        bitMemo[key] = ok;
        return ok;
    }

    std::optional<std::pair<double, ReachTable>> run_closed(
        const std::vector<ColumnTouch>& touches) const {
        std::set<double> cs(baseCands.begin(), baseCands.end());
        for (const ColumnTouch& t : touches) {
            for (double v : {t.ylo, t.ylo - q}) {
                if (v >= -kTol && v < q) cs.insert(std::clamp(v, 0.0, (double)q));
            }
        }
        for (double t : cs) {
            int r0 = std::clamp((int)std::floor(t), 0, q - 1);
            bool seedOk = false;
            for (int cand : {r0, r0 - 1, r0 + 1}) {
                if (cand < 0 || cand >= q) continue;
                double local = t - cand;
                if (local >= -kTol && local <= 1.0 + kTol && grid.V[0][cand].contains(local))
                    seedOk = true;
            }
            if (!seedOk) continue;
            ReachTable r = propagate_reachability(grid, t, touches);
            double ty = t + q;
            for (int j : {(int)std::floor(ty - kTol), (int)std::floor(ty + kTol)}) {
                if (j < 0 || j >= grid.rows) continue;
                double local = ty - j;
                if (local < -kTol || local > 1.0 + kTol) continue;
                if (!grid.V[grid.cols][j].contains(local)) continue;
                if (r.rv[grid.cols][j] > ty + kTol) continue;
                return std::make_pair(t, std::move(r));
            }
        }
        return std::nullopt;
    }
};

// Assemble the mapping for an accepted class from its witness path.
std::optional<MonotoneDiagonalMapping> build_mapping(const DecideContext& ctx,
                                                     const std::vector<int>& rows, double t,
                                                     const ReachTable& reach,
                                                     const std::vector<ColumnTouch>& touches) {
    MonotoneDiagonalMapping map;
    map.eps = ctx.eps;
    map.metric = ctx.m;
    map.matching.pts = extract_witness_path(ctx.grid, reach, t, t + ctx.q, touches);
    map.matching.offset = t;

    const int k = (int)ctx.diags.size();
    std::vector<Placement> placements(k);
    std::vector<std::pair<int, int>> hostRows(k, {-1, -1});
    for (size_t e = 0; e < ctx.endpoints.size(); ++e) {
        const Endpoint& ep = ctx.endpoints[e];
        int r = rows[e];
        Interval ball = ctx.balls[e][r % ctx.q];
        Interval window((double)r + ball.lo, (double)r + ball.hi);
        Interval cross = path_crossing_interval(map.matching.pts, (double)ep.column);
        double y;
        if (cross.empty()) {
            y = window.lo;
        } else {
            Interval both = window.intersect(cross);
            if (!both.empty()) y = both.lo;
            else if (cross.hi < window.lo) y = window.lo;
            else y = window.hi;
        }
        BoundaryPoint bp{r % ctx.q, std::clamp(y - r, 0.0, 1.0)};
        placements[ep.diag].diag = ep.diag;
        if (ep.isStart) {
            placements[ep.diag].u = bp;
            hostRows[ep.diag].first = r;
        } else {
            placements[ep.diag].v = bp;
            hostRows[ep.diag].second = r;
        }
    }
    map.cls.hostRows = hostRows;

    for (int i = 0; i < k; ++i) {
        int fu = ctx.Q->boundaryEdgeFace[placements[i].u.edge];
        int fv = ctx.Q->boundaryEdgeFace[placements[i].v.edge];
        std::vector<int> seq = edge_sequence_between_faces(*ctx.Q, fu, fv);
        Point3 pu = ctx.Q->boundary_point(placements[i].u);
        Point3 pv = ctx.Q->boundary_point(placements[i].v);
        auto path =
            match_segment_to_sequence(ctx.diags[i].seg, *ctx.Q, seq, pu, pv, ctx.eps, ctx.m);
        if (!path) return std::nullopt;
        DiagonalWitness w;
        w.placement = placements[i];
        w.path = *path;
        map.witnesses.push_back(std::move(w));
    }
    return map;
}

// Depth-first enumeration over host-row assignments, in lexicographic order.
// onClass returns true to stop the search.
void enumerate_classes(const DecideContext& ctx,
                       const std::function<bool(const std::vector<int>&)>& onClass,
                       std::size_t maxClasses) {
    const size_t ne = ctx.endpoints.size();
    std::vector<int> rows(ne, -1);
    std::vector<int> startRowOf(ctx.diags.size(), -1);
    std::size_t tried = 0;
    bool stop = false;

    std::function<void(size_t)> rec = [&](size_t idx) {
        if (stop) return;
        if (idx == ne) {
            ++tried;
            if (onClass(rows)) stop = true;
            if (tried >= maxClasses) stop = true;
            return;
        }
        const Endpoint& ep = ctx.endpoints[idx];
        int minRow = idx == 0 ? 0 : rows[idx - 1];
        int maxRow = 2 * ctx.q - 1;
        if (idx > 0) maxRow = std::min(maxRow, rows[0] + ctx.q);
        for (int r = minRow; r <= maxRow && !stop; ++r) {
            if (ctx.balls[idx][r % ctx.q].empty()) continue;
            if (!ep.isStart) {
                int ru = startRowOf[ep.diag];
                if (ru >= 0 && !ctx.interior_bit(ep.diag, ru, r)) continue;
            }
            rows[idx] = r;
            if (ep.isStart) startRowOf[ep.diag] = r;
            rec(idx + 1);
            if (ep.isStart) startRowOf[ep.diag] = -1;
            rows[idx] = -1;
        }
    };
    rec(0);
}

std::vector<ColumnTouch> touches_for(const DecideContext& ctx, const std::vector<int>& rows) {
    std::vector<ColumnTouch> ts;
    for (size_t e = 0; e < ctx.endpoints.size(); ++e) {
        const Endpoint& ep = ctx.endpoints[e];
        Interval ball = ctx.balls[e][rows[e] % ctx.q];
        ts.push_back(ColumnTouch{ep.column, (double)rows[e] + ball.lo, (double)rows[e] + ball.hi});
    }
    return ts;
}

// Fast path: derive candidate classes from the unrestricted witness.
std::optional<MonotoneDiagonalMapping> fast_path(const DecideContext& ctx) {
    auto base = ctx.run_closed({});
    if (!base) return std::nullopt;
    if (ctx.diags.empty()) {
        std::vector<int> rows;
        return build_mapping(ctx, rows, base->first, base->second, {});
    }
    auto path = extract_witness_path(ctx.grid, base->second, base->first, base->first + ctx.q, {});
    const size_t ne = ctx.endpoints.size();
    std::vector<std::vector<int>> options(ne);
    for (size_t e = 0; e < ne; ++e) {
        Interval cross = path_crossing_interval(path, (double)ctx.endpoints[e].column);
        if (cross.empty()) return std::nullopt;
        int rlo = std::max(0, (int)std::floor(cross.lo - kTol));
        int rhi = std::min(2 * ctx.q - 1, (int)std::floor(cross.hi + kTol));
        for (int r = rlo; r <= rhi; ++r) {
            Interval ball = ctx.balls[e][r % ctx.q];
            if (ball.empty()) continue;
            Interval window((double)r + ball.lo, (double)r + ball.hi);
            if (!window.intersect(cross).empty()) options[e].push_back(r);
        }
        if (options[e].empty()) return std::nullopt;
        if (options[e].size() > 4) options[e].resize(4);
    }
    // Product over per-endpoint options (small).
    std::vector<int> rows(ne, 0);
    std::function<std::optional<MonotoneDiagonalMapping>(size_t)> rec =
        [&](size_t idx) -> std::optional<MonotoneDiagonalMapping> {
        if (idx == ne) {
            std::vector<int> startRowOf(ctx.diags.size(), -1);
            for (size_t e = 0; e < ne; ++e)
                if (ctx.endpoints[e].isStart) startRowOf[ctx.endpoints[e].diag] = rows[e];
            for (size_t e = 0; e < ne; ++e) {
                const Endpoint& ep = ctx.endpoints[e];
                if (!ep.isStart && !ctx.interior_bit(ep.diag, startRowOf[ep.diag], rows[e]))
                    return std::nullopt;
            }
            return build_mapping(ctx, rows, base->first, base->second, {});
        }
        for (int r : options[idx]) {
            if (idx > 0 && r < rows[idx - 1]) continue;
            rows[idx] = r;
            auto res = rec(idx + 1);
            if (res) return res;
        }
        return std::nullopt;
    };
    return rec(0);
}

} // namespace

std::optional<MonotoneDiagonalMapping> diagonal_monotonicity_test(const FoldedPolygon& P,
                                                                  const FoldedPolygon& Q,
                                                                  double eps, Metric m) {
    DecideContext ctx;
    ctx.init(P, Q, eps, m);
    if (auto fast = fast_path(ctx)) return fast;
    if (ctx.diags.empty()) return std::nullopt; // boundary matching alone failed

    std::optional<MonotoneDiagonalMapping> found;
    enumerate_classes(
        ctx,
        [&](const std::vector<int>& rows) {
            auto touches = touches_for(ctx, rows);
            auto run = ctx.run_closed(touches);
            if (!run) return false;
            auto map = build_mapping(ctx, rows, run->first, run->second, touches);
            if (!map) return false;
            found = std::move(map);
            return true;
        },
        100000);
    return found;
}

std::vector<MonotoneDiagonalMapping> all_accepting_mappings(const FoldedPolygon& P,
                                                            const FoldedPolygon& Q, double eps,
                                                            Metric m, std::size_t maxClasses) {
    DecideContext ctx;
    ctx.init(P, Q, eps, m);
    std::vector<MonotoneDiagonalMapping> out;
    if (ctx.diags.empty()) {
        auto base = ctx.run_closed({});
        if (base) {
            std::vector<int> rows;
            if (auto map = build_mapping(ctx, rows, base->first, base->second, {}))
                out.push_back(std::move(*map));
        }
        return out;
    }
    std::set<std::vector<std::pair<int, int>>> seen;
    enumerate_classes(
        ctx,
        [&](const std::vector<int>& rows) {
            std::vector<std::pair<int, int>> key;
            {
                std::vector<std::pair<int, int>> hostRows(ctx.diags.size());
                for (size_t e = 0; e < ctx.endpoints.size(); ++e) {
                    const Endpoint& ep = ctx.endpoints[e];
                    if (ep.isStart) hostRows[ep.diag].first = rows[e] % ctx.q;
                    else hostRows[ep.diag].second = rows[e] % ctx.q;
                }
                key = hostRows;
            }
            if (seen.count(key)) return false;
            auto touches = touches_for(ctx, rows);
            auto run = ctx.run_closed(touches);
            if (!run) return false;
            auto map = build_mapping(ctx, rows, run->first, run->second, touches);
            if (!map) return false;
            seen.insert(key);
            out.push_back(std::move(*map));
            return false;
        },
        maxClasses);
    return out;
}

std::vector<double> surface_critical_values(const FoldedPolygon& P, const FoldedPolygon& Q,
                                            Metric m) {
    std::vector<double> vals = curve_critical_values(P.boundary_curve(), Q.boundary_curve(), m);

    auto add_vertex_edge = [&](const FoldedPolygon& A, const FoldedPolygon& B) {
        for (int v : A.boundary)
            for (size_t e = 0; e < B.interiorEdges.size(); ++e)
                vals.push_back(
                    point_segment_distance(A.vertices[v], B.interior_edge_segment((int)e), m));
    };
    add_vertex_edge(P, Q);
    add_vertex_edge(Q, P);

    auto add_diag_events = [&](const FoldedPolygon& A, const FoldedPolygon& B) {
        std::vector<DiagonalInfo> ds = diagonals_of(A);
        for (const DiagonalInfo& d : ds) {
            std::vector<Segment> es;
            for (size_t e = 0; e < B.interiorEdges.size(); ++e)
                es.push_back(B.interior_edge_segment((int)e));
            for (const Segment& e : es) vals.push_back(segment_segment_distance(d.seg, e, m));
            for (size_t i = 0; i < es.size(); ++i)
                for (size_t j = i + 1; j < es.size(); ++j) {
                    auto f = [&](double t) {
                        Point3 p = d.seg.at(t);
                        return std::max(point_segment_distance(p, es[i], m),
                                        point_segment_distance(p, es[j], m));
                    };
                    double t = minimize_convex(f, 0.0, 1.0);
                    vals.push_back(f(t));
                }
        }
    };
    add_diag_events(P, Q);
    add_diag_events(Q, P);

    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals) {
        if (v < 0) continue;
        if (out.empty() || v - out.back() > kTol) out.push_back(v);
    }
    return out;
}

double minimize_monotonicity_eps(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m,
                                 std::string* diagnostic) {
    auto accepts = [&](double e) { return diagonal_monotonicity_test(P, Q, e, m).has_value(); };
    if (accepts(0.0)) return 0.0;
    std::vector<double> cands = surface_critical_values(P, Q, m);
    double top = cands.empty() ? 1.0 : cands.back();
    while (!accepts(top)) top = top * 2.0 + 1.0;
    // Binary search over the candidate list.
    size_t lo = 0, hi = cands.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (accepts(cands[mid])) hi = mid; else lo = mid + 1;
    }
    double below = 0.0, found = top;
    if (lo < cands.size()) {
        found = cands[lo];
        below = lo == 0 ? 0.0 : cands[lo - 1];
    } else {
        below = cands.empty() ? 0.0 : cands.back();
    }
    // Verify against plain bisection; fall back when the candidate list was
    // incomplete near the optimum.
    double a = below, b = found;
    while (b - a > 1e-9) {
        double mid = 0.5 * (a + b);
        if (accepts(mid)) b = mid; else a = mid;
    }
    if (found - b > 10 * kTol) {
        if (diagnostic)
            *diagnostic = "critical-value list incomplete near optimum; bisection refinement used";
        return b;
    }
    return found;
}

std::vector<int> proper_intersection_order(const FoldedPolygon& Q,
                                           const std::vector<Placement>& placements,
                                           const std::vector<std::vector<int>>& seqs,
                                           int interiorEdge) {
    const InteriorEdge& e = Q.interiorEdges[interiorEdge];
    // Faces on the e.f0 side after cutting the dual tree at this edge.
    std::vector<char> sideF0(Q.faces.size(), 0);
    {
        std::vector<int> stack{e.f0};
        sideF0[e.f0] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (auto [g, ei] : Q.dual[f]) {
                if (ei == interiorEdge) continue;
                if (!sideF0[g]) { sideF0[g] = 1; stack.push_back(g); }
            }
        }
    }
    double alpha = Q.boundaryPos[e.v0];
    double beta = Q.boundaryPos[e.v1];
    // Which side's boundary arc is (alpha, beta)?
    bool f0IsArc1 = false;
    for (int be = 0; be < Q.boundary_size(); ++be) {
        if (be >= alpha && be + 1 <= beta) {
            f0IsArc1 = sideF0[Q.boundaryEdgeFace[be]];
            break;
        }
    }
    std::vector<std::pair<double, int>> order;
    for (size_t i = 0; i < placements.size(); ++i) {
        bool crosses = std::find(seqs[i].begin(), seqs[i].end(), interiorEdge) != seqs[i].end();
        if (!crosses) continue;
        int fu = Q.boundaryEdgeFace[placements[i].u.edge];
        bool uOnArc1 = (sideF0[fu] != 0) == f0IsArc1;
        const BoundaryPoint& w = uOnArc1 ? placements[i].u : placements[i].v;
        order.push_back({Q.boundary_param(w), (int)i});
    }
    std::stable_sort(order.begin(), order.end());
    std::vector<int> out;
    for (auto& [w, i] : order) out.push_back(i);
    return out;
}

ConvexReductionCheck convex_target_reduction_check(const FoldedPolygon& P,
                                                   const FoldedPolygon& Q, Metric m) {
    ConvexReductionCheck r;
    if (Q.faces.size() != 1) {
        r.ok = false;
        return r;
    }
    r.surfaceValue = minimize_monotonicity_eps(P, Q, m);
    r.boundaryValue = frechet_compute(P.boundary_curve(), Q.boundary_curve(), m);
    r.ok = std::fabs(r.surfaceValue - r.boundaryValue) <= 1e-8;
    return r;
}

bool verify_mapping(const FoldedPolygon& P, const FoldedPolygon& Q,
                    const MonotoneDiagonalMapping& map, std::string* whyNot) {
    PolyCurve cutP = cut_boundary_curve(P);
    PolyCurve bQ = Q.boundary_curve();
    const double slack = map.eps + 1e-7;
    double prevX = -kInf, prevY = -kInf;
    for (const auto& pt : map.matching.pts) {
        if (pt[0] < prevX - kTol || pt[1] < prevY - kTol) {
            if (whyNot) *whyNot = "matching not monotone";
            return false;
        }
        prevX = pt[0];
        prevY = pt[1];
        double d = distance(cutP.at(pt[0]), bQ.at(pt[1]), map.metric);
        if (d > slack) {
            if (whyNot) *whyNot = "matched boundary pair beyond eps";
            return false;
        }
    }
    if (!map.matching.pts.empty()) {
        double width = map.matching.pts.back()[1] - map.matching.pts.front()[1];
        if (std::fabs(width - Q.boundary_size()) > 1e-6) {
            if (whyNot) *whyNot = "matching does not cover the target boundary exactly once";
            return false;
        }
    }
    for (const DiagonalWitness& w : map.witnesses) {
        const DiagonalInfo d = diagonals_of(P)[w.placement.diag];
        double df = frechet_segment_to_path(d.seg, w.path.polyline, map.metric);
        if (df > slack) {
            if (whyNot) *whyNot = "diagonal witness beyond eps";
            return false;
        }
        for (size_t i = 1; i < w.path.tOnD.size(); ++i)
            if (w.path.tOnD[i] < w.path.tOnD[i - 1] - kTol) {
                if (whyNot) *whyNot = "witness preimages not monotone";
                return false;
            }
    }
    return true;
}

} // namespace folded
