#include "folded/untangle.hpp"

#include "folded/linear_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <random>

namespace folded {

double& feas_tolerance() {
    static double tol = 1e-6;
    return tol;
}

namespace {

double urand(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * (1.0 / 9007199254740992.0);
}

// L2 projection onto the nondecreasing cone (pool adjacent violators).
void isotonic_project(std::vector<double>& v) {
    const size_t n = v.size();
    if (n < 2) return;
    std::vector<double> val;
    std::vector<int> cnt;
    for (size_t i = 0; i < n; ++i) {
        val.push_back(v[i]);
        cnt.push_back(1);
        while (val.size() > 1 && val[val.size() - 2] > val.back()) {
            double merged = (val[val.size() - 2] * cnt[cnt.size() - 2] + val.back() * cnt.back()) /
                            (cnt[cnt.size() - 2] + cnt.back());
            cnt[cnt.size() - 2] += cnt.back();
            val[val.size() - 2] = merged;
            val.pop_back();
            cnt.pop_back();
        }
    }
    size_t k = 0;
    for (size_t blk = 0; blk < val.size(); ++blk)
        for (int c = 0; c < cnt[blk]; ++c) v[k++] = val[blk];
}

struct PairQuadratic {
    // q(t,s) = |w + t*u - s*r|^2 - eps^2
    Vec3 w, u, r;
    double eps2 = 0.0;

    double value(double t, double s) const {
        Vec3 p = w + u * t - r * s;
        return p.norm2() - eps2;
    }
    void project(double& t, double& s) const {
        if (value(t, s) <= 0.0) return;
        double m00 = u.dot(u), m01 = -u.dot(r), m11 = r.dot(r);
        double c0 = w.dot(u), c1 = -w.dot(r);
        auto zOf = [&](double lam, double& zt, double& zs) {
            // (I + 2 lam M) z = z0 - 2 lam c
            double a = 1.0 + 2.0 * lam * m00, bq = 2.0 * lam * m01;
            double d = 1.0 + 2.0 * lam * m11;
            double rhs0 = t - 2.0 * lam * c0, rhs1 = s - 2.0 * lam * c1;
            double det = a * d - bq * bq;
            zt = (d * rhs0 - bq * rhs1) / det;
            zs = (-bq * rhs0 + a * rhs1) / det;
        };
        double lamHi = 1.0, zt, zs;
        for (int it = 0; it < 200; ++it) {
            zOf(lamHi, zt, zs);
            if (value(zt, zs) <= 0.0) break;
            lamHi *= 2.0;
        }
        double lamLo = 0.0;
        for (int it = 0; it < 120; ++it) {
            double lam = 0.5 * (lamLo + lamHi);
            zOf(lam, zt, zs);
            if (value(zt, zs) <= 0.0) lamHi = lam; else lamLo = lam;
        }
        zOf(lamHi, zt, zs);
        t = zt;
        s = zs;
    }
};

} // namespace

UntangleSystem build_untangle_system(const FoldedPolygon& P, const FoldedPolygon& Q,
                                     const MonotoneDiagonalMapping& map) {
    UntangleSystem sys;
    sys.Q = &Q;
    sys.eps = map.eps;
    sys.m = map.metric;
    std::vector<DiagonalInfo> ds = diagonals_of(P);
    std::vector<Placement> placements;
    for (const DiagonalWitness& w : map.witnesses) {
        sys.diagSegs.push_back(ds[w.placement.diag].seg);
        sys.seqs.push_back(w.path.edgeSeq);
        placements.push_back(w.placement);
    }
    sys.byDiag.resize(sys.diagSegs.size());
    for (size_t i = 0; i < sys.seqs.size(); ++i)
        for (size_t p = 0; p < sys.seqs[i].size(); ++p) {
            Crossing c;
            c.diag = (int)i;
            c.edge = sys.seqs[i][p];
            c.posInSeq = (int)p;
            sys.byDiag[i].push_back((int)sys.crossings.size());
            sys.crossings.push_back(c);
        }
    sys.byEdge.resize(Q.interiorEdges.size());
    for (size_t e = 0; e < Q.interiorEdges.size(); ++e) {
        std::vector<int> order = proper_intersection_order(Q, placements, sys.seqs, (int)e);
        for (int diag : order)
            for (int ci : sys.byDiag[diag])
                if (sys.crossings[ci].edge == (int)e) sys.byEdge[e].push_back(ci);
    }
    return sys;
}

namespace {

struct SolveWork {
    const UntangleSystem* sys;
    std::vector<int> included;   // crossing indices
    std::vector<int> localIndex; // crossing -> local or -1
    std::vector<PairQuadratic> quads;
    std::vector<Interval> Tbox, Sbox;
    std::vector<std::vector<int>> diagChains, edgeChains; // local chains

    void init(const UntangleSystem& s, const std::vector<int>& subset) {
        sys = &s;
        included = subset;
        if (included.empty())
            for (size_t i = 0; i < s.crossings.size(); ++i) included.push_back((int)i);
        localIndex.assign(s.crossings.size(), -1);
        for (size_t k = 0; k < included.size(); ++k) localIndex[included[k]] = (int)k;
        for (int ci : included) {
            const Crossing& c = s.crossings[ci];
            Segment d = s.diagSegs[c.diag];
            Segment e = s.Q->interior_edge_segment(c.edge);
            PairQuadratic pq;
            pq.w = d.a - e.a;
            pq.u = d.dir();
            pq.r = e.dir();
            pq.eps2 = s.eps * s.eps;
            quads.push_back(pq);
        }
        Tbox.assign(included.size(), Interval::full());
        Sbox.assign(included.size(), Interval::full());
        for (const auto& chain : s.byDiag) {
            std::vector<int> local;
            for (int ci : chain)
                if (localIndex[ci] >= 0) local.push_back(localIndex[ci]);
            if (local.size() >= 1) diagChains.push_back(local);
        }
        for (const auto& chain : s.byEdge) {
            std::vector<int> local;
            for (int ci : chain)
                if (localIndex[ci] >= 0) local.push_back(localIndex[ci]);
            if (local.size() >= 2) edgeChains.push_back(local);
        }
    }

    double pair_dist(int k, double t, double s) const {
        const Crossing& c = sys->crossings[included[k]];
        Segment d = sys->diagSegs[c.diag];
        Segment e = sys->Q->interior_edge_segment(c.edge);
        return distance(d.at(t), e.at(s), sys->m);
    }

    // Tighten T/S boxes against the distance constraint and both chain
    // families. Returns false on an exactly-empty box (infeasible).
    bool tighten(std::string* certificate) {
        const double pad = 1e-12;
        for (int iter = 0; iter < 64; ++iter) {
            double change = 0.0;
            for (size_t k = 0; k < included.size(); ++k) {
                const Crossing& c = sys->crossings[included[k]];
                Segment d = sys->diagSegs[c.diag];
                Segment e = sys->Q->interior_edge_segment(c.edge);
                Segment esub(e.at(Sbox[k].lo), e.at(Sbox[k].hi));
                Segment dsub(d.at(Tbox[k].lo), d.at(Tbox[k].hi));
                Interval tw = segment_segment_param_interval(dsub, esub, sys->eps, sys->m);
                if (tw.empty()) {
                    if (certificate)
                        *certificate = "crossing window empty for diagonal " +
                                       std::to_string(c.diag) + " at edge " + std::to_string(c.edge);
                    return false;
                }
                double tlo = Tbox[k].lo + tw.lo * (Tbox[k].hi - Tbox[k].lo) - pad;
                double thi = Tbox[k].lo + tw.hi * (Tbox[k].hi - Tbox[k].lo) + pad;
                change += std::fabs(Tbox[k].lo - std::max(Tbox[k].lo, tlo));
                change += std::fabs(Tbox[k].hi - std::min(Tbox[k].hi, thi));
                Tbox[k] = Interval(std::max(Tbox[k].lo, tlo), std::min(Tbox[k].hi, thi));
                Interval sw = segment_segment_param_interval(esub, dsub, sys->eps, sys->m);
                if (sw.empty()) {
                    if (certificate) *certificate = "edge window empty";
                    return false;
                }
                double slo = Sbox[k].lo + sw.lo * (Sbox[k].hi - Sbox[k].lo) - pad;
                double shi = Sbox[k].lo + sw.hi * (Sbox[k].hi - Sbox[k].lo) + pad;
                change += std::fabs(Sbox[k].lo - std::max(Sbox[k].lo, slo));
                change += std::fabs(Sbox[k].hi - std::min(Sbox[k].hi, shi));
                Sbox[k] = Interval(std::max(Sbox[k].lo, slo), std::min(Sbox[k].hi, shi));
                if (Tbox[k].empty() || Sbox[k].empty()) {
                    if (certificate)
                        *certificate = "box emptied for diagonal " + std::to_string(c.diag) +
                                       " at edge " + std::to_string(c.edge);
                    return false;
                }
            }
            auto chainPass = [&](const std::vector<std::vector<int>>& chains,
                                 std::vector<Interval>& box, const char* what) {
                for (const auto& ch : chains) {
                    for (size_t i = 1; i < ch.size(); ++i) {
                        double nl = std::max(box[ch[i]].lo, box[ch[i - 1]].lo);
                        change += nl - box[ch[i]].lo;
                        box[ch[i]].lo = nl;
                    }
                    for (size_t i = ch.size() - 1; i-- > 0;) {
                        double nh = std::min(box[ch[i]].hi, box[ch[i + 1]].hi);
                        change += box[ch[i]].hi - nh;
                        box[ch[i]].hi = nh;
                    }
                    for (int li : ch)
                        if (box[li].lo > box[li].hi + 1e-12) {
                            if (certificate)
                                *certificate = std::string("ordering contradiction (") + what + ")";
                            return false;
                        }
                }
                return true;
            };
            if (!chainPass(diagChains, Tbox, "monotone preimages")) return false;
            if (!chainPass(edgeChains, Sbox, "proper intersection order")) return false;
            if (change < 1e-11) break;
        }
        return true;
    }

    double violation(const std::vector<double>& t, const std::vector<double>& s) const {
        double v = 0.0;
        for (size_t k = 0; k < included.size(); ++k) {
            v = std::max(v, pair_dist((int)k, t[k], s[k]) - sys->eps);
            v = std::max(v, std::max(-t[k], t[k] - 1.0));
            v = std::max(v, std::max(-s[k], s[k] - 1.0));
        }
        for (const auto& ch : diagChains)
            for (size_t i = 1; i < ch.size(); ++i) v = std::max(v, t[ch[i - 1]] - t[ch[i]]);
        for (const auto& ch : edgeChains)
            for (size_t i = 1; i < ch.size(); ++i) v = std::max(v, s[ch[i - 1]] - s[ch[i]]);
        return v;
    }
};

FeasReport solve_linf(SolveWork& w) {
    FeasReport rep;
    const UntangleSystem& sys = *w.sys;
    const size_t n = w.included.size();
    LinearSystem ls;
    ls.n = (int)(2 * n); // [t_0..t_{n-1}, s_0..s_{n-1}]
    ls.lo.assign(ls.n, 0.0);
    ls.hi.assign(ls.n, 1.0);
    for (size_t k = 0; k < n; ++k) {
        const PairQuadratic& pq = w.quads[k];
        ls.lo[k] = w.Tbox[k].lo; ls.hi[k] = w.Tbox[k].hi;
        ls.lo[n + k] = w.Sbox[k].lo; ls.hi[n + k] = w.Sbox[k].hi;
        const double wc[3] = {pq.w.x, pq.w.y, pq.w.z};
        const double uc[3] = {pq.u.x, pq.u.y, pq.u.z};
        const double rc[3] = {pq.r.x, pq.r.y, pq.r.z};
        for (int c = 0; c < 3; ++c) {
            std::vector<double> row(ls.n, 0.0);
            row[k] = uc[c];
            row[n + k] = -rc[c];
            ls.add_row(row, sys.eps - wc[c]); // w + t u - s r <= eps
            std::vector<double> neg(ls.n, 0.0);
            neg[k] = -uc[c];
            neg[n + k] = rc[c];
            ls.add_row(neg, sys.eps + wc[c]); // -(w + t u - s r) <= eps
        }
    }
    auto chainRows = [&](const std::vector<std::vector<int>>& chains, size_t offset) {
        for (const auto& ch : chains)
            for (size_t i = 1; i < ch.size(); ++i) {
                std::vector<double> row(ls.n, 0.0);
                row[offset + ch[i - 1]] = 1.0;
                row[offset + ch[i]] = -1.0;
                ls.add_row(row, 0.0);
            }
    };
    chainRows(w.diagChains, 0);
    chainRows(w.edgeChains, n);
    auto pt = linear_feasible_point(ls);
    if (pt) {
        rep.verdict = Feas::Feasible;
        rep.gap = 0.0;
    } else {
        rep.verdict = Feas::Infeasible;
        rep.certificate = "linear phase-1 optimum positive";
    }
    return rep;
}

FeasReport solve_l2(SolveWork& w) {
    FeasReport rep;
    const size_t n = w.included.size();
    std::vector<double> t(n), s(n);
    for (size_t k = 0; k < n; ++k) {
        t[k] = 0.5 * (w.Tbox[k].lo + w.Tbox[k].hi);
        s[k] = 0.5 * (w.Sbox[k].lo + w.Sbox[k].hi);
    }
    double bestViol = w.violation(t, s);
    std::vector<double> bt = t, bs = s;
    double lastMove = 1.0;
    const int maxCycles = 4000;
    int cycle = 0;
    for (; cycle < maxCycles; ++cycle) {
        std::vector<double> pt = t, ps = s;
        for (size_t k = 0; k < n; ++k) w.quads[k].project(t[k], s[k]);
        for (const auto& ch : w.diagChains) {
            std::vector<double> v;
            for (int li : ch) v.push_back(t[li]);
            isotonic_project(v);
            for (size_t i = 0; i < ch.size(); ++i) t[ch[i]] = v[i];
        }
        for (const auto& ch : w.edgeChains) {
            std::vector<double> v;
            for (int li : ch) v.push_back(s[li]);
            isotonic_project(v);
            for (size_t i = 0; i < ch.size(); ++i) s[ch[i]] = v[i];
        }
        for (size_t k = 0; k < n; ++k) {
            t[k] = std::clamp(t[k], 0.0, 1.0);
            s[k] = std::clamp(s[k], 0.0, 1.0);
        }
        double viol = w.violation(t, s);
        if (viol < bestViol) {
            bestViol = viol;
            bt = t; bs = s;
        }
        lastMove = 0.0;
        for (size_t k = 0; k < n; ++k)
            lastMove = std::max({lastMove, std::fabs(t[k] - pt[k]), std::fabs(s[k] - ps[k])});
        if (bestViol <= 1e-10) break;
        if (lastMove < 1e-12) break;
    }
    rep.gap = bestViol;
    if (bestViol <= feas_tolerance()) {
        rep.verdict = Feas::Feasible;
    } else if (lastMove < 1e-9 || cycle >= maxCycles) {
        rep.verdict = bestViol > feas_tolerance() ? Feas::Infeasible : Feas::Indeterminate;
        rep.certificate = "alternating projections stalled with residual violation";
    } else {
        rep.verdict = Feas::Indeterminate;
    }
    return rep;
}

} // namespace

FeasReport solve_untangle(const UntangleSystem& sys, const std::vector<int>& crossingSubset) {
    SolveWork w;
    w.init(sys, crossingSubset);
    FeasReport rep;
    if (w.included.empty()) {
        rep.verdict = Feas::Feasible;
        return rep;
    }
    std::string cert;
    if (!w.tighten(&cert)) {
        rep.verdict = Feas::Infeasible;
        rep.certificate = cert;
        rep.gap = feas_tolerance() * 2;
        return rep;
    }
    return sys.m == Metric::Linf ? solve_linf(w) : solve_l2(w);
}

FeasReport global_untangle_feasible(const FoldedPolygon& P, const FoldedPolygon& Q,
                                    const MonotoneDiagonalMapping& map) {
    UntangleSystem sys = build_untangle_system(P, Q, map);
    return solve_untangle(sys);
}

bool untangle_space_feasible(const FoldedPolygon& Q, int interiorEdge,
                             const std::vector<Segment>& diagsInOrder, double eps, Metric m) {
    Segment e = Q.interior_edge_segment(interiorEdge);
    IntervalChain chain;
    for (const Segment& d : diagsInOrder)
        chain.push_back(segment_segment_param_interval(e, d, eps, m));
    return interval_chain_greedy(chain, 0.0, 1.0).has_value();
}

bool untangle_space_contains(const FoldedPolygon& Q, int interiorEdge,
                             const std::vector<Segment>& diagsInOrder,
                             const std::vector<double>& tTuple, double eps, Metric m) {
    Segment e = Q.interior_edge_segment(interiorEdge);
    IntervalChain chain;
    for (size_t i = 0; i < diagsInOrder.size(); ++i)
        chain.push_back(segment_point_interval(e, diagsInOrder[i].at(tTuple[i]), eps, m));
    return interval_chain_greedy(chain, 0.0, 1.0).has_value();
}

ConvexityProbeResult convexity_probe(const FoldedPolygon& Q, int interiorEdge,
                                     const std::vector<Segment>& diagsInOrder, double eps,
                                     Metric m, int trials, std::uint64_t seed) {
    ConvexityProbeResult res;
    std::mt19937_64 rng(seed);
    const size_t h = diagsInOrder.size();
    auto sampleFeasible = [&](std::vector<double>& out) {
        for (int tries = 0; tries < 4000; ++tries) {
            out.resize(h);
            for (size_t i = 0; i < h; ++i) out[i] = urand(rng);
            if (untangle_space_contains(Q, interiorEdge, diagsInOrder, out, eps, m)) return true;
        }
        return false;
    };
    std::vector<double> a, c, b(h);
    for (int tr = 0; tr < trials; ++tr) {
        ++res.trials;
        if (!sampleFeasible(a) || !sampleFeasible(c)) continue;
        ++res.feasiblePairs;
        for (size_t i = 0; i < h; ++i) b[i] = 0.5 * (a[i] + c[i]);
        if (!untangle_space_contains(Q, interiorEdge, diagsInOrder, b, eps, m)) ++res.violations;
    }
    return res;
}

PropagationSpace minkowski_ray_closure(const PropagationSpace& space,
                                       const std::vector<std::vector<double>>& rays) {
    PropagationSpace out = space;
    for (const auto& r : rays) out.rays.push_back(r);
    return out;
}

bool propagation_space_contains(const PropagationSpace& space, const std::vector<double>& x) {
    if (space.rays.empty()) {
        for (size_t i = 0; i < space.A.size(); ++i) {
            double v = 0.0;
            for (int j = 0; j < space.dim; ++j) v += space.A[i][j] * x[j];
            if (v > space.b[i] + kTol) return false;
        }
        return true;
    }
    // exists lambda >= 0 with A (x - R lambda) <= b
    LinearSystem ls;
    ls.n = (int)space.rays.size();
    ls.lo.assign(ls.n, 0.0);
    ls.hi.assign(ls.n, 1e9);
    for (size_t i = 0; i < space.A.size(); ++i) {
        std::vector<double> row(ls.n, 0.0);
        double ax = 0.0;
        for (int j = 0; j < space.dim; ++j) ax += space.A[i][j] * x[j];
        for (int k = 0; k < ls.n; ++k) {
            double ar = 0.0;
            for (int j = 0; j < space.dim; ++j) ar += space.A[i][j] * space.rays[k][j];
            row[k] = -ar;
        }
        ls.add_row(row, space.b[i] - ax);
    }
    return linear_feasible_point(ls).has_value();
}

FeasReport propagate_edge_tree(const FoldedPolygon& P, const FoldedPolygon& Q,
                               const MonotoneDiagonalMapping& map, int rootEdge) {
    UntangleSystem sys = build_untangle_system(P, Q, map);
    const int ne = (int)Q.interiorEdges.size();
    FeasReport rep;
    if (ne == 0) {
        rep.verdict = Feas::Feasible;
        return rep;
    }
    // Edge tree: edges adjacent when they bound a common face; rooted BFS from
    // the chosen root edge.
    std::vector<std::vector<int>> edgesOfFace(Q.faces.size());
    for (int e = 0; e < ne; ++e) {
        edgesOfFace[Q.interiorEdges[e].f0].push_back(e);
        edgesOfFace[Q.interiorEdges[e].f1].push_back(e);
    }
    std::vector<int> parent(ne, -2);
    std::vector<int> order;
    std::deque<int> dq{rootEdge};
    parent[rootEdge] = -1;
    while (!dq.empty()) {
        int e = dq.front();
        dq.pop_front();
        order.push_back(e);
        for (int f : {Q.interiorEdges[e].f0, Q.interiorEdges[e].f1})
            for (int g : edgesOfFace[f])
                if (parent[g] == -2) {
                    parent[g] = e;
                    dq.push_back(g);
                }
    }
    // Subtree edge sets, processed bottom-up.
    std::vector<std::vector<int>> subtreeEdges(ne);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int e = *it;
        subtreeEdges[e].push_back(e);
        for (int g = 0; g < ne; ++g)
            if (parent[g] == e)
                subtreeEdges[e].insert(subtreeEdges[e].end(), subtreeEdges[g].begin(),
                                       subtreeEdges[g].end());
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int e = *it;
        std::vector<char> inSub(ne, 0);
        for (int g : subtreeEdges[e]) inSub[g] = 1;
        std::vector<int> subset;
        for (size_t ci = 0; ci < sys.crossings.size(); ++ci)
            if (inSub[sys.crossings[ci].edge]) subset.push_back((int)ci);
        if (subset.empty()) continue;
        FeasReport sub = solve_untangle(sys, subset);
        if (sub.verdict == Feas::Infeasible) return sub;
        if (e == rootEdge) return sub;
    }
    rep.verdict = Feas::Feasible;
    return rep;
}

FptResult fpt_decide(const FoldedPolygon& P, const FoldedPolygon& Q, double eps, Metric m) {
    FptResult res;
    std::vector<MonotoneDiagonalMapping> maps = all_accepting_mappings(P, Q, eps, m);
    res.classesTried = (int)maps.size();
    for (const MonotoneDiagonalMapping& map : maps) {
        FeasReport rep = global_untangle_feasible(P, Q, map);
        if (rep.verdict == Feas::Feasible) {
            res.accepted = true;
            res.witness = map;
            return res;
        }
        if (rep.verdict == Feas::Indeterminate) res.indeterminate = true;
    }
    return res;
}

double fpt_compute(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m) {
    if (fpt_decide(P, Q, 0.0, m).accepted) return 0.0;
    double estar = minimize_monotonicity_eps(P, Q, m);
    double lo = std::max(0.0, estar - 1e-9);
    double hi = std::max(9.0 * estar, estar + 1.0);
    int guard = 0;
    while (!fpt_decide(P, Q, hi, m).accepted && guard++ < 8) hi = hi * 2.0 + 1.0;
    if (fpt_decide(P, Q, lo, m).accepted) return lo;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        if (fpt_decide(P, Q, mid, m).accepted) hi = mid; else lo = mid;
    }
    return hi;
}

} // namespace folded
