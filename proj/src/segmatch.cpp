#include "folded/segmatch.hpp"

#include <algorithm>
#include <stdexcept>

namespace folded {

std::optional<FrechetShortestPath> match_segment_to_sequence(const Segment& d,
                                                             const std::vector<Segment>& seq,
                                                             const Point3& u, const Point3& v,
                                                             double eps, Metric m) {
    if (distance(d.a, u, m) > eps + kTol) return std::nullopt;
    if (distance(d.b, v, m) > eps + kTol) return std::nullopt;
    IntervalChain chain;
    chain.reserve(seq.size());
    for (const Segment& e : seq) chain.push_back(segment_segment_param_interval(d, e, eps, m));
    auto pick = interval_chain_greedy(chain, 0.0, 1.0);
    if (!pick) return std::nullopt;

    FrechetShortestPath out;
    out.u = u;
    out.v = v;
    out.tOnD = *pick;
    out.polyline.push_back(u);
    for (size_t i = 0; i < seq.size(); ++i) {
        Point3 dp = d.at(out.tOnD[i]);
        double s;
        if (m == Metric::L2) {
            s = closest_param_on_segment(dp, seq[i], m);
        } else {
            Interval w = segment_point_interval(seq[i], dp, eps, m);
            s = w.empty() ? closest_param_on_segment(dp, seq[i], m) : w.lo;
        }
        out.sOnEdge.push_back(s);
        out.polyline.push_back(seq[i].at(s));
    }
    out.polyline.push_back(v);
    return out;
}

std::optional<FrechetShortestPath> match_segment_to_sequence(const Segment& d,
                                                             const FoldedPolygon& Q,
                                                             const std::vector<int>& edgeIds,
                                                             const Point3& u, const Point3& v,
                                                             double eps, Metric m) {
    std::vector<Segment> seq;
    seq.reserve(edgeIds.size());
    for (int e : edgeIds) seq.push_back(Q.interior_edge_segment(e));
    auto r = match_segment_to_sequence(d, seq, u, v, eps, m);
    if (r) r->edgeSeq = edgeIds;
    return r;
}

std::pair<bool, bool> subsequence_feasibility(const Segment& d,
                                              const std::vector<Segment>& fullSeq,
                                              const std::vector<int>& subIndices,
                                              const Point3& u, const Point3& v, double eps,
                                              Metric m) {
    for (size_t i = 1; i < subIndices.size(); ++i)
        if (subIndices[i] <= subIndices[i - 1])
            throw std::invalid_argument("subsequence indices must be strictly increasing");
    for (int ix : subIndices)
        if (ix < 0 || ix >= (int)fullSeq.size())
            throw std::invalid_argument("subsequence index out of range");
    std::vector<Segment> sub;
    for (int ix : subIndices) sub.push_back(fullSeq[ix]);
    bool full = match_segment_to_sequence(d, fullSeq, u, v, eps, m).has_value();
    bool part = match_segment_to_sequence(d, sub, u, v, eps, m).has_value();
    return {full, part};
}

double frechet_segment_to_path(const Segment& d, const std::vector<Point3>& path, Metric m) {
    PolyCurve f;
    f.vertices = {d.a, d.b};
    PolyCurve g;
    g.vertices = path;
    if (g.vertices.size() < 2) g.vertices.push_back(g.vertices.front());
    return frechet_compute(f, g, m);
}

} // namespace folded
