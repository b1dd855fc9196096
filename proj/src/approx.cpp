#include "folded/approx.hpp"

#include "folded/untangle.hpp"

namespace folded {

ApproxResult approx_compute(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m) {
    ApproxResult res;
    const FoldedPolygon* A = &P;
    const FoldedPolygon* B = &Q;
    if (P.interiorEdges.size() > Q.interiorEdges.size()) {
        std::swap(A, B);
        res.swapped = true;
    }
    res.epsStar = minimize_monotonicity_eps(*A, *B, m);
    res.lower = res.epsStar;
    res.upper = 9.0 * res.epsStar;
    res.witness = diagonal_monotonicity_test(*A, *B, res.epsStar, m);
    return res;
}

TightnessReport approx_tightness_report(
    const std::vector<std::pair<FoldedPolygon, FoldedPolygon>>& instances, Metric m) {
    TightnessReport rep;
    double sum = 0.0;
    for (const auto& [P, Q] : instances) {
        TightnessEntry e;
        e.epsStar = minimize_monotonicity_eps(P, Q, m);
        e.exact = fpt_compute(P, Q, m);
        e.ratio = e.epsStar <= kTol ? 1.0 : e.exact / e.epsStar;
        rep.entries.push_back(e);
        rep.maxRatio = std::max(rep.maxRatio, e.ratio);
        sum += e.ratio;
    }
    rep.meanRatio = rep.entries.empty() ? 1.0 : sum / rep.entries.size();
    return rep;
}

} // namespace folded
