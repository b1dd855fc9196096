#pragma once

#include "folded/decide.hpp"

#include <optional>
#include <vector>

namespace folded {

struct ApproxResult {
    double epsStar = 0.0;
    double lower = 0.0;
    double upper = 0.0; // 9 * epsStar
    bool swapped = false; // true when the roles were exchanged so k <= l
    std::optional<MonotoneDiagonalMapping> witness;
};

// Constant-factor approximation: the smallest value passing the diagonal
// monotonicity test brackets the true distance within a factor of nine.
ApproxResult approx_compute(const FoldedPolygon& P, const FoldedPolygon& Q, Metric m);

struct TightnessEntry {
    double epsStar = 0.0;
    double exact = 0.0;
    double ratio = 1.0;
};

struct TightnessReport {
    std::vector<TightnessEntry> entries;
    double maxRatio = 1.0;
    double meanRatio = 1.0;
};

TightnessReport approx_tightness_report(
    const std::vector<std::pair<FoldedPolygon, FoldedPolygon>>& instances, Metric m);

} // namespace folded
