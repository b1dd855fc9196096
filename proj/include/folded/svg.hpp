#pragma once

#include "folded/curves.hpp"
#include "folded/decide.hpp"

#include <optional>
#include <string>

namespace folded {

// Static diagnostic rendering of a (double) free-space diagram: feasible
// regions shaded, witness path drawn when present.
std::string render_free_space_svg(const FreeSpaceGrid& grid,
                                  const std::optional<std::vector<std::array<double, 2>>>& witness,
                                  const std::vector<int>& markedColumns);

// Free-space diagram of two curves at eps (doubled rows for closed curves),
// plus optional witness matching.
std::string render_curves_svg(const PolyCurve& f, const PolyCurve& g, double eps, Metric m);

// Surface run rendering: double free-space diagram of the boundaries with the
// accepted matching (if any) and per-edge crossing-order strips.
std::string render_surfaces_svg(const FoldedPolygon& P, const FoldedPolygon& Q, double eps,
                                Metric m);

} // namespace folded
