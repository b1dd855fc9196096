#include "folded/svg.hpp"

#include "folded/json_io.hpp"
#include "folded/untangle.hpp"

#include <cmath>
#include <sstream>

namespace folded {

namespace {

constexpr double kCell = 28.0;
constexpr double kPad = 24.0;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

std::string render_free_space_svg(const FreeSpaceGrid& grid,
                                  const std::optional<std::vector<std::array<double, 2>>>& witness,
                                  const std::vector<int>& markedColumns) {
    const int W = grid.cols, H = grid.rows;
    double width = 2 * kPad + W * kCell, height = 2 * kPad + H * kCell;
    auto X = [&](double x) { return kPad + x * kCell; };
    auto Y = [&](double y) { return height - kPad - y * kCell; };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"#404040\"/>\n";
    // Feasible region, shaded per cell by the convex hull of its boundary
    // interval endpoints (the cell free space is convex).
    for (int i = 0; i < W; ++i) {
        for (int j = 0; j < H; ++j) {
            std::vector<std::array<double, 2>> pts;
            const Interval &L = grid.V[i][j], &R = grid.V[i + 1][j];
            const Interval &B = grid.H[i][j], &T = grid.H[i][j + 1];
            if (!B.empty()) {
                pts.push_back({i + B.lo, (double)j});
                pts.push_back({i + B.hi, (double)j});
            }
            if (!R.empty()) {
                pts.push_back({(double)i + 1, j + R.lo});
                pts.push_back({(double)i + 1, j + R.hi});
            }
            if (!T.empty()) {
                pts.push_back({i + T.hi, (double)j + 1});
                pts.push_back({i + T.lo, (double)j + 1});
            }
            if (!L.empty()) {
                pts.push_back({(double)i, j + L.hi});
                pts.push_back({(double)i, j + L.lo});
            }
            if (pts.size() < 3) continue;
            svg << "<polygon fill=\"#ffffff\" stroke=\"none\" points=\"";
            for (auto& p : pts) svg << num(X(p[0])) << "," << num(Y(p[1])) << " ";
            svg << "\"/>\n";
        }
    }
    for (int i = 0; i <= W; ++i)
        svg << "<line x1=\"" << num(X(i)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(i))
            << "\" y2=\"" << num(Y(H)) << "\" stroke=\"#808080\" stroke-width=\"0.5\"/>\n";
    for (int j = 0; j <= H; ++j)
        svg << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(j)) << "\" x2=\"" << num(X(W))
            << "\" y2=\"" << num(Y(j)) << "\" stroke=\"#808080\" stroke-width=\"0.5\"/>\n";
    for (int c : markedColumns)
        svg << "<line x1=\"" << num(X(c)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(c))
            << "\" y2=\"" << num(Y(H)) << "\" stroke=\"#2060c0\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"4 3\"/>\n";
    if (witness && witness->size() > 1) {
        svg << "<polyline fill=\"none\" stroke=\"#c03030\" stroke-width=\"2\" points=\"";
        for (auto& p : *witness) svg << num(X(p[0])) << "," << num(Y(p[1])) << " ";
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_curves_svg(const PolyCurve& f, const PolyCurve& g, double eps, Metric m) {
    FreeSpaceGrid grid;
    std::vector<Segment> fe, ge;
    for (int i = 0; i < f.edge_count(); ++i) fe.push_back(f.edge(i));
    for (int j = 0; j < g.edge_count(); ++j) ge.push_back(g.edge(j));
    std::optional<std::vector<std::array<double, 2>>> wit;
    if (f.closed && g.closed) {
        auto match = frechet_decide_closed(f, g, eps, m);
        std::vector<Segment> doubled = ge;
        doubled.insert(doubled.end(), ge.begin(), ge.end());
        PolyCurve fc;
        fc.closed = false;
        fc.vertices.push_back(f.edge(0).at(0.5));
        for (size_t i = 1; i < f.vertices.size(); ++i) fc.vertices.push_back(f.vertices[i]);
        fc.vertices.push_back(f.vertices[0]);
        fc.vertices.push_back(f.edge(0).at(0.5));
        std::vector<Segment> fce;
        for (int i = 0; i < fc.edge_count(); ++i) fce.push_back(fc.edge(i));
        grid.build(fce, doubled, eps, m);
        if (match) wit = match->pts;
    } else {
        grid.build(fe, ge, eps, m);
        auto match = frechet_match_open(f, g, eps, m);
        if (match) wit = match->pts;
    }
    return render_free_space_svg(grid, wit, {});
}

std::string render_surfaces_svg(const FoldedPolygon& P, const FoldedPolygon& Q, double eps,
                                Metric m) {
    auto map = diagonal_monotonicity_test(P, Q, eps, m);
    // Rebuild the diagram for rendering.
    PolyCurve fc;
    fc.closed = false;
    fc.vertices.push_back(P.boundary_edge(0).at(0.5));
    for (int i = 1; i < P.boundary_size(); ++i) fc.vertices.push_back(P.vertices[P.boundary[i]]);
    fc.vertices.push_back(P.vertices[P.boundary[0]]);
    fc.vertices.push_back(P.boundary_edge(0).at(0.5));
    std::vector<Segment> fce;
    for (int i = 0; i < fc.edge_count(); ++i) fce.push_back(fc.edge(i));
    std::vector<Segment> rows;
    for (int j = 0; j < Q.boundary_size(); ++j) rows.push_back(Q.boundary_edge(j));
    rows.insert(rows.end(), rows.begin(), rows.begin() + Q.boundary_size());
    FreeSpaceGrid grid;
    grid.build(fce, rows, eps, m);
    std::vector<int> marks;
    for (const DiagonalInfo& d : diagonals_of(P)) {
        marks.push_back(boundary_pos_to_cut_column(P, d.posStart));
        marks.push_back(boundary_pos_to_cut_column(P, d.posEnd));
    }
    std::optional<std::vector<std::array<double, 2>>> wit;
    if (map) wit = map->matching.pts;
    std::string base = render_free_space_svg(grid, wit, marks);

    // Append crossing-order strips (one per interior edge of Q) when a
    // witness mapping exists.
    if (!map) return base;
    std::ostringstream extra;
    double y0 = 14.0;
    extra << "<g transform=\"translate(0,6)\">";
    std::vector<Placement> placements;
    std::vector<std::vector<int>> seqs;
    for (const DiagonalWitness& w : map->witnesses) {
        placements.push_back(w.placement);
        seqs.push_back(w.path.edgeSeq);
    }
    for (size_t e = 0; e < Q.interiorEdges.size(); ++e) {
        std::vector<int> order = proper_intersection_order(Q, placements, seqs, (int)e);
        extra << "<text x=\"6\" y=\"" << num(y0 + 4)
              << "\" font-size=\"9\" fill=\"#e0e0e0\">edge " << e << "</text>";
        extra << "<line x1=\"60\" y1=\"" << num(y0) << "\" x2=\"220\" y2=\"" << num(y0)
              << "\" stroke=\"#b0b0b0\"/>";
        for (size_t i = 0; i < order.size(); ++i) {
            int diag = order[i];
            double s = 0.5;
            for (int ci = 0; ci < (int)seqs[diag].size(); ++ci)
                if (seqs[diag][ci] == (int)e) s = map->witnesses[diag].path.sOnEdge[ci];
            double x = 60 + 160 * s;
            extra << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y0)
                  << "\" r=\"3.2\" fill=\"#c03030\"/>";
            extra << "<text x=\"" << num(x + 4) << "\" y=\"" << num(y0 - 3)
                  << "\" font-size=\"8\" fill=\"#ffd0d0\">d" << diag << "</text>";
        }
        y0 += 16.0;
    }
    extra << "</g>";
    std::string closing = "</svg>\n";
    base.replace(base.rfind(closing), closing.size(), extra.str() + closing);
    return base;
}

} // namespace folded
