#include "cvd/voronoi_cells.hpp"

namespace cvd {

namespace {

// Clip a tagged convex polygon against a*x + b*y <= c, tagging cut edges.
void clip_halfplane(CellPolygon& poly, const Rational& a, const Rational& b, const Rational& c,
                    int cut_tag) {
    if (poly.degenerate()) return;
    const std::size_t n = poly.pts.size();
    std::vector<Rational> value(n);
    bool any_out = false;
    for (std::size_t i = 0; i < n; ++i) {
        value[i] = a * poly.pts[i].x + b * poly.pts[i].y - c;
        if (sgn(value[i]) > 0) any_out = true;
    }
    if (!any_out) return;

    CellPolygon out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        bool cur_in = sgn(value[i]) <= 0;
        bool nxt_in = sgn(value[j]) <= 0;
        if (cur_in) {
            out.pts.push_back(poly.pts[i]);
            out.edge_site.push_back(poly.edge_site[i]);
        }
        if (cur_in != nxt_in) {
            Rational t = value[i] / (value[i] - value[j]);
            Point2 hit{poly.pts[i].x + t * (poly.pts[j].x - poly.pts[i].x),
                       poly.pts[i].y + t * (poly.pts[j].y - poly.pts[i].y)};
            out.pts.push_back(hit);
            out.edge_site.push_back(cur_in ? cut_tag : poly.edge_site[i]);
        }
    }
    // Drop zero-length edges introduced by vertices lying on the cut line.
    CellPolygon clean;
    const std::size_t k = out.pts.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = (i + 1) % k;
        if (out.pts[i] == out.pts[j]) continue;
        clean.pts.push_back(out.pts[i]);
        clean.edge_site.push_back(out.edge_site[i]);
    }
    if (clean.pts.size() < 3) clean = CellPolygon{};
    poly = std::move(clean);
}

}  // namespace

CellPolygon voronoi_cell(const std::vector<Site>& sites, int owner, const Box& box, Side side) {
    CellPolygon poly;
    poly.pts = {Point2{box.xmin, box.ymin}, Point2{box.xmax, box.ymin},
                Point2{box.xmax, box.ymax}, Point2{box.xmin, box.ymax}};
    poly.edge_site = {-1, -1, -1, -1};

    const Point2& o = sites[owner].position;
    Rational o_norm = o.x * o.x + o.y * o.y;
    for (std::size_t u = 0; u < sites.size(); ++u) {
        if (static_cast<int>(u) == owner) continue;
        const Point2& q = sites[u].position;
        // ||x - o||^2 <= ||x - q||^2  <=>  2(q - o).x <= |q|^2 - |o|^2
        Rational a = 2 * (q.x - o.x);
        Rational b = 2 * (q.y - o.y);
        Rational c = q.x * q.x + q.y * q.y - o_norm;
        if (side == Side::Max) {
            a = -a;
            b = -b;
            c = -c;
        }
        clip_halfplane(poly, a, b, c, sites[u].id);
        if (poly.degenerate()) break;
    }
    return poly;
}

}  // namespace cvd
