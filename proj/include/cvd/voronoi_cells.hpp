#ifndef CVD_VORONOI_CELLS_HPP
#define CVD_VORONOI_CELLS_HPP

#include <vector>

#include "cvd/site_set.hpp"
#include "cvd/subdivision.hpp"

namespace cvd {

// Convex polygon with per-edge provenance: edge i runs pts[i] -> pts[i+1]
// and carries the id of the site whose bisector cut it (-1 for box edges).
struct CellPolygon {
    std::vector<Point2> pts;   // counterclockwise
    std::vector<int> edge_site;

    bool degenerate() const { return pts.size() < 3; }
};

// Euclidean nearest (Min) or farthest (Max) cell of sites[owner] among the
// given sites, clipped to the box. Exact half-plane intersection.
CellPolygon voronoi_cell(const std::vector<Site>& sites, int owner, const Box& box, Side side);

}  // namespace cvd

#endif
