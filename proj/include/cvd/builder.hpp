#ifndef CVD_BUILDER_HPP
#define CVD_BUILDER_HPP

#include <set>

#include "cvd/census.hpp"
#include "cvd/subdivision.hpp"

namespace cvd {

// Rectangle guaranteed to strictly contain every finite diagram vertex of
// every order on both sides: it covers all sites and all triple ball
// centers with a margin exceeding the largest ball radius. Centers and
// radii are over-approximated; only containment matters.
Box choose_clip_box(const ColoredSiteSet& sites);

// Exact clipped nearest-site (Min) / farthest-site (Max) Euclidean Voronoi
// diagram of a subset of sites. Faces carry {color}, associated site; edges
// carry defining pairs and chromaticity; everything is marked new.
Subdivision nearest_voronoi_clipped(const std::vector<Site>& subset, const Box& box);
Subdivision farthest_voronoi_clipped(const std::vector<Site>& subset, const Box& box);

// Deletes every edge whose two sides carry the same color set and merges
// the faces. In a refined order-k diagram this removes exactly the
// 1-chromatic and the old 2-chromatic edges, leaving the coarse diagram.
// Throws InconsistentLabels if a 1-chromatic edge separates distinct sets.
Subdivision coarsen(const Subdivision& refined);

// Outer defining sites of the boundary edges of a coarse face.
// Throws ColorLeak if any boundary pair has both or neither color in H.
std::set<int> boundary_sites(const Subdivision& coarse, int face, const ColoredSiteSet& sites);

struct OrderStats {
    int order = 0;
    long long refined_vertices = 0;  // interior (non-box) vertices
    long long coarse_vertices = 0;
    long long refined_edges = 0;  // diagram edges only
    long long coarse_edges = 0;
    long long refined_faces = 0;
    long long coarse_faces = 0;
    long long new_vertices_by_chromaticity[4] = {0, 0, 0, 0};  // index 1..3
    long long unbounded_edges = 0;  // box crossings of the refined diagram
};

struct DiagramSequence {
    Side side = Side::Min;
    // index i holds order i+1
    std::vector<Subdivision> refined;
    std::vector<Subdivision> coarse;
    std::vector<OrderStats> stats;
};

// Refined + coarse minimal diagrams of order i+1 from coarse order i.
Subdivision advance_minimal(const Subdivision& coarse_i, int order_i,
                            const ColoredSiteSet& sites);

// Maximal counterpart; needs the min-side refined diagram of order i+1 to
// recover the sites owning unbounded faces inside unbounded max faces.
Subdivision advance_maximal(const Subdivision& max_coarse_i, int order_i,
                            const Subdivision& min_coarse_i,
                            const Subdivision& min_refined_next,
                            const ColoredSiteSet& sites);

struct BuildOptions {
    bool check_invariants = true;
};

struct BuildResult {
    DiagramSequence min_side;
    DiagramSequence max_side;
    Box box;
};

// Full sequences of orders 1..k for both sides (Euclidean only).
BuildResult build_sequences(const ColoredSiteSet& sites, int k, const BuildOptions& opts = {});

// Interior vertices of the subdivision, sorted; for census cross-checks.
std::vector<Point2> interior_vertex_points(const Subdivision& sub);

}  // namespace cvd

#endif
