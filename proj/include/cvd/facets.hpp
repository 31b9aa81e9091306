#ifndef CVD_FACETS_HPP
#define CVD_FACETS_HPP

#include <utility>
#include <vector>

#include "cvd/site_set.hpp"

namespace cvd {

// Counts of c-chromatic j-facets: e[c][j] for c in 1..dimension, j in 0..m-1.
struct FacetTable {
    int dimension = 2;
    int n = 0;
    int m = 0;
    std::vector<std::vector<long long>> counts;  // counts[c-1][j]

    FacetTable() = default;
    FacetTable(int dim, int n_sites, int colors)
        : dimension(dim), n(n_sites), m(colors),
          counts(dim, std::vector<long long>(colors, 0)) {}

    long long at(int c, int j) const {
        if (c < 1 || c > dimension || j < 0 || j >= m) return 0;
        return counts[c - 1][j];
    }
    long long& cell(int c, int j) { return counts[c - 1][j]; }
    long long total() const {
        long long t = 0;
        for (const auto& row : counts)
            for (long long v : row) t += v;
        return t;
    }
};

// Oriented colored segment facets: for each pair orientation whose open left
// half-plane avoids both defining colors, tallies (chromaticity, weight).
FacetTable facets_2d(const ColoredSiteSet& sites);

// Triangle facets on colored 3D points, both orientations per triple.
FacetTable facets_3d(const std::vector<std::pair<Point3, int>>& points, int m);

// Under the Euclidean metric the new unbounded-edge counts of the refined
// diagrams coincide with the 2D facet counts on both sides, so this returns
// the same table twice. Throws MetricMismatch for other metrics.
std::pair<FacetTable, FacetTable> euclid_unbounded_tables(const ColoredSiteSet& sites);

// U_j = sum_{i<=j} (u[2][i] + (j-i+1) u[1][i]).
long long aggregate_U(const FacetTable& table, int j);

}  // namespace cvd

#endif
