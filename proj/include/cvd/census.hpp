#ifndef CVD_CENSUS_HPP
#define CVD_CENSUS_HPP

#include <array>
#include <variant>
#include <vector>

#include "cvd/balls.hpp"
#include "cvd/site_set.hpp"

namespace cvd {

using MetricBall = std::variant<Circle, SquareBall>;

struct CensusEntry {
    std::array<int, 3> triple;
    MetricBall ball;
    Side side = Side::Min;
    int chromaticity = 0;  // 1..3
    int weight = 0;        // colors in conflict
};

struct CensusTable {
    Metric metric = Metric::Euclidean;
    int n = 0;
    int m = 0;
    // v[c-1][j] counts c-chromatic weight-j vertices; vbar is the Max side.
    std::vector<std::vector<long long>> v, vbar;
    std::vector<CensusEntry> entries;

    long long min_at(int c, int j) const {
        return (c < 1 || c > 3 || j < 0 || j >= m) ? 0 : v[c - 1][j];
    }
    long long max_at(int c, int j) const {
        return (c < 1 || c > 3 || j < 0 || j >= m) ? 0 : vbar[c - 1][j];
    }
    long long at(int c, int j, Side side) const {
        return side == Side::Min ? min_at(c, j) : max_at(c, j);
    }
};

struct CensusOptions {
    bool keep_entries = true;
    bool check_general_position = true;
    // Re-classify every entry against its ball after the scan.
    bool self_audit = false;
};

// Enumerates all metric balls through site triples and tallies the
// conflict-free sides by (chromaticity, weight). Under L-infinity a triple
// may contribute several squares, each its own entry.
// Throws GeneralPositionViolation when the input fails the position check.
CensusTable census(const ColoredSiteSet& sites, const CensusOptions& options = {});

// Vertex count of CVD_k (Min) or of the maximal diagram (Max):
// v[3][k-1] + v[3][k-2] + v[2][k-1], negative indices contributing zero.
long long diagram_vertex_count(const CensusTable& table, int k, Side side);

// Vertex count of the refined diagram: the six-term sum over chromaticities.
long long refined_vertex_count(const CensusTable& table, int k, Side side);

// Ball center of an entry.
Point2 entry_center(const CensusEntry& entry);

// Exact vertex locations of the order-k coarse diagram on one side.
std::vector<Point2> census_vertex_points(const CensusTable& table, int k, Side side);

// Exact vertex locations of the order-k refined diagram on one side.
std::vector<Point2> census_refined_vertex_points(const CensusTable& table, int k, Side side);

// Locations of vertices that are new in refined order k, per chromaticity c.
std::vector<Point2> census_new_vertex_points(const CensusTable& table, int k, Side side, int c);

}  // namespace cvd

#endif
