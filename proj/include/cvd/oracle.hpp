#ifndef CVD_ORACLE_HPP
#define CVD_ORACLE_HPP

#include <set>
#include <vector>

#include "cvd/site_set.hpp"
#include "cvd/subdivision.hpp"

namespace cvd {

// Exact per-color distances from a query point: squared Euclidean or plain
// Chebyshev values, with witness sites.
struct ColorDistanceProfile {
    struct Entry {
        Rational nearest;   // d_i
        Rational farthest;  // dbar_i
        int argmin_site = -1;
        int argmax_site = -1;
    };
    std::vector<Entry> per_color;
};

ColorDistanceProfile profile(const Point2& x, const ColoredSiteSet& sites);

struct KSetResult {
    bool on_boundary = false;  // k-th and (k+1)-th color distances tie
    std::set<int> colors;      // the k nearest (Min) or farthest (Max) colors
    int kth_color = -1;
    int witness_site = -1;
};

KSetResult k_set(const Point2& x, const ColoredSiteSet& sites, int k, Side side);

struct ValidationMismatch {
    int face = -1;
    Point2 at;
    std::string reason;
};

struct ValidationReport {
    int faces_checked = 0;
    int samples_checked = 0;
    std::vector<ValidationMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Audits a built diagram against the brute-force oracle: every interior
// sample of every face must report the face's color set, and in refined
// diagrams the associated site must realize the k-th color distance.
ValidationReport validate_diagram(const Subdivision& diagram, const ColoredSiteSet& sites, int k,
                                  Side side, int samples_per_face, bool refined);

}  // namespace cvd

#endif
