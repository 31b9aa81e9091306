#ifndef CVD_SITE_SET_HPP
#define CVD_SITE_SET_HPP

#include <string>
#include <vector>

#include "cvd/errors.hpp"
#include "cvd/geometry.hpp"

namespace cvd {

enum class Metric { Euclidean, Linf };

enum class Side { Min, Max };

struct Site {
    int id = -1;
    Point2 position;
    int color = -1;
};

struct ColoredSiteSet {
    std::vector<Site> sites;
    int m = 0;  // number of colors, 0..m-1 all present
    Metric metric = Metric::Euclidean;

    int n() const { return static_cast<int>(sites.size()); }

    // Enforces the structural invariants: ids are 0..n-1, colors cover
    // 0..m-1, all positions distinct. Throws GeometryError on violation.
    void validate() const;
};

struct GeneralPositionIssue {
    std::string kind;  // "collinear", "cocircular", "shared_coordinate", "degenerate_square"
    std::vector<int> site_ids;
};

struct GeneralPositionReport {
    bool ok = true;
    std::vector<GeneralPositionIssue> violations;
};

// Euclidean: flags collinear triples and cocircular quadruples.
// Linf: additionally flags shared x/y coordinates and triples that admit a
// one-parameter square family. Violations are report content, not errors.
GeneralPositionReport check_general_position(const ColoredSiteSet& sites);

}  // namespace cvd

#endif
