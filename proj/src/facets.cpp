#include "cvd/facets.hpp"

namespace cvd {

namespace {

// Tracks, for one oriented configuration, whether a defining color was hit
// and which other colors were. Stamped scratch avoids re-zeroing per pair.
struct ConflictScan {
    std::vector<int> stamp;
    int current = 0;
    bool dead = false;
    int weight = 0;

    explicit ConflictScan(int m) : stamp(m, 0) {}

    void reset() {
        ++current;
        dead = false;
        weight = 0;
    }
    void hit(int color, bool defining) {
        if (dead) return;
        if (defining) {
            dead = true;
            return;
        }
        if (stamp[color] != current) {
            stamp[color] = current;
            ++weight;
        }
    }
};

}  // namespace

FacetTable facets_2d(const ColoredSiteSet& sites) {
    const int n = sites.n();
    FacetTable table(2, n, sites.m);
    ConflictScan left(sites.m), right(sites.m);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const int ca = sites.sites[a].color;
            const int cb = sites.sites[b].color;
            const int chroma = (ca == cb) ? 1 : 2;
            left.reset();
            right.reset();
            for (int w = 0; w < n && !(left.dead && right.dead); ++w) {
                if (w == a || w == b) continue;
                int cw = sites.sites[w].color;
                int side = orient2d(sites.sites[a].position, sites.sites[b].position,
                                    sites.sites[w].position);
                if (side > 0) left.hit(cw, cw == ca || cw == cb);
                else if (side < 0) right.hit(cw, cw == ca || cw == cb);
                // side == 0 cannot occur in general position; a collinear
                // third point is on neither open half-plane regardless.
            }
            if (!left.dead) ++table.cell(chroma, left.weight);
            if (!right.dead) ++table.cell(chroma, right.weight);
        }
    }
    return table;
}

FacetTable facets_3d(const std::vector<std::pair<Point3, int>>& points, int m) {
    const int n = static_cast<int>(points.size());
    FacetTable table(3, n, m);
    ConflictScan above(m), below(m);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const int ca = points[a].second;
                const int cb = points[b].second;
                const int cc = points[c].second;
                int chroma = 1 + (cb != ca) + (cc != ca && cc != cb);
                above.reset();
                below.reset();
                for (int w = 0; w < n && !(above.dead && below.dead); ++w) {
                    if (w == a || w == b || w == c) continue;
                    int side = orient3d(points[a].first, points[b].first, points[c].first,
                                        points[w].first);
                    int cw = points[w].second;
                    bool defining = (cw == ca || cw == cb || cw == cc);
                    if (side > 0) above.hit(cw, defining);
                    else if (side < 0) below.hit(cw, defining);
                }
                if (!above.dead) ++table.cell(chroma, above.weight);
                if (!below.dead) ++table.cell(chroma, below.weight);
            }
        }
    }
    return table;
}

std::pair<FacetTable, FacetTable> euclid_unbounded_tables(const ColoredSiteSet& sites) {
    if (sites.metric != Metric::Euclidean)
        throw MetricMismatch("unbounded-edge tables via facets require the Euclidean metric");
    FacetTable t = facets_2d(sites);
    return {t, t};
}

long long aggregate_U(const FacetTable& table, int j) {
    long long u = 0;
    for (int i = 0; i <= j && i < table.m; ++i)
        u += table.at(2, i) + static_cast<long long>(j - i + 1) * table.at(1, i);
    return u;
}

}  // namespace cvd
