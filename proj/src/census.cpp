#include "cvd/census.hpp"

#include <algorithm>

namespace cvd {

namespace {

struct SideScan {
    std::vector<int> stamp;
    int current = 0;
    bool dead = false;
    int weight = 0;

    explicit SideScan(int m) : stamp(m, 0) {}
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

CensusTable census(const ColoredSiteSet& sites, const CensusOptions& options) {
    if (options.check_general_position) {
        GeneralPositionReport gp = check_general_position(sites);
        if (!gp.ok) {
            std::string what = "census requires general position; first violation: " +
                               gp.violations.front().kind;
            throw GeneralPositionViolation(what);
        }
    }
    const int n = sites.n();
    CensusTable table;
    table.metric = sites.metric;
    table.n = n;
    table.m = sites.m;
    table.v.assign(3, std::vector<long long>(sites.m, 0));
    table.vbar.assign(3, std::vector<long long>(sites.m, 0));

    SideScan inner(sites.m), outer(sites.m);
    std::vector<MetricBall> balls;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const Point2& pa = sites.sites[a].position;
                const Point2& pb = sites.sites[b].position;
                const Point2& pc = sites.sites[c].position;
                balls.clear();
                if (sites.metric == Metric::Euclidean) {
                    balls.push_back(circumcircle(pa, pb, pc));
                } else {
                    for (SquareBall& sq : squares_through_three(pa, pb, pc))
                        balls.push_back(std::move(sq));
                }
                const int ca = sites.sites[a].color;
                const int cb = sites.sites[b].color;
                const int cc = sites.sites[c].color;
                const int chroma = 1 + (cb != ca) + (cc != ca && cc != cb);
                for (const MetricBall& ball : balls) {
                    inner.reset();
                    outer.reset();
                    for (int w = 0; w < n && !(inner.dead && outer.dead); ++w) {
                        if (w == a || w == b || w == c) continue;
                        PointClass side = std::visit(
                            [&](const auto& geom) {
                                return classify_point(geom, sites.sites[w].position);
                            },
                            ball);
                        if (side == PointClass::OnBoundary) continue;
                        int cw = sites.sites[w].color;
                        bool defining = (cw == ca || cw == cb || cw == cc);
                        if (side == PointClass::Inside) inner.hit(cw, defining);
                        else outer.hit(cw, defining);
                    }
                    if (!inner.dead) {
                        ++table.v[chroma - 1][inner.weight];
                        if (options.keep_entries)
                            table.entries.push_back(
                                {{a, b, c}, ball, Side::Min, chroma, inner.weight});
                    }
                    if (!outer.dead) {
                        ++table.vbar[chroma - 1][outer.weight];
                        if (options.keep_entries)
                            table.entries.push_back(
                                {{a, b, c}, ball, Side::Max, chroma, outer.weight});
                    }
                }
            }
        }
    }

    // No room for that many conflicting colors at the top weights.
    if (table.min_at(3, sites.m - 1) != 0 || table.min_at(3, sites.m - 2) != 0 ||
        table.min_at(2, sites.m - 1) != 0 || table.max_at(3, sites.m - 1) != 0 ||
        table.max_at(3, sites.m - 2) != 0 || table.max_at(2, sites.m - 1) != 0)
        throw GeometryMismatch("census weight exceeds the color budget");

    if (options.self_audit) {
        for (const CensusEntry& e : table.entries) {
            int recount = 0;
            std::vector<int> seen(sites.m, 0);
            for (int w = 0; w < n; ++w) {
                PointClass side = std::visit(
                    [&](const auto& geom) { return classify_point(geom, sites.sites[w].position); },
                    e.ball);
                bool is_defining_site =
                    (w == e.triple[0] || w == e.triple[1] || w == e.triple[2]);
                if (is_defining_site) {
                    if (side != PointClass::OnBoundary)
                        throw GeometryMismatch("census entry lost a defining point");
                    continue;
                }
                bool in_conflict = (e.side == Side::Min) ? side == PointClass::Inside
                                                         : side == PointClass::Outside;
                if (!in_conflict) continue;
                int cw = sites.sites[w].color;
                if (cw == sites.sites[e.triple[0]].color || cw == sites.sites[e.triple[1]].color ||
                    cw == sites.sites[e.triple[2]].color)
                    throw GeometryMismatch("census entry has a defining-color conflict");
                if (!seen[cw]) {
                    seen[cw] = 1;
                    ++recount;
                }
            }
            if (recount != e.weight) throw GeometryMismatch("census entry weight mismatch");
        }
    }
    return table;
}

long long diagram_vertex_count(const CensusTable& table, int k, Side side) {
    return table.at(3, k - 1, side) + table.at(3, k - 2, side) + table.at(2, k - 1, side);
}

long long refined_vertex_count(const CensusTable& table, int k, Side side) {
    return table.at(3, k - 1, side) + table.at(3, k - 2, side) + table.at(3, k - 3, side) +
           table.at(2, k - 1, side) + table.at(2, k - 2, side) + table.at(1, k - 1, side);
}

Point2 entry_center(const CensusEntry& entry) {
    return std::visit([](const auto& geom) { return geom.center; }, entry.ball);
}

std::vector<Point2> census_vertex_points(const CensusTable& table, int k, Side side) {
    std::vector<Point2> pts;
    for (const CensusEntry& e : table.entries) {
        if (e.side != side) continue;
        bool counts = (e.chromaticity == 3 && (e.weight == k - 1 || e.weight == k - 2)) ||
                      (e.chromaticity == 2 && e.weight == k - 1);
        if (counts) pts.push_back(entry_center(e));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<Point2> census_refined_vertex_points(const CensusTable& table, int k, Side side) {
    std::vector<Point2> pts;
    for (const CensusEntry& e : table.entries) {
        if (e.side != side) continue;
        int age = k - 1 - e.weight;  // 0 = new in order k
        bool counts = age >= 0 && age < e.chromaticity;
        if (counts) pts.push_back(entry_center(e));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<Point2> census_new_vertex_points(const CensusTable& table, int k, Side side, int c) {
    std::vector<Point2> pts;
    for (const CensusEntry& e : table.entries)
        if (e.side == side && e.chromaticity == c && e.weight == k - 1)
            pts.push_back(entry_center(e));
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace cvd
