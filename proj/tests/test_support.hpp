#ifndef CVD_TEST_SUPPORT_HPP
#define CVD_TEST_SUPPORT_HPP

#include <algorithm>
#include <vector>

#include "cvd/balls.hpp"
#include "cvd/site_set.hpp"

namespace cvd_test {

inline cvd::Point2 pt(long x, long y) {
    return cvd::Point2{cvd::Rational(x), cvd::Rational(y)};
}

inline cvd::ColoredSiteSet make_sites(const std::vector<std::tuple<long, long, int>>& raw,
                                      cvd::Metric metric = cvd::Metric::Euclidean) {
    cvd::ColoredSiteSet s;
    s.metric = metric;
    int max_color = 0;
    for (const auto& [x, y, c] : raw) {
        cvd::Site site;
        site.id = s.n();
        site.position = pt(x, y);
        site.color = c;
        max_color = std::max(max_color, c);
        s.sites.push_back(std::move(site));
    }
    s.m = max_color + 1;
    s.validate();
    return s;
}

// Right triangle with three distinct colors; circumcenter (2, 3/2).
inline cvd::ColoredSiteSet t3() { return make_sites({{0, 0, 0}, {4, 0, 1}, {0, 3, 2}}); }

// Four sites, four colors.
inline cvd::ColoredSiteSet p4() {
    return make_sites({{0, 0, 0}, {10, 0, 1}, {11, 9, 2}, {1, 10, 3}});
}

// Five sites, three colors; nonzero correction terms.
inline cvd::ColoredSiteSet m5() {
    return make_sites({{0, 0, 0}, {7, 1, 0}, {3, 6, 1}, {9, 8, 2}, {2, -5, 2}});
}

// Independent oracle for axis-aligned squares through three points: every
// such square has a corner on the coordinate grid of the triple, and its
// side length is pinned by one of the points on an opposite side. Try all
// grid corners, corner roles and pinned side lengths, then verify.
inline std::vector<cvd::SquareBall> corner_grid_squares(const cvd::Point2& p,
                                                        const cvd::Point2& q,
                                                        const cvd::Point2& r) {
    using cvd::Point2;
    using cvd::Rational;
    using cvd::SquareBall;
    const Point2 pts[3] = {p, q, r};
    std::vector<SquareBall> found;
    auto consider = [&](const Rational& cx, const Rational& cy, const Rational& rad) {
        if (sgn(rad) <= 0) return;
        SquareBall b{Point2{cx, cy}, rad};
        for (const Point2& w : pts)
            if (cvd::classify_point(b, w) != cvd::PointClass::OnBoundary) return;
        for (const SquareBall& other : found)
            if (other.center == b.center && other.radius == b.radius) return;
        found.push_back(b);
    };
    for (const Point2& gx : pts) {
        for (const Point2& gy : pts) {
            const Rational& x = gx.x;
            const Rational& y = gy.y;
            for (const Point2& w : pts) {
                // Candidate side lengths from every point against every
                // corner role of (x, y).
                std::vector<Rational> sides = {w.x - x, x - w.x, w.y - y, y - w.y};
                for (const Rational& s : sides) {
                    if (sgn(s) <= 0) continue;
                    Rational half = s / 2;
                    // (x, y) as TL, TR, BL, BR corner respectively.
                    consider(x + half, y - half, half);
                    consider(x - half, y - half, half);
                    consider(x + half, y + half, half);
                    consider(x - half, y + half, half);
                }
            }
        }
    }
    return found;
}

inline bool same_square_set(std::vector<cvd::SquareBall> a, std::vector<cvd::SquareBall> b) {
    auto key_less = [](const cvd::SquareBall& s, const cvd::SquareBall& t) {
        if (s.center != t.center) return s.center < t.center;
        return s.radius < t.radius;
    };
    std::sort(a.begin(), a.end(), key_less);
    std::sort(b.begin(), b.end(), key_less);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].center != b[i].center || a[i].radius != b[i].radius) return false;
    return true;
}

}  // namespace cvd_test

#endif
