#include "cvd/site_set.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "cvd/balls.hpp"

namespace cvd {

void ColoredSiteSet::validate() const {
    if (m < 1) throw GeometryError("color count must be >= 1");
    if (n() < m) throw GeometryError("need at least one site per color");
    std::vector<int> color_seen(m, 0);
    for (int i = 0; i < n(); ++i) {
        if (sites[i].id != i) throw GeometryError("site ids must be 0..n-1 in order");
        if (sites[i].color < 0 || sites[i].color >= m)
            throw GeometryError("site color out of range");
        color_seen[sites[i].color] = 1;
    }
    for (int c = 0; c < m; ++c)
        if (!color_seen[c]) throw GeometryError("color " + std::to_string(c) + " has no site");
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (sites[i].position == sites[j].position)
                throw GeometryError("duplicate site positions");
}

namespace {

// Integer mirror of the coordinates when every coordinate is an integer
// small enough for overflow-free __int128 predicates. The lifted in-sphere
// determinant needs |coord|^4 headroom.
std::optional<std::vector<std::pair<long long, long long>>> integer_mirror(
    const ColoredSiteSet& s) {
    constexpr long long kLimit = 20'000'000;  // 48 * limit^4 < 2^127
    std::vector<std::pair<long long, long long>> out;
    out.reserve(s.sites.size());
    for (const Site& site : s.sites) {
        const Rational& x = site.position.x;
        const Rational& y = site.position.y;
        if (x.get_den() != 1 || y.get_den() != 1) return std::nullopt;
        if (!x.get_num().fits_slong_p() || !y.get_num().fits_slong_p()) return std::nullopt;
        long long xi = x.get_num().get_si();
        long long yi = y.get_num().get_si();
        if (std::abs(xi) > kLimit || std::abs(yi) > kLimit) return std::nullopt;
        out.emplace_back(xi, yi);
    }
    return out;
}

inline __int128 orient2d_int(long long ax, long long ay, long long bx, long long by,
                             long long cx, long long cy) {
    return static_cast<__int128>(bx - ax) * (cy - ay) -
           static_cast<__int128>(by - ay) * (cx - ax);
}

// Sign of the in-circle determinant for integer points via the lifted
// orientation test. Exact as long as entries stay within __int128.
inline int incircle_int(long long ax, long long ay, long long bx, long long by,
                        long long cx, long long cy, long long dx, long long dy) {
    __int128 bxd = bx - ax, byd = by - ay;
    __int128 cxd = cx - ax, cyd = cy - ay;
    __int128 dxd = dx - ax, dyd = dy - ay;
    __int128 bz = bxd * bxd + byd * byd;
    __int128 cz = cxd * cxd + cyd * cyd;
    __int128 dz = dxd * dxd + dyd * dyd;
    __int128 det = bxd * (cyd * dz - cz * dyd) - byd * (cxd * dz - cz * dxd) +
                   bz * (cxd * dyd - cyd * dxd);
    if (det > 0) return 1;
    if (det < 0) return -1;
    return 0;
}

}  // namespace

GeneralPositionReport check_general_position(const ColoredSiteSet& s) {
    GeneralPositionReport report;
    const int n = s.n();
    auto flag = [&](std::string kind, std::vector<int> ids) {
        report.ok = false;
        report.violations.push_back({std::move(kind), std::move(ids)});
    };

    if (s.metric == Metric::Linf) {
        std::map<Rational, int> by_x, by_y;
        for (int i = 0; i < n; ++i) {
            auto [itx, newx] = by_x.emplace(s.sites[i].position.x, i);
            if (!newx) flag("shared_coordinate", {itx->second, i});
            auto [ity, newy] = by_y.emplace(s.sites[i].position.y, i);
            if (!newy) flag("shared_coordinate", {ity->second, i});
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    try {
                        for (const SquareBall& sq :
                             squares_through_three(s.sites[a].position, s.sites[b].position,
                                                   s.sites[c].position)) {
                            // A fourth site on the square is the Chebyshev
                            // analog of four cocircular points.
                            for (int d = 0; d < n; ++d) {
                                if (d == a || d == b || d == c) continue;
                                if (classify_point(sq, s.sites[d].position) ==
                                    PointClass::OnBoundary)
                                    flag("square_boundary_contact", {a, b, c, d});
                            }
                        }
                    } catch (const DegenerateConfiguration&) {
                        flag("degenerate_square", {a, b, c});
                    }
                }
    }

    auto ints = integer_mirror(s);
    if (ints) {
        const auto& p = *ints;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    if (orient2d_int(p[a].first, p[a].second, p[b].first, p[b].second,
                                     p[c].first, p[c].second) == 0) {
                        flag("collinear", {a, b, c});
                        continue;
                    }
                    for (int d = c + 1; d < n; ++d)
                        if (incircle_int(p[a].first, p[a].second, p[b].first, p[b].second,
                                         p[c].first, p[c].second, p[d].first,
                                         p[d].second) == 0)
                            flag("cocircular", {a, b, c, d});
                }
        return report;
    }

    std::vector<Point3> lifted;
    lifted.reserve(n);
    for (const Site& site : s.sites) lifted.push_back(lift(site.position));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                if (orient2d(s.sites[a].position, s.sites[b].position, s.sites[c].position) == 0) {
                    flag("collinear", {a, b, c});
                    continue;
                }
                for (int d = c + 1; d < n; ++d)
                    if (orient3d(lifted[a], lifted[b], lifted[c], lifted[d]) == 0)
                        flag("cocircular", {a, b, c, d});
            }
    return report;
}

}  // namespace cvd
