// Acceptance suite: one line per criterion, exact checks throughout.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cvd/builder.hpp"
#include "cvd/generator.hpp"
#include "cvd/identities.hpp"
#include "cvd/oracle.hpp"
#include "test_support.hpp"

using namespace cvd;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const char* name, bool pass, double seconds) {
    std::printf("criterion %2d %-34s %s  (%.2fs)\n", criterion, name, pass ? "PASS" : "FAIL",
                seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::vector<std::pair<Point3, int>> lift_all(const ColoredSiteSet& sites) {
    std::vector<std::pair<Point3, int>> out;
    for (const Site& s : sites.sites) out.emplace_back(lift(s.position), s.color);
    return out;
}

long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ull;
    unsigned long long limit = ~0ull - (~0ull % span);
    unsigned long long v;
    do {
        v = rng();
    } while (v >= limit);
    return lo + static_cast<long long>(v % span);
}

ColoredSiteSet instance(int n, int m, Metric metric, std::uint64_t seed) {
    GeneratorParams p;
    p.n = n;
    p.m = m;
    p.metric = metric;
    p.seed = seed;
    return generate_sites(p);
}

// Rational points exactly on the unit sphere via stereographic projection,
// rejected until no four are coplanar.
std::vector<std::pair<Point3, int>> sphere_points(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Point3, int>> pts;
    while (static_cast<int>(pts.size()) < n) {
        Rational u(static_cast<long>(draw(rng, -4000, 4000)), 997);
        Rational v(static_cast<long>(draw(rng, -4000, 4000)), 991);
        Rational s = u * u + v * v;
        Point3 candidate{2 * u / (s + 1), 2 * v / (s + 1), (s - 1) / (s + 1)};
        bool bad = false;
        for (const auto& [q, qc] : pts)
            if (q == candidate) bad = true;
        std::size_t sz = pts.size();
        if (!bad && sz >= 3) {
            for (std::size_t a = 0; a < sz && !bad; ++a)
                for (std::size_t b = a + 1; b < sz && !bad; ++b)
                    for (std::size_t c = b + 1; c < sz && !bad; ++c)
                        if (orient3d(pts[a].first, pts[b].first, pts[c].first, candidate) == 0)
                            bad = true;
        }
        if (bad) continue;
        int color = static_cast<int>(pts.size()) < m ? static_cast<int>(pts.size())
                                                     : static_cast<int>(draw(rng, 0, m - 1));
        pts.emplace_back(candidate, color);
    }
    return pts;
}

bool check_3d_identity(const FacetTable& t, long long n, int m) {
    for (int j = 0; j <= m - 2; ++j) {
        long long lhs = t.at(3, j);
        for (int i = 0; i <= j; ++i) lhs += t.at(2, i) + (j - i + 1) * t.at(1, i);
        if (lhs != 2 * (j + 1) * (n - j - 2)) return false;
    }
    return true;
}

}  // namespace

int main() {
    // Criterion 1: exact m = n identity from the census alone.
    {
        Timer timer;
        bool pass = true;
        std::mt19937_64 rng(1001);
        for (int trial = 0; trial < 25; ++trial) {
            int n = static_cast<int>(draw(rng, 6, 16));
            ColoredSiteSet sites = instance(n, n, Metric::Euclidean, 9000 + trial);
            CensusOptions opts;
            opts.keep_entries = false;
            CensusTable t = census(sites, opts);
            for (int k = 1; k <= n - 1; ++k) {
                long long total = diagram_vertex_count(t, k, Side::Min) +
                                  diagram_vertex_count(t, k, Side::Max);
                if (total != 4ll * k * (n - k) - 2 * n) pass = false;
            }
        }
        report(1, "m=n exact vertex total", pass, timer.seconds());
    }

    // Criteria 2, 3, 4, 9 share the 25 mixed instances.
    std::vector<ColoredSiteSet> mixed;
    std::vector<CensusTable> mixed_census;
    std::vector<FacetTable> mixed_f2, mixed_f3;
    {
        Timer timer;
        bool pass = true;
        std::mt19937_64 rng(2002);
        for (int trial = 0; trial < 25; ++trial) {
            int n = static_cast<int>(draw(rng, 8, 40));
            int m = static_cast<int>(draw(rng, 2, n - 1));
            ColoredSiteSet sites = instance(n, m, Metric::Euclidean, 11000 + trial);
            CensusOptions opts;
            opts.keep_entries = false;
            CensusTable t = census(sites, opts);
            FacetTable f3 = facets_3d(lift_all(sites), m);
            for (int k = 1; k <= m - 1; ++k) {
                long long lhs = diagram_vertex_count(t, k, Side::Min) +
                                diagram_vertex_count(t, k, Side::Max);
                long long rhs = 4ll * k * (n - k) - 2 * n;
                for (int i = 0; i <= k - 2; ++i) rhs -= 2 * f3.at(2, i);
                for (int i = 0; i <= k - 1; ++i) rhs -= (2ll * k - 2 * i - 1) * f3.at(1, i);
                if (lhs != rhs) pass = false;
            }
            mixed.push_back(std::move(sites));
            mixed_census.push_back(std::move(t));
            mixed_f2.push_back(facets_2d(mixed.back()));
            mixed_f3.push_back(std::move(f3));
        }
        report(2, "Euclidean identity with corrections", pass, timer.seconds());
    }

    {
        Timer timer;
        bool pass = true;
        for (std::size_t i = 0; i < mixed.size(); ++i)
            if (!check_3d_identity(mixed_f3[i], mixed[i].n(), mixed[i].m)) pass = false;
        std::mt19937_64 rng(3003);
        for (int trial = 0; trial < 10; ++trial) {
            int n = static_cast<int>(draw(rng, 6, 14));
            int m = static_cast<int>(draw(rng, 2, n));
            auto pts = sphere_points(n, m, 5000 + trial);
            if (!check_3d_identity(facets_3d(pts, m), n, m)) pass = false;
        }
        report(3, "convex-position 3D facet identity", pass, timer.seconds());
    }

    {
        Timer timer;
        bool pass = true;
        for (std::size_t i = 0; i < mixed.size(); ++i) {
            const ColoredSiteSet& sites = mixed[i];
            const CensusTable& t = mixed_census[i];
            const FacetTable& f2 = mixed_f2[i];
            const long long n = sites.n();
            auto big_u = [&](int j) { return j < 0 ? 0 : aggregate_U(f2, j); };
            for (int k = 1; k <= sites.m - 1; ++k) {
                long long min_rhs = 2ll * k * (2 * n - k) - 2 * n - big_u(k - 1) - big_u(k - 2);
                for (int j = 0; j <= k - 2; ++j) min_rhs -= 2 * t.min_at(2, j);
                for (int j = 0; j <= k - 1; ++j)
                    min_rhs -= (2ll * k - 2 * j - 1) * t.min_at(1, j);
                if (diagram_vertex_count(t, k, Side::Min) != min_rhs) pass = false;
                long long max_rhs = big_u(k - 1) + big_u(k - 2) - 2ll * k * k;
                for (int j = 0; j <= k - 2; ++j) max_rhs -= 2 * t.max_at(2, j);
                for (int j = 0; j <= k - 1; ++j)
                    max_rhs -= (2ll * k - 2 * j - 1) * t.max_at(1, j);
                if (diagram_vertex_count(t, k, Side::Max) != max_rhs) pass = false;
            }
        }
        report(4, "per-side general formulas", pass, timer.seconds());
    }

    // Criteria 5 and 6: builder vs census, then oracle validation.
    std::vector<ColoredSiteSet> built_sites;
    std::vector<BuildResult> built;
    std::vector<CensusTable> built_census;
    {
        Timer timer;
        bool pass = true;
        std::mt19937_64 rng(4004);
        for (int trial = 0; trial < 10; ++trial) {
            int n = static_cast<int>(draw(rng, 6, 20));
            int m = trial % 3 == 0 ? n : static_cast<int>(draw(rng, 2, n));
            ColoredSiteSet sites = instance(n, m, Metric::Euclidean, 21000 + trial);
            CensusTable t = census(sites);
            BuildResult result = build_sequences(sites, sites.m);
            for (int k = 1; k <= sites.m; ++k)
                for (Side side : {Side::Min, Side::Max}) {
                    const DiagramSequence& seq =
                        side == Side::Min ? result.min_side : result.max_side;
                    if (interior_vertex_points(seq.coarse[k - 1]) !=
                        census_vertex_points(t, k, side))
                        pass = false;
                    for (int c = 1; c <= 3; ++c)
                        if (seq.stats[k - 1].new_vertices_by_chromaticity[c] !=
                            t.at(c, k - 1, side))
                            pass = false;
                }
            built_sites.push_back(std::move(sites));
            built.push_back(std::move(result));
            built_census.push_back(std::move(t));
        }
        report(5, "builder-census equivalence", pass, timer.seconds());
    }

    {
        Timer timer;
        bool pass = true;
        for (std::size_t i = 0; i < built.size(); ++i) {
            const ColoredSiteSet& sites = built_sites[i];
            for (int k = 1; k <= sites.m; ++k)
                for (Side side : {Side::Min, Side::Max}) {
                    const DiagramSequence& seq =
                        side == Side::Min ? built[i].min_side : built[i].max_side;
                    if (!validate_diagram(seq.coarse[k - 1], sites, k, side, 8, false).ok())
                        pass = false;
                    if (!validate_diagram(seq.refined[k - 1], sites, k, side, 8, true).ok())
                        pass = false;
                }
        }
        report(6, "oracle validation of all diagrams", pass, timer.seconds());
    }

    // Criterion 7: V1/V2 on random subsets (20 per instance).
    {
        Timer timer;
        bool pass = true;
        for (std::size_t i = 0; i < built_sites.size(); ++i) {
            CensusOptions copts;
            copts.keep_entries = false;
            copts.check_general_position = false;
            VerifyOptions vopts;
            vopts.subset_checks = 20;
            vopts.subset_seed = 600 + i;
            FacetTable f3 = facets_3d(lift_all(built_sites[i]), built_sites[i].m);
            VerificationReport rep = verify_identities(
                built_sites[i], built_census[i], facets_2d(built_sites[i]), &f3, vopts);
            for (const auto& r : rep.records)
                if ((r.identity == "condition_V1_subset" || r.identity == "condition_V2_subset") &&
                    !r.pass)
                    pass = false;
        }
        report(7, "V1/V2 subset conditions", pass, timer.seconds());
    }

    // Criterion 8: L-infinity bounds plus square-solver/oracle agreement.
    {
        Timer timer;
        bool pass = true;
        std::mt19937_64 rng(8008);
        for (int trial = 0; trial < 15; ++trial) {
            int n = static_cast<int>(draw(rng, 6, 13));
            int m = static_cast<int>(draw(rng, 2, std::max(2, n - 2)));
            ColoredSiteSet sites = instance(n, m, Metric::Linf, 31000 + trial);
            CensusOptions opts;
            opts.keep_entries = false;
            CensusTable t = census(sites, opts);
            for (int k = 1; k <= m - 1; ++k) {
                long long bound = 4ll * k * (n - k) - 2 * n;
                if (diagram_vertex_count(t, k, Side::Min) >
                    std::min(bound, 4ll * (n - k) * (n - k)))
                    pass = false;
                if (diagram_vertex_count(t, k, Side::Max) > std::min(bound, 2ll * k * k))
                    pass = false;
            }
            for (int a = 0; a < sites.n(); ++a)
                for (int b = a + 1; b < sites.n(); ++b)
                    for (int c = b + 1; c < sites.n(); ++c) {
                        auto got = squares_through_three(sites.sites[a].position,
                                                         sites.sites[b].position,
                                                         sites.sites[c].position);
                        auto expect = cvd_test::corner_grid_squares(sites.sites[a].position,
                                                                    sites.sites[b].position,
                                                                    sites.sites[c].position);
                        if (!cvd_test::same_square_set(got, expect)) pass = false;
                    }
        }
        report(8, "L-infinity bounds and square oracle", pass, timer.seconds());
    }

    // Criterion 9: 2D facet sandwich on every Euclidean instance above.
    {
        Timer timer;
        bool pass = true;
        auto sandwich = [&](const ColoredSiteSet& sites, const FacetTable& f2) {
            const long long n = sites.n();
            for (int k = 0; k <= sites.m - 2; ++k) {
                long long uk = aggregate_U(f2, k);
                if (uk < static_cast<long long>(k + 1) * (k + 2)) return false;
                if (uk > static_cast<long long>(k + 1) * (2 * n - k - 2)) return false;
            }
            return true;
        };
        for (std::size_t i = 0; i < mixed.size(); ++i)
            if (!sandwich(mixed[i], mixed_f2[i])) pass = false;
        for (const ColoredSiteSet& sites : built_sites)
            if (!sandwich(sites, facets_2d(sites))) pass = false;
        report(9, "2D facet sandwich bounds", pass, timer.seconds());
    }

    // Criterion 10: build n=200, m=50 to order 20 under 60 s.
    {
        Timer timer;
        ColoredSiteSet sites = instance(200, 50, Metric::Euclidean, 777);
        double gen_time = timer.seconds();
        Timer build_timer;
        BuildOptions opts;
        opts.check_invariants = false;
        BuildResult result = build_sequences(sites, 20, opts);
        double build_time = build_timer.seconds();
        bool pass = build_time < 60.0;
        // sanity: coarse totals obey the convex-distance bound at each order
        for (int k = 1; k <= 20; ++k) {
            long long total = result.min_side.stats[k - 1].coarse_vertices +
                              result.max_side.stats[k - 1].coarse_vertices;
            if (total > 4ll * k * (200 - k) - 400) pass = false;
        }
        std::printf("    (generation %.2fs, build %.2fs)\n", gen_time, build_time);
        report(10, "n=200 m=50 k=20 build under 60s", pass, timer.seconds());
    }

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
