#include <doctest.h>

#include <random>

#include "cvd/facets.hpp"
#include "cvd/generator.hpp"
#include "test_support.hpp"

using namespace cvd;
using cvd_test::pt;

namespace {

std::vector<std::pair<Point3, int>> lift_all(const ColoredSiteSet& sites) {
    std::vector<std::pair<Point3, int>> out;
    for (const Site& s : sites.sites) out.emplace_back(lift(s.position), s.color);
    return out;
}

}  // namespace

TEST_CASE("facets_2d of the tri-colored triangle") {
    FacetTable t = facets_2d(cvd_test::t3());
    CHECK(t.at(2, 0) == 3);
    CHECK(t.at(2, 1) == 3);
    CHECK(t.at(1, 0) == 0);
    CHECK(t.at(1, 1) == 0);
    CHECK(t.total() == 6);
    // sandwich at k=0: (k+1)(k+2) <= U_0 <= (k+1)(2n-k-2)
    long long u0 = aggregate_U(t, 0);
    CHECK(u0 == 3);
    CHECK(2 <= u0);
    CHECK(u0 <= 4);
}

TEST_CASE("facets_2d single-color triangle") {
    FacetTable t = facets_2d(cvd_test::make_sites({{0, 0, 0}, {4, 0, 0}, {0, 3, 0}}));
    CHECK(t.at(1, 0) == 3);
    CHECK(t.total() == 3);
}

TEST_CASE("aggregate_U on the triangle") {
    FacetTable t = facets_2d(cvd_test::t3());
    CHECK(aggregate_U(t, 0) == 3);
    CHECK(aggregate_U(t, 1) == 6);
    FacetTable zero(2, 4, 3);
    CHECK(aggregate_U(zero, 2) == 0);
}

TEST_CASE("facets_3d of the lifted triangle") {
    FacetTable t = facets_3d(lift_all(cvd_test::t3()), 3);
    CHECK(t.at(3, 0) == 2);
    CHECK(t.total() == 2);
    // identity at j = 0 with n = 3: both sides empty.
    CHECK(t.at(3, 0) + t.at(2, 0) + t.at(1, 0) == 2 * 1 * (3 - 0 - 2));
}

TEST_CASE("3d facet identity for fully colored lifted points") {
    GeneratorParams params;
    params.n = 4;
    params.m = 4;
    params.seed = 5;
    ColoredSiteSet sites = generate_sites(params);
    FacetTable t = facets_3d(lift_all(sites), 4);
    for (int j = 0; j <= 2; ++j) {
        CHECK(t.at(3, j) == 2 * (j + 1) * (4 - j - 2));
        CHECK(t.at(2, j) == 0);
        CHECK(t.at(1, j) == 0);
    }
}

TEST_CASE("3d facet identity with repeated colors") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        GeneratorParams params;
        params.n = 9;
        params.m = 4;
        params.seed = seed;
        ColoredSiteSet sites = generate_sites(params);
        FacetTable t = facets_3d(lift_all(sites), sites.m);
        long long n = sites.n();
        for (int j = 0; j <= sites.m - 2; ++j) {
            long long lhs = t.at(3, j);
            for (int i = 0; i <= j; ++i) lhs += t.at(2, i) + (j - i + 1) * t.at(1, i);
            CHECK(lhs == 2 * (j + 1) * (n - j - 2));
        }
    }
}

TEST_CASE("all-distinct colors make every orientation a facet") {
    GeneratorParams params;
    params.n = 8;
    params.m = 8;
    params.seed = 11;
    ColoredSiteSet sites = generate_sites(params);
    FacetTable t = facets_2d(sites);
    CHECK(t.total() == 2 * 8 * 7 / 2);
    // singleton color classes admit no 1-chromatic pair
    for (int j = 0; j < sites.m; ++j) CHECK(t.at(1, j) == 0);
}

TEST_CASE("weights never exceed the color budget") {
    GeneratorParams params;
    params.n = 12;
    params.m = 4;
    params.seed = 23;
    ColoredSiteSet sites = generate_sites(params);
    FacetTable t2 = facets_2d(sites);
    std::vector<std::pair<Point3, int>> lifted = lift_all(sites);
    FacetTable t3 = facets_3d(lifted, sites.m);
    for (int c = 1; c <= 2; ++c)
        for (int j = sites.m - c + 1; j < sites.m; ++j) CHECK(t2.at(c, j) == 0);
    for (int c = 1; c <= 3; ++c)
        for (int j = sites.m - c + 1; j < sites.m; ++j) CHECK(t3.at(c, j) == 0);
}

TEST_CASE("facet table invariance under translation, scaling, reflection") {
    GeneratorParams params;
    params.n = 10;
    params.m = 3;
    params.seed = 21;
    ColoredSiteSet base = generate_sites(params);
    FacetTable reference = facets_2d(base);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        ColoredSiteSet moved = base;
        Rational dx(static_cast<long>(rng() % 1000) - 500);
        Rational dy(static_cast<long>(rng() % 1000) - 500);
        Rational scale(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 3));
        for (Site& s : moved.sites) {
            s.position.x = s.position.x * scale + dx;
            s.position.y = s.position.y * scale + dy;
        }
        FacetTable t = facets_2d(moved);
        CHECK(t.counts == reference.counts);
    }
    ColoredSiteSet reflected = base;
    for (Site& s : reflected.sites) {
        s.position.x = -s.position.x;
        s.position.y = -s.position.y;
    }
    CHECK(facets_2d(reflected).counts == reference.counts);
}

TEST_CASE("euclid_unbounded_tables requires the Euclidean metric") {
    ColoredSiteSet linf = cvd_test::make_sites({{0, 0, 0}, {4, 1, 1}, {2, 3, 2}}, Metric::Linf);
    CHECK_THROWS_AS(euclid_unbounded_tables(linf), MetricMismatch);
    auto [u, ubar] = euclid_unbounded_tables(cvd_test::t3());
    CHECK(u.counts == ubar.counts);
    CHECK(u.at(2, 0) == 3);
}
