#include "cvd/identities.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace cvd {

namespace {

long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ull;
    unsigned long long limit = ~0ull - (~0ull % span);
    unsigned long long v;
    do {
        v = rng();
    } while (v >= limit);
    return lo + static_cast<long long>(v % span);
}

bool holds(long long lhs, const std::string& relation, long long rhs) {
    if (relation == "=") return lhs == rhs;
    if (relation == "<=") return lhs <= rhs;
    if (relation == ">=") return lhs >= rhs;
    return false;
}

// Color-contiguous subset of sites; V1/V2 are color-blind, so remapping the
// colors of the chosen sites is harmless.
ColoredSiteSet make_subset(const ColoredSiteSet& sites, const std::vector<int>& ids) {
    ColoredSiteSet out;
    out.metric = sites.metric;
    std::vector<int> color_map(sites.m, -1);
    int next_color = 0;
    for (int id : ids) {
        const Site& src = sites.sites[id];
        if (color_map[src.color] < 0) color_map[src.color] = next_color++;
        Site s;
        s.id = out.n();
        s.position = src.position;
        s.color = color_map[src.color];
        out.sites.push_back(std::move(s));
    }
    out.m = next_color;
    return out;
}

}  // namespace

void VerificationReport::add(std::string identity, std::string params, long long lhs,
                             std::string relation, long long rhs) {
    VerificationRecord rec;
    rec.identity = std::move(identity);
    rec.params = std::move(params);
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.pass = holds(lhs, relation, rhs);
    rec.relation = std::move(relation);
    records.push_back(std::move(rec));
}

void print_report(std::ostream& out, const VerificationReport& report) {
    for (const auto& r : report.records)
        out << (r.pass ? "PASS " : "FAIL ") << r.identity << " " << r.params << ": " << r.lhs
            << " " << r.relation << " " << r.rhs << "\n";
}

VerificationReport verify_identities(const ColoredSiteSet& sites, const CensusTable& table,
                                     const FacetTable& facets2d,
                                     const FacetTable* facets3d_of_lift,
                                     const VerifyOptions& options) {
    VerificationReport report;
    const long long n = sites.n();
    const int m = sites.m;

    // 2D facet sandwich; metric-independent.
    for (int k = 0; k <= m - 2; ++k) {
        long long uk = aggregate_U(facets2d, k);
        report.add("j_facets_2d_sandwich_lower", "k=" + std::to_string(k),
                   static_cast<long long>(k + 1) * (k + 2), "<=", uk);
        report.add("j_facets_2d_sandwich_upper", "k=" + std::to_string(k), uk,
                   "<=", static_cast<long long>(k + 1) * (2 * n - k - 2));
    }

    if (sites.metric == Metric::Linf) {
        for (int k = 1; k <= m - 1; ++k) {
            long long cvd = diagram_vertex_count(table, k, Side::Min);
            long long mcvd = diagram_vertex_count(table, k, Side::Max);
            long long convex_bound = 4ll * k * (n - k) - 2 * n;
            report.add("kcvd_linf_min_bound", "k=" + std::to_string(k), cvd, "<=",
                       std::min(convex_bound, 4ll * (n - k) * (n - k)));
            report.add("kcvd_linf_max_bound", "k=" + std::to_string(k), mcvd, "<=",
                       std::min(convex_bound, 2ll * k * k));
            report.add("kcvd_convex_total_bound", "k=" + std::to_string(k), cvd + mcvd, "<=",
                       convex_bound);
        }
        return report;
    }

    if (facets3d_of_lift == nullptr)
        throw GeometryError("Euclidean verification needs the lifted 3D facet table");
    const FacetTable& e3 = *facets3d_of_lift;

    // Vertex counts vs. lifted facets, per chromaticity and weight.
    for (int c = 1; c <= 3; ++c)
        for (int j = 0; j <= m - c; ++j)
            report.add("v_plus_vbar_eq_e", "c=" + std::to_string(c) + " j=" + std::to_string(j),
                       table.min_at(c, j) + table.max_at(c, j), "=", e3.at(c, j));

    // Convex-position identity for the lifted set.
    for (int j = 0; j <= m - 2; ++j) {
        long long lhs = e3.at(3, j);
        for (int i = 0; i <= j; ++i)
            lhs += e3.at(2, i) + static_cast<long long>(j - i + 1) * e3.at(1, i);
        report.add("j_facets_convex_3d", "j=" + std::to_string(j), lhs, "=",
                   2ll * (j + 1) * (n - j - 2));
    }

    // Total vertex count of both order-k diagrams with correction terms.
    for (int k = 1; k <= m - 1; ++k) {
        long long lhs =
            diagram_vertex_count(table, k, Side::Min) + diagram_vertex_count(table, k, Side::Max);
        long long rhs = 4ll * k * (n - k) - 2 * n;
        for (int i = 0; i <= k - 2; ++i) rhs -= 2 * e3.at(2, i);
        for (int i = 0; i <= k - 1; ++i) rhs -= static_cast<long long>(2 * k - 2 * i - 1) * e3.at(1, i);
        report.add("kcvd_euclidean_total", "k=" + std::to_string(k), lhs, "=", rhs);
    }

    // Per-side formulas; unbounded-edge aggregates equal facet aggregates
    // under any smooth convex distance.
    auto big_u = [&](int j) { return j < 0 ? 0 : aggregate_U(facets2d, j); };
    for (int k = 1; k <= m - 1; ++k) {
        long long min_lhs = diagram_vertex_count(table, k, Side::Min);
        long long min_rhs = 2ll * k * (2 * n - k) - 2 * n - big_u(k - 1) - big_u(k - 2);
        for (int i = 0; i <= k - 2; ++i) min_rhs -= 2 * table.min_at(2, i);
        for (int i = 0; i <= k - 1; ++i)
            min_rhs -= static_cast<long long>(2 * k - 2 * i - 1) * table.min_at(1, i);
        report.add("kcvd_general_min", "k=" + std::to_string(k), min_lhs, "=", min_rhs);

        long long max_lhs = diagram_vertex_count(table, k, Side::Max);
        long long max_rhs = big_u(k - 1) + big_u(k - 2) - 2ll * k * k;
        for (int i = 0; i <= k - 2; ++i) max_rhs -= 2 * table.max_at(2, i);
        for (int i = 0; i <= k - 1; ++i)
            max_rhs -= static_cast<long long>(2 * k - 2 * i - 1) * table.max_at(1, i);
        report.add("kcvd_general_max", "k=" + std::to_string(k), max_lhs, "=", max_rhs);
    }

    // Aggregate forms of conditions V1/V2 on the whole set.
    for (int j = 0; j <= m - 2; ++j) {
        long long vj = table.min_at(3, j);
        long long vbarj = table.max_at(3, j);
        for (int i = 0; i <= j; ++i) {
            vj += table.min_at(2, i) + static_cast<long long>(j - i + 1) * table.min_at(1, i);
            vbarj += table.max_at(2, i) + static_cast<long long>(j - i + 1) * table.max_at(1, i);
        }
        report.add("v_plus_u_aggregate", "j=" + std::to_string(j), vj + aggregate_U(facets2d, j),
                   "=", static_cast<long long>(j + 1) * (2 * n - j - 2));
        report.add("vbar_minus_ubar_aggregate", "j=" + std::to_string(j),
                   vbarj - aggregate_U(facets2d, j), "=",
                   -static_cast<long long>(j + 1) * (j + 2));
    }

    // Conditions V1/V2 on random site subsets, exact per sample.
    std::mt19937_64 rng(options.subset_seed);
    for (int trial = 0; trial < options.subset_checks; ++trial) {
        int size = static_cast<int>(draw(rng, 2, n));
        std::vector<int> ids(sites.n());
        for (int i = 0; i < n; ++i) ids[i] = i;
        for (int i = 0; i < size; ++i)
            std::swap(ids[i], ids[draw(rng, i, n - 1)]);
        ids.resize(size);
        std::sort(ids.begin(), ids.end());
        ColoredSiteSet subset = make_subset(sites, ids);
        CensusOptions census_opts;
        census_opts.keep_entries = false;
        census_opts.check_general_position = false;  // subsets inherit it
        CensusTable sub_census = census(subset, census_opts);
        FacetTable sub_facets = facets_2d(subset);
        long long v0 = 0, vbar0 = 0, u0 = 0;
        for (int c = 1; c <= 3; ++c) {
            v0 += sub_census.min_at(c, 0);
            vbar0 += sub_census.max_at(c, 0);
        }
        for (int c = 1; c <= 2; ++c) u0 += sub_facets.at(c, 0);
        report.add("condition_V1_subset", "trial=" + std::to_string(trial) + " size=" +
                       std::to_string(size),
                   v0, "=", 2ll * size - 2 - u0);
        report.add("condition_V2_subset", "trial=" + std::to_string(trial) + " size=" +
                       std::to_string(size),
                   vbar0, "=", u0 - 2);
    }
    return report;
}

}  // namespace cvd
