#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cvd/builder.hpp"
#include "cvd/generator.hpp"
#include "cvd/identities.hpp"
#include "cvd/io.hpp"
#include "cvd/oracle.hpp"
#include "cvd/serialize.hpp"
#include "cvd/svg.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;

cvd::Metric parse_metric(const std::string& s) {
    if (s == "l2") return cvd::Metric::Euclidean;
    if (s == "linf") return cvd::Metric::Linf;
    throw CLI::ValidationError("--metric must be l2 or linf");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    return file;
}

std::vector<std::pair<cvd::Point3, int>> lift_all(const cvd::ColoredSiteSet& sites) {
    std::vector<std::pair<cvd::Point3, int>> out;
    out.reserve(sites.sites.size());
    for (const cvd::Site& s : sites.sites) out.emplace_back(cvd::lift(s.position), s.color);
    return out;
}

int cmd_gen(int n, int m, const std::string& metric, std::uint64_t seed, long long bbox,
            const std::string& out_path) {
    cvd::GeneratorParams params;
    params.n = n;
    params.m = m;
    params.metric = parse_metric(metric);
    params.seed = seed;
    params.bbox = bbox;
    cvd::ColoredSiteSet sites = cvd::generate_sites(params);
    std::ofstream file;
    cvd::write_site_file(open_out(file, out_path), sites);
    return kExitPass;
}

int cmd_census(const std::string& path, const std::string& metric) {
    cvd::ColoredSiteSet sites = cvd::read_site_file_path(path, parse_metric(metric));
    cvd::CensusOptions opts;
    opts.keep_entries = false;
    opts.self_audit = false;
    cvd::CensusTable table = cvd::census(sites, opts);
    std::cout << "# census n=" << table.n << " m=" << table.m << " metric=" << metric << "\n";
    for (int c = 1; c <= 3; ++c)
        for (int j = 0; j < table.m; ++j)
            if (table.min_at(c, j)) std::cout << "v " << c << " " << j << " " << table.min_at(c, j) << "\n";
    for (int c = 1; c <= 3; ++c)
        for (int j = 0; j < table.m; ++j)
            if (table.max_at(c, j)) std::cout << "vbar " << c << " " << j << " " << table.max_at(c, j) << "\n";
    for (int k = 1; k <= table.m; ++k)
        std::cout << "count k=" << k << " cvd=" << cvd::diagram_vertex_count(table, k, cvd::Side::Min)
                  << " mcvd=" << cvd::diagram_vertex_count(table, k, cvd::Side::Max)
                  << " refined=" << cvd::refined_vertex_count(table, k, cvd::Side::Min) << "/"
                  << cvd::refined_vertex_count(table, k, cvd::Side::Max) << "\n";
    return kExitPass;
}

int cmd_facets(const std::string& path, const std::string& metric) {
    cvd::ColoredSiteSet sites = cvd::read_site_file_path(path, parse_metric(metric));
    cvd::FacetTable t2 = cvd::facets_2d(sites);
    std::cout << "# facets n=" << t2.n << " m=" << t2.m << "\n";
    for (int c = 1; c <= 2; ++c)
        for (int j = 0; j < t2.m; ++j)
            if (t2.at(c, j)) std::cout << "e2 " << c << " " << j << " " << t2.at(c, j) << "\n";
    cvd::FacetTable t3 = cvd::facets_3d(lift_all(sites), sites.m);
    for (int c = 1; c <= 3; ++c)
        for (int j = 0; j < t3.m; ++j)
            if (t3.at(c, j)) std::cout << "e3lift " << c << " " << j << " " << t3.at(c, j) << "\n";
    for (int j = 0; j <= t2.m - 1; ++j)
        std::cout << "U j=" << j << " " << cvd::aggregate_U(t2, j) << "\n";
    return kExitPass;
}

int cmd_build(const std::string& path, const std::string& metric, int k, const std::string& side,
              const std::string& out_path) {
    if (parse_metric(metric) != cvd::Metric::Euclidean) {
        std::cerr << "build: only the Euclidean metric (--metric l2) is supported; "
                     "use 'census'/'verify' for L-infinity counting\n";
        return kExitUsage;
    }
    cvd::ColoredSiteSet sites = cvd::read_site_file_path(path, cvd::Metric::Euclidean);
    if (k <= 0) k = sites.m;
    k = std::min(k, sites.m);
    cvd::BuildResult result = cvd::build_sequences(sites, k);
    const long long n = sites.n();
    for (int i = 0; i < k; ++i) {
        const auto& mn = result.min_side.stats[i];
        const auto& mx = result.max_side.stats[i];
        std::cout << "order " << (i + 1);
        if (side != "max")
            std::cout << " min[v=" << mn.coarse_vertices << " e=" << mn.coarse_edges
                      << " f=" << mn.coarse_faces << " refined_v=" << mn.refined_vertices << "]";
        if (side != "min")
            std::cout << " max[v=" << mx.coarse_vertices << " e=" << mx.coarse_edges
                      << " f=" << mx.coarse_faces << " refined_v=" << mx.refined_vertices << "]";
        std::cout << " total=" << (mn.coarse_vertices + mx.coarse_vertices)
                  << " bound=" << (4ll * (i + 1) * (n - (i + 1)) - 2 * n) << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream file;
        cvd::write_sequence(open_out(file, out_path), result, sites);
    }
    return kExitPass;
}

int cmd_verify(const std::string& path, const std::string& metric, int k, int samples_per_face,
               int subsets, bool skip_builder) {
    cvd::ColoredSiteSet sites = cvd::read_site_file_path(path, parse_metric(metric));
    cvd::GeneralPositionReport gp = cvd::check_general_position(sites);
    if (!gp.ok) {
        std::cerr << "verify: input violates general position (" << gp.violations.front().kind
                  << ")\n";
        return kExitUsage;
    }
    cvd::CensusOptions copts;
    copts.keep_entries = true;
    copts.self_audit = true;
    copts.check_general_position = false;
    cvd::CensusTable table = cvd::census(sites, copts);
    cvd::FacetTable t2 = cvd::facets_2d(sites);
    cvd::VerifyOptions vopts;
    vopts.subset_checks = subsets;

    cvd::VerificationReport report;
    if (sites.metric == cvd::Metric::Euclidean) {
        cvd::FacetTable t3 = cvd::facets_3d(lift_all(sites), sites.m);
        report = cvd::verify_identities(sites, table, t2, &t3, vopts);
    } else {
        report = cvd::verify_identities(sites, table, t2, nullptr, vopts);
    }

    if (sites.metric == cvd::Metric::Euclidean && !skip_builder) {
        if (k <= 0) k = sites.m;
        k = std::min(k, sites.m);
        cvd::BuildResult built = cvd::build_sequences(sites, k);
        for (int i = 1; i <= k; ++i) {
            for (cvd::Side side : {cvd::Side::Min, cvd::Side::Max}) {
                const auto& seq = side == cvd::Side::Min ? built.min_side : built.max_side;
                std::string tag = side == cvd::Side::Min ? "min" : "max";
                report.add("builder_census_vertices_" + tag, "k=" + std::to_string(i),
                           cvd::interior_vertex_points(seq.coarse[i - 1]) ==
                                   cvd::census_vertex_points(table, i, side)
                               ? 1
                               : 0,
                           "=", 1);
                for (int c = 1; c <= 3; ++c)
                    report.add("builder_new_vertices_" + tag,
                               "k=" + std::to_string(i) + " c=" + std::to_string(c),
                               seq.stats[i - 1].new_vertices_by_chromaticity[c], "=",
                               table.at(c, i - 1, side));
                cvd::ValidationReport vr = cvd::validate_diagram(seq.coarse[i - 1], sites, i,
                                                                 side, samples_per_face, false);
                report.add("oracle_coarse_" + tag, "k=" + std::to_string(i),
                           static_cast<long long>(vr.mismatches.size()), "=", 0);
                cvd::ValidationReport vrr = cvd::validate_diagram(seq.refined[i - 1], sites, i,
                                                                  side, samples_per_face, true);
                report.add("oracle_refined_" + tag, "k=" + std::to_string(i),
                           static_cast<long long>(vrr.mismatches.size()), "=", 0);
            }
        }
    }

    cvd::print_report(std::cout, report);
    int failures = 0;
    for (const auto& r : report.records)
        if (!r.pass) ++failures;
    std::cout << "# " << report.records.size() << " checks, " << failures << " failures\n";
    return failures == 0 ? kExitPass : kExitIdentityFailure;
}

int cmd_svg(const std::string& path, const std::string& out_path, int k, const std::string& side,
            bool show_refined, bool show_old_edges) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "svg: cannot open '" << path << "'\n";
        return kExitUsage;
    }
    cvd::LoadedSequence seq = cvd::read_sequence(in);
    const bool max_side = side == "max";
    cvd::Side s = max_side ? cvd::Side::Max : cvd::Side::Min;
    if (k <= 0) k = 1;
    const cvd::LoadedDiagram* item = seq.find(s, k, show_refined);
    if (item == nullptr) {
        std::cerr << "svg: diagram (side=" << (max_side ? "max" : "min") << ", k=" << k
                  << (show_refined ? ", refined" : ", coarse") << ") not in file\n";
        return kExitUsage;
    }
    cvd::SvgOptions options;
    options.show_old_edges = show_old_edges;
    std::ofstream file;
    cvd::render_svg(open_out(file, out_path), item->sub, seq.sites, options);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal/maximal order-k color Voronoi diagrams: counting, "
                 "construction, verification"};
    app.require_subcommand(1);

    std::string metric = "l2", in_path, out_path, side = "both";
    int n = 0, m = 0, k = 0, samples = 8, subsets = 20;
    std::uint64_t seed = 0;
    long long bbox = 0;
    bool show_refined = false, show_old_edges = true, skip_builder = false;

    auto* gen = app.add_subcommand("gen", "generate a general-position site file");
    gen->add_option("n", n, "number of sites")->required();
    gen->add_option("m", m, "number of colors")->required();
    gen->add_option("--metric", metric, "l2 or linf");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--bbox", bbox, "coordinate bound (default auto)");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* census_cmd = app.add_subcommand("census", "vertex census tables");
    census_cmd->add_option("sitefile", in_path, "input site file")->required();
    census_cmd->add_option("--metric", metric, "l2 or linf");

    auto* facets_cmd = app.add_subcommand("facets", "colored j-facet tables");
    facets_cmd->add_option("sitefile", in_path, "input site file")->required();
    facets_cmd->add_option("--metric", metric, "l2 or linf");

    auto* build = app.add_subcommand("build", "build diagram sequences (Euclidean)");
    build->add_option("sitefile", in_path, "input site file")->required();
    build->add_option("--metric", metric, "l2 or linf");
    build->add_option("--k", k, "highest order (default m)");
    build->add_option("--side", side, "min, max, or both");
    build->add_option("--out", out_path, "serialized sequence output");

    auto* verify = app.add_subcommand("verify", "verify identities and cross-checks");
    verify->add_option("sitefile", in_path, "input site file")->required();
    verify->add_option("--metric", metric, "l2 or linf");
    verify->add_option("--k", k, "builder order cap (default m)");
    verify->add_option("--samples-per-face", samples, "oracle samples per face");
    verify->add_option("--subsets", subsets, "V1/V2 subset trials");
    verify->add_flag("--no-builder", skip_builder, "skip builder cross-checks");

    auto* svg = app.add_subcommand("svg", "render a serialized diagram to SVG");
    svg->add_option("diagramfile", in_path, "serialized sequence file")->required();
    svg->add_option("--out", out_path, "output SVG (default stdout)");
    svg->add_option("--k", k, "order to render (default 1)");
    svg->add_option("--side", side, "min or max");
    svg->add_flag("--show-refined", show_refined, "render the refined diagram");
    svg->add_flag("!--no-old-edges", show_old_edges, "hide old (gray) edges");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(n, m, metric, seed, bbox, out_path);
        if (census_cmd->parsed()) return cmd_census(in_path, metric);
        if (facets_cmd->parsed()) return cmd_facets(in_path, metric);
        if (build->parsed()) return cmd_build(in_path, metric, k, side, out_path);
        if (verify->parsed()) return cmd_verify(in_path, metric, k, samples, subsets, skip_builder);
        if (svg->parsed())
            return cmd_svg(in_path, out_path, k, side, show_refined, show_old_edges);
    } catch (const cvd::SiteFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvd::SerializeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvd::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvd::GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
