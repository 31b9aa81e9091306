#include <doctest.h>

#include <sstream>

#include "cvd/builder.hpp"
#include "cvd/io.hpp"
#include "cvd/serialize.hpp"
#include "cvd/oracle.hpp"
#include "cvd/svg.hpp"
#include "test_support.hpp"

using namespace cvd;
using cvd_test::pt;

TEST_CASE("site file round trip preserves exact coordinates") {
    std::istringstream in(
        "# comment line\n"
        "0.5 -2 0\n"
        "1/3 4 1\n"
        "\n"
        "7 0.25 0\n");
    ColoredSiteSet sites = read_site_file(in, Metric::Euclidean);
    REQUIRE(sites.n() == 3);
    CHECK(sites.m == 2);
    CHECK(sites.sites[0].position.x == Rational(1, 2));
    CHECK(sites.sites[1].position.x == Rational(1, 3));
    CHECK(sites.sites[2].position.y == Rational(1, 4));

    std::ostringstream out;
    write_site_file(out, sites);
    std::istringstream again(out.str());
    ColoredSiteSet back = read_site_file(again, Metric::Euclidean);
    REQUIRE(back.n() == sites.n());
    for (int i = 0; i < back.n(); ++i) {
        CHECK(back.sites[i].position == sites.sites[i].position);
        CHECK(back.sites[i].color == sites.sites[i].color);
    }
}

TEST_CASE("site file errors carry line numbers") {
    std::istringstream missing_field("1 2\n");
    CHECK_THROWS_AS(read_site_file(missing_field, Metric::Euclidean), SiteFileError);
    try {
        std::istringstream bad("1 2 0\n1 x 1\n");
        read_site_file(bad, Metric::Euclidean);
        FAIL("expected SiteFileError");
    } catch (const SiteFileError& e) {
        CHECK(e.line == 2);
    }
    // colors must form a contiguous range
    std::istringstream gap("0 0 0\n1 1 2\n");
    CHECK_THROWS_AS(read_site_file(gap, Metric::Euclidean), SiteFileError);
}

TEST_CASE("sequence serialization round trips") {
    ColoredSiteSet m5 = cvd_test::m5();
    BuildResult built = build_sequences(m5, 2);
    std::ostringstream out;
    write_sequence(out, built, m5);
    std::istringstream in(out.str());
    LoadedSequence seq = read_sequence(in);
    CHECK(seq.items.size() == 8);  // 2 orders x 2 kinds x 2 sides
    REQUIRE(seq.sites.n() == 5);
    for (int k = 1; k <= 2; ++k)
        for (bool refined : {false, true}) {
            const LoadedDiagram* item = seq.find(Side::Min, k, refined);
            REQUIRE(item != nullptr);
            const Subdivision& original =
                refined ? built.min_side.refined[k - 1] : built.min_side.coarse[k - 1];
            CHECK(item->sub.vertices.size() == original.vertices.size());
            CHECK(item->sub.edge_count() == original.edge_count());
            CHECK(item->sub.faces.size() == original.faces.size());
            CHECK(interior_vertex_points(item->sub) == interior_vertex_points(original));
        }
    // serialization is deterministic
    std::ostringstream out2;
    write_sequence(out2, built, m5);
    CHECK(out.str() == out2.str());

    // vertices appear in lexicographic coordinate order, half-edges sorted
    // by (origin, head)
    std::istringstream scan(out.str());
    std::string line;
    std::vector<Point2> vseq;
    std::vector<std::pair<int, int>> hseq;
    std::vector<int> h_heads;
    bool in_first_diagram = false;
    while (std::getline(scan, line)) {
        if (line.rfind("diagram ", 0) == 0) {
            if (in_first_diagram) break;
            in_first_diagram = true;
            continue;
        }
        if (!in_first_diagram) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            int id;
            std::string xs, ys;
            ls >> id >> xs >> ys;
            vseq.push_back(Point2{parse_rational(xs), parse_rational(ys)});
        } else if (tag == "h") {
            int id, origin, twin;
            ls >> id >> origin >> twin;
            hseq.emplace_back(origin, twin);
        }
    }
    for (std::size_t i = 1; i < vseq.size(); ++i) CHECK(vseq[i - 1] < vseq[i]);
    REQUIRE(!hseq.empty());
    for (std::size_t i = 1; i < hseq.size(); ++i)
        CHECK(hseq[i - 1].first <= hseq[i].first);
}

TEST_CASE("a loaded diagram is fully usable: oracle-validated after reload") {
    ColoredSiteSet p4 = cvd_test::p4();
    BuildResult built = build_sequences(p4, 3);
    std::ostringstream out;
    write_sequence(out, built, p4);
    std::istringstream in(out.str());
    LoadedSequence seq = read_sequence(in);
    for (int k = 1; k <= 3; ++k)
        for (Side side : {Side::Min, Side::Max})
            for (bool refined : {false, true}) {
                const LoadedDiagram* item = seq.find(side, k, refined);
                REQUIRE(item != nullptr);
                ValidationReport r =
                    validate_diagram(item->sub, seq.sites, k, side, 6, refined);
                CHECK(r.ok());
            }
}

TEST_CASE("deserializer rejects corrupted documents") {
    ColoredSiteSet t3 = cvd_test::t3();
    BuildResult built = build_sequences(t3, 1);
    std::ostringstream out;
    write_sequence(out, built, t3);
    std::string text = out.str();
    // truncate the document
    std::istringstream truncated(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_sequence(truncated), SerializeError);
    std::istringstream not_a_file("hello\n");
    CHECK_THROWS_AS(read_sequence(not_a_file), SerializeError);
}

TEST_CASE("svg output matches the styling contract") {
    ColoredSiteSet t3 = cvd_test::t3();
    BuildResult built = build_sequences(t3, 2);
    std::ostringstream svg;
    render_svg(svg, built.min_side.coarse[0], t3);
    std::string doc = svg.str();
    auto count = [&](const std::string& needle) {
        std::size_t pos = 0, hits = 0;
        while ((pos = doc.find(needle, pos)) != std::string::npos) {
            ++hits;
            pos += needle.size();
        }
        return hits;
    };
    CHECK(count("<line") == 3);       // order-1 diagram of the triangle
    CHECK(count("<rect") == 2);       // background + one new-vertex marker
    CHECK(count("<circle") == 3);     // one disk per site

    // old edges appear gray at order 2 and vanish with the option off
    std::ostringstream svg2;
    render_svg(svg2, built.min_side.refined[1], t3);
    CHECK(svg2.str().find("#9a9a9a") != std::string::npos);
    SvgOptions no_old;
    no_old.show_old_edges = false;
    std::ostringstream svg3;
    render_svg(svg3, built.min_side.refined[1], t3, no_old);
    CHECK(svg3.str().find("#9a9a9a") == std::string::npos);
}
