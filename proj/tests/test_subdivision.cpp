#include <doctest.h>

#include "cvd/builder.hpp"
#include "cvd/voronoi_cells.hpp"
#include "test_support.hpp"

using namespace cvd;
using cvd_test::pt;

namespace {

Box unit_box(long r) {
    return Box{Rational(-r), Rational(-r), Rational(r), Rational(r)};
}

BuildSegment box_seg(Point2 a, Point2 b) {
    BuildSegment s;
    s.a = std::move(a);
    s.b = std::move(b);
    s.attr = EdgeAttr{};
    return s;
}

BuildSegment diag_seg(Point2 a, Point2 b, int sa, int sb, bool is_new = true) {
    BuildSegment s;
    s.a = std::move(a);
    s.b = std::move(b);
    s.attr.site_a = std::min(sa, sb);
    s.attr.site_b = std::max(sa, sb);
    s.attr.chromaticity = 2;
    s.attr.is_new = is_new;
    return s;
}

}  // namespace

TEST_CASE("glue a box split by one chord") {
    Box box = unit_box(2);
    std::vector<BuildSegment> segs;
    // chord x = 0 splits the box; box edges split at the chord endpoints
    segs.push_back(diag_seg(pt(0, -2), pt(0, 2), 0, 1));
    segs.push_back(box_seg(pt(-2, -2), pt(2, -2)));
    segs.push_back(box_seg(pt(2, -2), pt(2, 2)));
    segs.push_back(box_seg(pt(2, 2), pt(-2, 2)));
    segs.push_back(box_seg(pt(-2, 2), pt(-2, -2)));
    GlueResult r = glue_subdivision(segs, box);
    r.sub.check_invariants();
    CHECK(r.sub.faces.size() == 3);  // two halves + outer
    CHECK(r.sub.vertices.size() == 6);
    CHECK(r.sub.edge_count() == 7);  // chord + 6 box pieces
    // the chord's forward halfedge has the left (x < 0) face
    auto [fw, rv] = r.seg_halfedge[0];
    REQUIRE(fw >= 0);
    int left_face = r.sub.half[fw].face;
    int right_face = r.sub.half[rv].face;
    CHECK(left_face != right_face);
    CHECK(r.sub.point_in_face(left_face, pt(-1, 0)));
    CHECK(r.sub.point_in_face(right_face, pt(1, 0)));
    CHECK(!r.sub.point_in_face(left_face, pt(1, 0)));
    Point2 inside = r.sub.interior_point(left_face);
    CHECK(inside.x < 0);
    CHECK(r.sub.point_in_face(left_face, inside));
}

TEST_CASE("glue with a floating ring produces a face with a hole") {
    Box box = unit_box(10);
    std::vector<BuildSegment> segs;
    segs.push_back(box_seg(pt(-10, -10), pt(10, -10)));
    segs.push_back(box_seg(pt(10, -10), pt(10, 10)));
    segs.push_back(box_seg(pt(10, 10), pt(-10, 10)));
    segs.push_back(box_seg(pt(-10, 10), pt(-10, -10)));
    // a diamond ring strictly inside
    segs.push_back(diag_seg(pt(2, 0), pt(0, 2), 0, 1));
    segs.push_back(diag_seg(pt(0, 2), pt(-2, 0), 0, 2));
    segs.push_back(diag_seg(pt(-2, 0), pt(0, -2), 1, 3));
    segs.push_back(diag_seg(pt(0, -2), pt(2, 0), 2, 3));
    GlueResult r = glue_subdivision(segs, box);
    r.sub.check_invariants();
    REQUIRE(r.sub.faces.size() == 3);
    int with_hole = -1;
    for (int f = 0; f < 3; ++f)
        if (!r.sub.faces[f].is_outer_face && !r.sub.faces[f].holes.empty()) with_hole = f;
    REQUIRE(with_hole >= 0);
    CHECK(r.sub.point_in_face(with_hole, pt(5, 5)));
    CHECK(!r.sub.point_in_face(with_hole, pt(0, 0)));
    // samples of the punctured face avoid the hole
    for (const Point2& s : r.sub.interior_samples(with_hole, 12))
        CHECK(r.sub.point_in_face(with_hole, s));
}

TEST_CASE("voronoi_cell of two sites splits the box at the bisector") {
    std::vector<Site> sites(2);
    sites[0] = Site{0, pt(-3, 0), 0};
    sites[1] = Site{1, pt(3, 0), 1};
    Box box = unit_box(8);
    CellPolygon near = voronoi_cell(sites, 0, box, Side::Min);
    REQUIRE(!near.degenerate());
    for (const Point2& p : near.pts) CHECK(p.x <= 0);
    bool has_cut = false;
    for (std::size_t i = 0; i < near.pts.size(); ++i)
        if (near.edge_site[i] == 1) has_cut = true;
    CHECK(has_cut);
    CellPolygon far = voronoi_cell(sites, 0, box, Side::Max);
    for (const Point2& p : far.pts) CHECK(p.x >= 0);
}

TEST_CASE("nearest diagram of the triangle") {
    ColoredSiteSet t3 = cvd_test::t3();
    Box box = choose_clip_box(t3);
    CHECK(box.xmax >= Rational(9, 2));  // margin beyond center + radius
    Subdivision vd = nearest_voronoi_clipped(t3.sites, box);
    vd.check_invariants();
    CHECK(vd.faces.size() == 4);  // 3 cells + outer
    std::vector<Point2> interior = interior_vertex_points(vd);
    REQUIRE(interior.size() == 1);
    CHECK(interior[0] == Point2{Rational(2), Rational(3, 2)});
    int diagram_edges = 0, box_crossings = 0;
    for (int e = 0; e < vd.edge_count(); ++e)
        if (!vd.attrs[e].is_box()) ++diagram_edges;
    for (const auto& v : vd.vertices)
        if (v.on_box) ++box_crossings;
    CHECK(diagram_edges == 3);
    // three unbounded edges cross the box; corners are also box vertices
    int crossing_vertices = 0;
    for (const auto& v : vd.vertices) {
        if (!v.on_box) continue;
        bool corner = (v.p.x == box.xmin || v.p.x == box.xmax) &&
                      (v.p.y == box.ymin || v.p.y == box.ymax);
        if (!corner) ++crossing_vertices;
    }
    CHECK(crossing_vertices == 3);
    for (int f = 0; f < 4; ++f) {
        if (vd.faces[f].is_outer_face) continue;
        REQUIRE(vd.faces[f].label.colors.size() == 1);
        REQUIRE(vd.faces[f].label.assoc_site >= 0);
        // the face contains its own site
        CHECK(vd.point_in_face(f, t3.sites[vd.faces[f].label.assoc_site].position));
    }
}

TEST_CASE("single and two-site diagrams") {
    std::vector<Site> one = {Site{0, pt(1, 1), 0}};
    Box box = unit_box(5);
    Subdivision vd = nearest_voronoi_clipped(one, box);
    vd.check_invariants();
    CHECK(vd.faces.size() == 2);
    CHECK(vd.edge_count() == 4);

    std::vector<Site> two = {Site{0, pt(-2, 0), 0}, Site{1, pt(2, 0), 1}};
    Subdivision vd2 = nearest_voronoi_clipped(two, box);
    vd2.check_invariants();
    CHECK(vd2.faces.size() == 3);
    Subdivision fvd2 = farthest_voronoi_clipped(two, box);
    fvd2.check_invariants();
    CHECK(fvd2.faces.size() == 3);
    // farthest flips ownership across the same bisector
    for (int f = 0; f < 3; ++f) {
        if (fvd2.faces[f].is_outer_face) continue;
        int assoc = fvd2.faces[f].label.assoc_site;
        Point2 inside = fvd2.interior_point(f);
        CHECK(((assoc == 0 && inside.x > 0) || (assoc == 1 && inside.x < 0)));
    }
}

TEST_CASE("farthest diagram of the triangle and of a set with an interior site") {
    ColoredSiteSet t3 = cvd_test::t3();
    Box box = choose_clip_box(t3);
    Subdivision fvd = farthest_voronoi_clipped(t3.sites, box);
    fvd.check_invariants();
    CHECK(fvd.faces.size() == 4);
    std::vector<Point2> interior = interior_vertex_points(fvd);
    REQUIRE(interior.size() == 1);
    CHECK(interior[0] == Point2{Rational(2), Rational(3, 2)});

    // square plus interior point: only hull sites own farthest cells
    std::vector<Site> sites = {Site{0, pt(0, 0), 0}, Site{1, pt(10, 1), 1},
                               Site{2, pt(9, 11), 2}, Site{3, pt(-1, 9), 3},
                               Site{4, pt(5, 5), 0}};
    Subdivision fvd5 = farthest_voronoi_clipped(sites, unit_box(100));
    fvd5.check_invariants();
    int cells = 0;
    for (const auto& f : fvd5.faces)
        if (!f.is_outer_face) {
            ++cells;
            CHECK(f.label.assoc_site != 4);
        }
    CHECK(cells == 4);

    // four sites, one interior: three farthest faces only
    std::vector<Site> four = {Site{0, pt(0, 0), 0}, Site{1, pt(12, 1), 1},
                              Site{2, pt(5, 13), 2}, Site{3, pt(5, 5), 3}};
    Subdivision fvd4 = farthest_voronoi_clipped(four, unit_box(100));
    fvd4.check_invariants();
    int hull_cells = 0;
    for (const auto& f : fvd4.faces)
        if (!f.is_outer_face) ++hull_cells;
    CHECK(hull_cells == 3);
}

TEST_CASE("coarsen merges same-color neighbors") {
    // two same-color sites side by side plus one other color
    auto sites = cvd_test::make_sites({{-4, 0, 0}, {4, 0, 0}, {0, 7, 1}});
    Box box = choose_clip_box(sites);
    Subdivision vd = nearest_voronoi_clipped(sites.sites, box);
    vd.check_invariants();
    CHECK(vd.faces.size() == 4);
    Subdivision cvd1 = coarsen(vd);
    cvd1.check_invariants();
    CHECK(cvd1.faces.size() == 3);  // color-0 region merged
    int diagram_edges_refined = 0, diagram_edges_coarse = 0, one_chromatic = 0;
    for (int e = 0; e < vd.edge_count(); ++e) {
        if (vd.attrs[e].is_box()) continue;
        ++diagram_edges_refined;
        if (vd.attrs[e].chromaticity == 1) ++one_chromatic;
    }
    for (int e = 0; e < cvd1.edge_count(); ++e)
        if (!cvd1.attrs[e].is_box()) ++diagram_edges_coarse;
    CHECK(one_chromatic > 0);
    CHECK(diagram_edges_coarse == diagram_edges_refined - one_chromatic);
}

TEST_CASE("coarsen is the identity for fully colored sites") {
    ColoredSiteSet p4 = cvd_test::p4();
    Box box = choose_clip_box(p4);
    Subdivision vd = nearest_voronoi_clipped(p4.sites, box);
    Subdivision cvd1 = coarsen(vd);
    cvd1.check_invariants();
    CHECK(cvd1.faces.size() == vd.faces.size());
    CHECK(cvd1.edge_count() == vd.edge_count());
    CHECK(interior_vertex_points(cvd1) == interior_vertex_points(vd));
}

TEST_CASE("coarsen builds a hole for a surrounded color") {
    // ring of color 0 around a single color-1 site
    auto sites = cvd_test::make_sites({{12, 1, 0},
                                       {6, 10, 0},
                                       {-5, 11, 0},
                                       {-11, 2, 0},
                                       {-6, -9, 0},
                                       {7, -10, 0},
                                       {1, 1, 1}});
    Box box = choose_clip_box(sites);
    Subdivision vd = nearest_voronoi_clipped(sites.sites, box);
    vd.check_invariants();
    Subdivision cvd1 = coarsen(vd);
    cvd1.check_invariants();
    REQUIRE(cvd1.faces.size() == 3);
    int ring_face = -1;
    for (int f = 0; f < 3; ++f)
        if (!cvd1.faces[f].is_outer_face && !cvd1.faces[f].holes.empty()) ring_face = f;
    REQUIRE(ring_face >= 0);
    CHECK(cvd1.faces[ring_face].label.colors == std::vector<int>{0});
    CHECK(!cvd1.point_in_face(ring_face, pt(1, 1)));
    CHECK(cvd1.point_in_face(ring_face, pt(11, 0)));
    // boundary_sites of the ring face must see the enclosed site
    std::set<int> sf = boundary_sites(cvd1, ring_face, sites);
    CHECK(sf.count(6) == 1);
}
