#include "cvd/builder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <deque>
#include <map>
#include <numeric>

#include "cvd/voronoi_cells.hpp"

namespace cvd {

namespace {

Rational rational_abs(const Rational& v) { return sgn(v) < 0 ? Rational(-v) : v; }

int other_site(const EdgeAttr& attr, int site) {
    if (attr.site_a == site) return attr.site_b;
    if (attr.site_b == site) return attr.site_a;
    throw GeometryMismatch("face witness is not a defining site of its edge");
}

EdgeAttr make_edge_attr(int sa, int sb, int color_a, int color_b, bool is_new) {
    EdgeAttr attr;
    attr.site_a = std::min(sa, sb);
    attr.site_b = std::max(sa, sb);
    attr.chromaticity = color_a == color_b ? 1 : 2;
    attr.is_new = is_new;
    return attr;
}

// Per-segment labeling provenance carried beside BuildSegment.
struct SegExtra {
    int left_assoc = -1;
    int right_assoc = -1;
    // coarse faces whose color sets the side labels extend (new segments
    // lie inside one face; old segments separate two)
    int coarse_left = -1;
    int coarse_right = -1;
};

struct PendingSegments {
    std::vector<BuildSegment> segs;
    std::vector<SegExtra> extra;

    void push(BuildSegment s, SegExtra e = {}) {
        segs.push_back(std::move(s));
        extra.push_back(e);
    }
};

// Propagates refined-face labels across edges from seeded faces.
// Crossing a new edge swaps the witness and, when 2-chromatic, swaps the
// witness color inside H; crossing an old edge keeps H and swaps the
// witness between the defining pair.
void propagate_labels(const Subdivision& sub, std::vector<FaceLabel>& labels,
                      std::vector<char>& has_label, const ColoredSiteSet& sites) {
    std::deque<int> queue;
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f)
        if (has_label[f]) queue.push_back(f);
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        const FaceLabel& lf = labels[f];
        for (int h : sub.face_halfedges(f)) {
            const EdgeAttr& attr = sub.attr(h);
            if (attr.is_box()) continue;
            int g = sub.half[sub.twin(h)].face;
            if (g == sub.outer_face)
                throw GeometryMismatch("diagram edge borders the unbounded face");
            FaceLabel lg;
            int other = other_site(attr, lf.assoc_site);
            lg.assoc_site = other;
            lg.colors = lf.colors;
            if (attr.is_new && attr.chromaticity == 2) {
                int drop = sites.sites[lf.assoc_site].color;
                int add = sites.sites[other].color;
                auto it = std::find(lg.colors.begin(), lg.colors.end(), drop);
                if (it == lg.colors.end())
                    throw GeometryMismatch("witness color missing from face color set");
                lg.colors.erase(it);
                lg.colors.insert(std::upper_bound(lg.colors.begin(), lg.colors.end(), add), add);
            }
            if (has_label[g]) {
                if (labels[g].colors != lg.colors || labels[g].assoc_site != lg.assoc_site)
                    throw InconsistentLabels("conflicting labels propagated to a face");
            } else {
                labels[g] = std::move(lg);
                has_label[g] = 1;
                queue.push_back(g);
            }
        }
    }
}

struct WallRecord {
    Point2 a, b;
    EdgeAttr attr;
    int left_assoc = -1;
    int right_assoc = -1;
};

// Collects deduplicated Voronoi walls (and box pieces) of the diagram of
// `subset` on the given side. Wall orientation is canonical (a < b) with
// the owning cells recorded per side. Box pieces keep the owning cell as
// left_assoc.
void collect_cell_walls(const std::vector<Site>& subset, const Box& box, Side side,
                        std::vector<WallRecord>& walls, std::vector<WallRecord>& box_pieces,
                        const ColoredSiteSet& sites) {
    std::map<std::pair<Point2, Point2>, int> index;
    for (int i = 0; i < static_cast<int>(subset.size()); ++i) {
        CellPolygon cell = voronoi_cell(subset, i, box, side);
        if (cell.degenerate()) continue;
        const int owner = subset[i].id;
        const std::size_t sz = cell.pts.size();
        for (std::size_t e = 0; e < sz; ++e) {
            const Point2& p = cell.pts[e];
            const Point2& q = cell.pts[(e + 1) % sz];
            int neighbor = cell.edge_site[e];
            if (neighbor < 0) {
                WallRecord w;
                w.a = p;
                w.b = q;
                w.attr = EdgeAttr{};  // box edge
                w.left_assoc = owner;
                box_pieces.push_back(std::move(w));
                continue;
            }
            bool reversed = q < p;
            std::pair<Point2, Point2> key = reversed ? std::make_pair(q, p)
                                                     : std::make_pair(p, q);
            auto [it, inserted] = index.emplace(key, static_cast<int>(walls.size()));
            if (inserted) {
                WallRecord w;
                w.a = key.first;
                w.b = key.second;
                w.attr = make_edge_attr(owner, neighbor, sites.sites[owner].color,
                                        sites.sites[neighbor].color, true);
                walls.push_back(std::move(w));
            }
            WallRecord& w = walls[it->second];
            (reversed ? w.right_assoc : w.left_assoc) = owner;
        }
    }
}

Subdivision order_one_diagram(const std::vector<Site>& subset, const Box& box, Side side,
                              const ColoredSiteSet& sites) {
    std::vector<WallRecord> walls, box_pieces;
    collect_cell_walls(subset, box, side, walls, box_pieces, sites);

    PendingSegments pending;
    for (const WallRecord& w : walls)
        pending.push(BuildSegment{w.a, w.b, w.attr}, SegExtra{w.left_assoc, w.right_assoc, -1});
    for (const WallRecord& w : box_pieces)
        pending.push(BuildSegment{w.a, w.b, w.attr}, SegExtra{w.left_assoc, -1, -1});

    GlueResult glued = glue_subdivision(pending.segs, box);
    Subdivision& sub = glued.sub;

    std::vector<FaceLabel> labels(sub.faces.size());
    std::vector<char> has_label(sub.faces.size(), 0);
    auto seed = [&](int face, int assoc) {
        if (face == sub.outer_face || assoc < 0) return;
        FaceLabel l;
        l.assoc_site = assoc;
        l.colors = {sites.sites[assoc].color};
        if (has_label[face]) {
            if (labels[face].assoc_site != assoc)
                throw InconsistentLabels("cell wall owners disagree");
            return;
        }
        labels[face] = std::move(l);
        has_label[face] = 1;
    };
    for (std::size_t s = 0; s < pending.segs.size(); ++s) {
        auto [fw, rv] = glued.seg_halfedge[s];
        if (fw >= 0) seed(sub.half[fw].face, pending.extra[s].left_assoc);
        if (rv >= 0) seed(sub.half[rv].face, pending.extra[s].right_assoc);
    }
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f)
        if (f != sub.outer_face && !has_label[f])
            throw GeometryMismatch("unlabeled cell in an order-1 diagram");
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f)
        if (f != sub.outer_face) sub.faces[f].label = labels[f];
    return sub;
}

// Box-boundary interval of a box half-edge: side index and coordinate span.
struct BoxInterval {
    int side;        // 0: y=ymin, 1: x=xmax, 2: y=ymax, 3: x=xmin
    Rational lo, hi; // varying coordinate, lo < hi
};

BoxInterval box_interval(const Subdivision& sub, int h) {
    const Point2& a = sub.vertices[sub.half[h].origin].p;
    const Point2& b = sub.vertices[sub.head(h)].p;
    const Box& box = sub.box;
    BoxInterval iv;
    if (a.y == b.y && a.y == box.ymin) iv.side = 0;
    else if (a.x == b.x && a.x == box.xmax) iv.side = 1;
    else if (a.y == b.y && a.y == box.ymax) iv.side = 2;
    else if (a.x == b.x && a.x == box.xmin) iv.side = 3;
    else throw GeometryMismatch("box edge not on a box side");
    const Rational& va = (iv.side == 0 || iv.side == 2) ? a.x : a.y;
    const Rational& vb = (iv.side == 0 || iv.side == 2) ? b.x : b.y;
    iv.lo = std::min(va, vb);
    iv.hi = std::max(va, vb);
    return iv;
}

bool interval_inside(const BoxInterval& inner, const BoxInterval& outer) {
    return inner.side == outer.side && inner.lo >= outer.lo && inner.hi <= outer.hi;
}

// A maximal run of box half-edges along a face's outer cycle, delimited by
// the defining pairs of the unbounded edges before and after it.
struct BoxArc {
    std::pair<int, int> enter_pair;  // diagram edge leading into the run
    std::pair<int, int> exit_pair;   // diagram edge leaving the run
    std::vector<BoxInterval> intervals;
};

std::vector<BoxArc> face_box_arcs(const Subdivision& sub, int face, bool* full_ring = nullptr) {
    std::vector<BoxArc> arcs;
    if (full_ring) *full_ring = false;
    if (sub.faces[face].outer < 0) return arcs;
    std::vector<int> cycle = sub.cycle_halfedges(sub.faces[face].outer);
    const int sz = static_cast<int>(cycle.size());
    std::vector<char> is_box(sz, 0);
    bool any_diagram = false, any_box = false;
    for (int i = 0; i < sz; ++i) {
        is_box[i] = sub.attr(cycle[i]).is_box();
        any_diagram |= !is_box[i];
        any_box |= static_cast<bool>(is_box[i]);
    }
    if (!any_diagram) {
        // The face's outer boundary is the box ring itself: it owns the
        // entire neighborhood of infinity.
        if (full_ring) *full_ring = any_box;
        return arcs;
    }
    for (int i = 0; i < sz; ++i) {
        if (!is_box[i] || is_box[(i - 1 + sz) % sz]) continue;
        // run starts at i; preceding element is a diagram edge
        BoxArc arc;
        const EdgeAttr& prev = sub.attr(cycle[(i - 1 + sz) % sz]);
        arc.enter_pair = {prev.site_a, prev.site_b};
        int j = i;
        while (is_box[j % sz]) {
            arc.intervals.push_back(box_interval(sub, cycle[j % sz]));
            ++j;
        }
        const EdgeAttr& next = sub.attr(cycle[j % sz]);
        arc.exit_pair = {next.site_a, next.site_b};
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

struct AdvanceInput {
    const Subdivision* coarse = nullptr;
    int order = 0;
    Side side = Side::Min;
    // Min-side structures used only for Side::Max:
    const Subdivision* min_coarse = nullptr;
    const Subdivision* min_refined_next = nullptr;
};

// Precomputed min-side lookup structures for the unbounded-face walk.
struct MinSideArcs {
    using Key = std::tuple<std::vector<int>, std::pair<int, int>, std::pair<int, int>>;
    std::map<Key, std::vector<BoxArc>> arcs;
    std::vector<std::pair<BoxInterval, int>> refined_box;  // interval -> witness

    MinSideArcs(const Subdivision& min_coarse, const Subdivision& min_refined_next) {
        for (int f = 0; f < static_cast<int>(min_coarse.faces.size()); ++f) {
            if (f == min_coarse.outer_face) continue;
            for (BoxArc& arc : face_box_arcs(min_coarse, f))
                arcs[{min_coarse.faces[f].label.colors, arc.enter_pair, arc.exit_pair}]
                    .push_back(std::move(arc));
        }
        for (int h = 0; h < static_cast<int>(min_refined_next.half.size()); ++h) {
            if (!min_refined_next.attr(h).is_box()) continue;
            int f = min_refined_next.half[h].face;
            if (f == min_refined_next.outer_face) continue;
            int assoc = min_refined_next.faces[f].label.assoc_site;
            if (assoc >= 0) refined_box.emplace_back(box_interval(min_refined_next, h), assoc);
        }
    }
};

std::set<int> extra_unbounded_sites(const AdvanceInput& in, int face,
                                    const std::vector<BoxArc>& max_arcs,
                                    const MinSideArcs& lookup) {
    // For each arc of the unbounded max face, locate the min-side coarse
    // face arc with the same color set and delimiting pairs, then collect
    // the witnesses of the refined min faces along that stretch of the box.
    std::set<int> extra;
    const std::vector<int>& want_colors = in.coarse->faces[face].label.colors;

    for (const BoxArc& arc : max_arcs) {
        auto it = lookup.arcs.find({want_colors, arc.enter_pair, arc.exit_pair});
        if (it == lookup.arcs.end())
            throw CorrespondenceFailure("no min-side arc matches an unbounded max face");
        if (it->second.size() > 1)
            throw CorrespondenceFailure("ambiguous min-side arc correspondence");
        const BoxArc& match = it->second.front();
        for (const auto& [iv, assoc] : lookup.refined_box) {
            bool inside = false;
            for (const BoxInterval& span : match.intervals)
                if (interval_inside(iv, span)) {
                    inside = true;
                    break;
                }
            if (inside) extra.insert(assoc);
        }
    }
    return extra;
}

Subdivision advance(const AdvanceInput& in, const ColoredSiteSet& sites) {
    const Subdivision& coarse = *in.coarse;
    PendingSegments pending;

    // Old segments: the full coarse diagram carries over, demoted to old.
    // Either side of an old edge is witnessed by the defining site whose
    // color lies outside that side's coarse color set, which seeds the
    // refined labels directly.
    for (int e = 0; e < coarse.edge_count(); ++e) {
        const EdgeAttr& attr = coarse.attrs[e];
        BuildSegment seg;
        seg.a = coarse.vertices[coarse.half[2 * e].origin].p;
        seg.b = coarse.vertices[coarse.head(2 * e)].p;
        seg.attr = attr;
        seg.attr.is_new = false;
        if (attr.is_box()) {
            seg.attr = EdgeAttr{};
            pending.push(std::move(seg));
            continue;
        }
        SegExtra extra;
        extra.coarse_left = coarse.half[2 * e].face;
        extra.coarse_right = coarse.half[2 * e + 1].face;
        auto outer_of = [&](int face) {
            const auto& colors = coarse.faces[face].label.colors;
            bool a_in = std::binary_search(colors.begin(), colors.end(),
                                           sites.sites[attr.site_a].color);
            return a_in ? attr.site_b : attr.site_a;
        };
        extra.left_assoc = outer_of(extra.coarse_left);
        extra.right_assoc = outer_of(extra.coarse_right);
        pending.push(std::move(seg), extra);
    }

    // Subset diagrams per face, clipped to the face.
    std::optional<MinSideArcs> min_lookup;
    if (in.side == Side::Max) min_lookup.emplace(*in.min_coarse, *in.min_refined_next);
    std::vector<std::set<int>> face_subsets(coarse.faces.size());
    for (int f = 0; f < static_cast<int>(coarse.faces.size()); ++f) {
        if (f == coarse.outer_face) continue;
        std::set<int> ids = boundary_sites(coarse, f, sites);
        if (in.side == Side::Max) {
            bool full_ring = false;
            std::vector<BoxArc> arcs = face_box_arcs(coarse, f, &full_ring);
            if (full_ring) {
                // One color is farthest everywhere: every unbounded face of
                // the next refined min diagram has its mirror inside f.
                for (const auto& [iv, assoc] : min_lookup->refined_box) ids.insert(assoc);
            } else if (!arcs.empty()) {
                std::set<int> extra = extra_unbounded_sites(in, f, arcs, *min_lookup);
                ids.insert(extra.begin(), extra.end());
            }
        }
        if (ids.empty()) throw GeometryMismatch("advancing a face with no boundary sites");
        face_subsets[f] = ids;

        std::vector<Site> subset;
        for (int id : ids) subset.push_back(sites.sites[id]);
        std::vector<WallRecord> walls, box_pieces;
        collect_cell_walls(subset, coarse.box, in.side, walls, box_pieces, sites);

        // Boundary vertices of f; wall pieces are cut only at these points.
        std::vector<Point2> fverts;
        for (int h : coarse.face_halfedges(f))
            fverts.push_back(coarse.vertices[coarse.half[h].origin].p);
        std::sort(fverts.begin(), fverts.end());
        fverts.erase(std::unique(fverts.begin(), fverts.end()), fverts.end());

        for (const WallRecord& w : walls) {
            std::vector<Point2> cuts;
            cuts.push_back(w.a);
            cuts.push_back(w.b);
            const Rational& wx_lo = std::min(w.a.x, w.b.x);
            const Rational& wx_hi = std::max(w.a.x, w.b.x);
            const Rational& wy_lo = std::min(w.a.y, w.b.y);
            const Rational& wy_hi = std::max(w.a.y, w.b.y);
            for (const Point2& p : fverts) {
                if (p.x < wx_lo || p.x > wx_hi || p.y < wy_lo || p.y > wy_hi) continue;
                if (p == w.a || p == w.b) continue;
                if (orient2d(w.a, w.b, p) != 0) continue;
                Rational dot = (p.x - w.a.x) * (w.b.x - w.a.x) + (p.y - w.a.y) * (w.b.y - w.a.y);
                if (sgn(dot) > 0 && dot < squared_distance(w.a, w.b)) cuts.push_back(p);
            }
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                Point2 mid{(cuts[i].x + cuts[i + 1].x) / 2, (cuts[i].y + cuts[i + 1].y) / 2};
                if (!coarse.point_in_face(f, mid)) continue;
                BuildSegment seg;
                seg.a = cuts[i];
                seg.b = cuts[i + 1];
                seg.attr = w.attr;
                pending.push(std::move(seg), SegExtra{w.left_assoc, w.right_assoc, f, f});
            }
        }
    }

    GlueResult glued = glue_subdivision(pending.segs, coarse.box);
    Subdivision& sub = glued.sub;

    std::vector<FaceLabel> labels(sub.faces.size());
    std::vector<char> has_label(sub.faces.size(), 0);
    auto seed = [&](int face, int assoc, int coarse_face) {
        if (face < 0 || face == sub.outer_face || assoc < 0) return;
        FaceLabel l;
        l.assoc_site = assoc;
        l.colors = coarse.faces[coarse_face].label.colors;
        int add = sites.sites[assoc].color;
        if (std::binary_search(l.colors.begin(), l.colors.end(), add))
            throw ColorLeak("witness color already in the coarse face color set");
        l.colors.insert(std::upper_bound(l.colors.begin(), l.colors.end(), add), add);
        if (has_label[face]) {
            if (labels[face].colors != l.colors || labels[face].assoc_site != l.assoc_site)
                throw InconsistentLabels("conflicting seed labels");
            return;
        }
        labels[face] = std::move(l);
        has_label[face] = 1;
    };
    for (std::size_t s = 0; s < pending.segs.size(); ++s) {
        if (pending.extra[s].coarse_left < 0) continue;
        auto [fw, rv] = glued.seg_halfedge[s];
        if (fw >= 0) seed(sub.half[fw].face, pending.extra[s].left_assoc,
                          pending.extra[s].coarse_left);
        if (rv >= 0) seed(sub.half[rv].face, pending.extra[s].right_assoc,
                          pending.extra[s].coarse_right);
    }
    propagate_labels(sub, labels, has_label, sites);

    // Every face incident to a diagram edge is seeded above; anything left
    // can only be a face without diagram edges. Label it by locating the
    // coarse face around an interior point and taking the subset winner.
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f) {
        if (f == sub.outer_face || has_label[f]) continue;
        Point2 x = sub.interior_point(f);
        int host = -1;
        for (int g = 0; g < static_cast<int>(coarse.faces.size()); ++g) {
            if (g == coarse.outer_face) continue;
            if (coarse.point_in_face(g, x)) {
                host = g;
                break;
            }
        }
        if (host < 0) throw GeometryMismatch("refined face not inside any coarse face");
        int best = -1;
        Rational best_d;
        for (int id : face_subsets[host]) {
            Rational d = squared_distance(x, sites.sites[id].position);
            bool better = best < 0 || (in.side == Side::Min ? d < best_d : d > best_d);
            if (better) {
                best = id;
                best_d = d;
            }
        }
        seed(f, best, host);
        propagate_labels(sub, labels, has_label, sites);
    }
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f) {
        if (f == sub.outer_face) continue;
        if (!has_label[f]) throw GeometryMismatch("unlabeled refined face");
        if (static_cast<int>(labels[f].colors.size()) != in.order + 1)
            throw GeometryMismatch("refined face color set has the wrong order");
        sub.faces[f].label = labels[f];
    }
    return sub;
}

}  // namespace

Box choose_clip_box(const ColoredSiteSet& sites) {
    double bound = 1.0;
    Rational exact_bound = 0;
    std::vector<double> xs, ys;
    xs.reserve(sites.n());
    ys.reserve(sites.n());
    for (const Site& s : sites.sites) {
        exact_bound = std::max(
            exact_bound, std::max(rational_abs(s.position.x), rational_abs(s.position.y)));
        xs.push_back(s.position.x.get_d());
        ys.push_back(s.position.y.get_d());
    }
    const int n = sites.n();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                double bx = xs[b] - xs[a], by = ys[b] - ys[a];
                double cx = xs[c] - xs[a], cy = ys[c] - ys[a];
                double det = 2.0 * (bx * cy - by * cx);
                double scale = 2.0 * (std::abs(bx * cy) + std::abs(by * cx));
                double b2 = bx * bx + by * by;
                double c2 = cx * cx + cy * cy;
                if (std::abs(det) > 1e-9 * std::max(scale, 1.0)) {
                    double ux = (cy * b2 - by * c2) / det;
                    double uy = (bx * c2 - cx * b2) / det;
                    double r = std::hypot(ux, uy);
                    double reach = std::max(std::abs(xs[a] + ux), std::abs(ys[a] + uy)) + r;
                    if (std::isfinite(reach)) {
                        bound = std::max(bound, reach * (1.0 + 1e-6));
                        continue;
                    }
                }
                const Point2& pa = sites.sites[a].position;
                const Point2& pb = sites.sites[b].position;
                const Point2& pc = sites.sites[c].position;
                if (orient2d(pa, pb, pc) == 0) continue;
                Circle circ = circumcircle(pa, pb, pc);
                Rational radius_ub(ceil_sqrt(circ.radius_squared));
                Rational reach =
                    std::max(rational_abs(circ.center.x), rational_abs(circ.center.y)) + radius_ub;
                exact_bound = std::max(exact_bound, reach);
            }
    if (!std::isfinite(bound)) throw GeometryError("site coordinates overflow the box estimate");
    Rational limit = Rational(std::ceil(bound)) + 2;
    if (exact_bound + 2 > limit) limit = exact_bound + 2;
    Integer b_int = limit.get_num() / limit.get_den() + 1;
    Rational b(b_int);
    return Box{-b, -b, b, b};
}

Subdivision nearest_voronoi_clipped(const std::vector<Site>& subset, const Box& box) {
    if (subset.empty()) throw GeometryError("empty site subset");
    // order_one_diagram reads colors through the global site table
    ColoredSiteSet scratch;
    scratch.m = 0;
    int max_id = 0;
    for (const Site& s : subset) max_id = std::max(max_id, s.id);
    scratch.sites.resize(max_id + 1);
    for (const Site& s : subset) {
        scratch.sites[s.id] = s;
        scratch.m = std::max(scratch.m, s.color + 1);
    }
    return order_one_diagram(subset, box, Side::Min, scratch);
}

Subdivision farthest_voronoi_clipped(const std::vector<Site>& subset, const Box& box) {
    if (subset.empty()) throw GeometryError("empty site subset");
    ColoredSiteSet scratch;
    scratch.m = 0;
    int max_id = 0;
    for (const Site& s : subset) max_id = std::max(max_id, s.id);
    scratch.sites.resize(max_id + 1);
    for (const Site& s : subset) {
        scratch.sites[s.id] = s;
        scratch.m = std::max(scratch.m, s.color + 1);
    }
    return order_one_diagram(subset, box, Side::Max, scratch);
}

Subdivision coarsen(const Subdivision& refined) {
    std::vector<int> parent(refined.faces.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<char> keep(refined.edge_count(), 0);
    for (int e = 0; e < refined.edge_count(); ++e) {
        const EdgeAttr& attr = refined.attrs[e];
        if (attr.is_box()) {
            keep[e] = 1;
            continue;
        }
        int f1 = refined.half[2 * e].face;
        int f2 = refined.half[2 * e + 1].face;
        const auto& h1 = refined.faces[f1].label.colors;
        const auto& h2 = refined.faces[f2].label.colors;
        if (attr.chromaticity == 1 && h1 != h2)
            throw InconsistentLabels("1-chromatic edge between distinct color sets");
        if (h1 == h2) {
            parent[find(f1)] = find(f2);
        } else {
            keep[e] = 1;
        }
    }

    PendingSegments pending;
    std::vector<std::pair<int, int>> seg_faces;  // merged reps (left, right)
    for (int e = 0; e < refined.edge_count(); ++e) {
        if (!keep[e] || refined.attrs[e].is_box()) continue;
        BuildSegment seg;
        seg.a = refined.vertices[refined.half[2 * e].origin].p;
        seg.b = refined.vertices[refined.head(2 * e)].p;
        seg.attr = refined.attrs[e];
        pending.push(std::move(seg));
        seg_faces.emplace_back(find(refined.half[2 * e].face), find(refined.half[2 * e + 1].face));
    }
    // Synthesize fresh box sides subdivided only at surviving crossings, so
    // crossing points of deleted edges do not linger as stray vertices.
    const Box& box = refined.box;
    for (int side_id = 0; side_id < 4; ++side_id) {
        bool horizontal = side_id == 0 || side_id == 2;
        Rational fixed = side_id == 0 ? box.ymin : side_id == 1 ? box.xmax
                                      : side_id == 2 ? box.ymax : box.xmin;
        std::vector<Rational> cuts = {horizontal ? box.xmin : box.ymin,
                                      horizontal ? box.xmax : box.ymax};
        auto on_side = [&](const Point2& p) {
            return horizontal ? p.y == fixed : p.x == fixed;
        };
        for (const BuildSegment& s : pending.segs) {
            if (s.attr.is_box()) continue;
            for (const Point2* p : {&s.a, &s.b})
                if (on_side(*p)) cuts.push_back(horizontal ? p->x : p->y);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            BuildSegment seg;
            seg.a = horizontal ? Point2{cuts[i], fixed} : Point2{fixed, cuts[i]};
            seg.b = horizontal ? Point2{cuts[i + 1], fixed} : Point2{fixed, cuts[i + 1]};
            seg.attr = EdgeAttr{};
            pending.push(std::move(seg));
            seg_faces.emplace_back(-1, -1);
        }
    }
    GlueResult glued = glue_subdivision(pending.segs, refined.box);
    Subdivision& sub = glued.sub;

    std::vector<char> has_label(sub.faces.size(), 0);
    auto put = [&](int face, int rep) {
        if (face < 0 || face == sub.outer_face || rep < 0) return;
        if (rep == find(refined.outer_face))
            throw GeometryMismatch("coarse face merged with the unbounded face");
        FaceLabel l;
        l.colors = refined.faces[rep].label.colors;
        l.assoc_site = -1;
        if (has_label[face]) {
            if (sub.faces[face].label.colors != l.colors)
                throw InconsistentLabels("merged faces with distinct color sets");
            return;
        }
        sub.faces[face].label = std::move(l);
        has_label[face] = 1;
    };
    for (std::size_t s = 0; s < pending.segs.size(); ++s) {
        auto [fw, rv] = glued.seg_halfedge[s];
        if (fw >= 0) put(sub.half[fw].face, seg_faces[s].first);
        if (rv >= 0) put(sub.half[rv].face, seg_faces[s].second);
    }
    for (int f = 0; f < static_cast<int>(sub.faces.size()); ++f) {
        if (f == sub.outer_face || has_label[f]) continue;
        // No diagram edges at all: the single remaining face keeps the
        // common color set of every refined face.
        bool any_diagram = false;
        for (int h : sub.face_halfedges(f)) any_diagram |= !sub.attr(h).is_box();
        if (any_diagram) throw GeometryMismatch("unlabeled coarse face with diagram edges");
        for (int g = 0; g < static_cast<int>(refined.faces.size()); ++g)
            if (g != refined.outer_face) {
                sub.faces[f].label.colors = refined.faces[g].label.colors;
                break;
            }
        has_label[f] = 1;
    }
    return sub;
}

std::set<int> boundary_sites(const Subdivision& coarse, int face, const ColoredSiteSet& sites) {
    std::set<int> out;
    const std::vector<int>& colors = coarse.faces[face].label.colors;
    for (int h : coarse.face_halfedges(face)) {
        const EdgeAttr& attr = coarse.attr(h);
        if (attr.is_box()) continue;
        bool a_in = std::binary_search(colors.begin(), colors.end(),
                                       sites.sites[attr.site_a].color);
        bool b_in = std::binary_search(colors.begin(), colors.end(),
                                       sites.sites[attr.site_b].color);
        if (a_in == b_in)
            throw ColorLeak("boundary edge pair not split by the face color set");
        out.insert(a_in ? attr.site_b : attr.site_a);
    }
    return out;
}

Subdivision advance_minimal(const Subdivision& coarse_i, int order_i,
                            const ColoredSiteSet& sites) {
    AdvanceInput in;
    in.coarse = &coarse_i;
    in.order = order_i;
    in.side = Side::Min;
    return advance(in, sites);
}

Subdivision advance_maximal(const Subdivision& max_coarse_i, int order_i,
                            const Subdivision& min_coarse_i,
                            const Subdivision& min_refined_next,
                            const ColoredSiteSet& sites) {
    AdvanceInput in;
    in.coarse = &max_coarse_i;
    in.order = order_i;
    in.side = Side::Max;
    in.min_coarse = &min_coarse_i;
    in.min_refined_next = &min_refined_next;
    return advance(in, sites);
}

std::vector<Point2> interior_vertex_points(const Subdivision& sub) {
    std::vector<Point2> pts;
    for (const auto& v : sub.vertices)
        if (!v.on_box) pts.push_back(v.p);
    std::sort(pts.begin(), pts.end());
    return pts;
}

namespace {

OrderStats collect_stats(int order, const Subdivision& refined, const Subdivision& coarse,
                         const std::vector<Point2>& prev_refined_points,
                         const ColoredSiteSet& sites) {
    OrderStats st;
    st.order = order;
    st.refined_faces = static_cast<long long>(refined.faces.size()) - 1;
    st.coarse_faces = static_cast<long long>(coarse.faces.size()) - 1;
    for (int e = 0; e < refined.edge_count(); ++e)
        if (!refined.attrs[e].is_box()) ++st.refined_edges;
    for (int e = 0; e < coarse.edge_count(); ++e)
        if (!coarse.attrs[e].is_box()) ++st.coarse_edges;

    std::vector<std::vector<int>> incident(refined.vertices.size());
    for (int h = 0; h < static_cast<int>(refined.half.size()); ++h)
        if (!refined.attr(h).is_box()) incident[refined.half[h].origin].push_back(h >> 1);
    for (int v = 0; v < static_cast<int>(refined.vertices.size()); ++v) {
        if (refined.vertices[v].on_box) {
            if (!incident[v].empty()) ++st.unbounded_edges;
            continue;
        }
        ++st.refined_vertices;
        if (std::binary_search(prev_refined_points.begin(), prev_refined_points.end(),
                               refined.vertices[v].p))
            continue;
        std::set<int> defining;
        for (int e : incident[v]) {
            defining.insert(refined.attrs[e].site_a);
            defining.insert(refined.attrs[e].site_b);
        }
        std::set<int> colors;
        for (int id : defining) colors.insert(sites.sites[id].color);
        int c = static_cast<int>(colors.size());
        if (c < 1 || c > 3) throw GeometryMismatch("vertex with impossible chromaticity");
        ++st.new_vertices_by_chromaticity[c];
    }
    for (const auto& v : coarse.vertices)
        if (!v.on_box) ++st.coarse_vertices;
    return st;
}

}  // namespace

BuildResult build_sequences(const ColoredSiteSet& sites, int k, const BuildOptions& opts) {
    if (sites.metric != Metric::Euclidean)
        throw MetricMismatch("the iterative builder supports the Euclidean metric only");
    sites.validate();
    if (k < 1 || k > sites.m) throw GeometryError("order k out of range");
    GeneralPositionReport gp = check_general_position(sites);
    if (!gp.ok) throw GeneralPositionViolation("builder requires general position");

    BuildResult out;
    out.box = choose_clip_box(sites);
    out.min_side.side = Side::Min;
    out.max_side.side = Side::Max;

    out.min_side.refined.push_back(nearest_voronoi_clipped(sites.sites, out.box));
    out.min_side.coarse.push_back(coarsen(out.min_side.refined[0]));
    for (int i = 1; i < k; ++i) {
        out.min_side.refined.push_back(advance_minimal(out.min_side.coarse[i - 1], i, sites));
        out.min_side.coarse.push_back(coarsen(out.min_side.refined[i]));
    }

    out.max_side.refined.push_back(farthest_voronoi_clipped(sites.sites, out.box));
    out.max_side.coarse.push_back(coarsen(out.max_side.refined[0]));
    for (int i = 1; i < k; ++i) {
        out.max_side.refined.push_back(advance_maximal(out.max_side.coarse[i - 1], i,
                                                       out.min_side.coarse[i - 1],
                                                       out.min_side.refined[i], sites));
        out.max_side.coarse.push_back(coarsen(out.max_side.refined[i]));
    }

    for (DiagramSequence* seq : {&out.min_side, &out.max_side}) {
        std::vector<Point2> prev;
        for (int i = 0; i < k; ++i) {
            if (opts.check_invariants) {
                seq->refined[i].check_invariants();
                seq->coarse[i].check_invariants();
            }
            seq->stats.push_back(
                collect_stats(i + 1, seq->refined[i], seq->coarse[i], prev, sites));
            prev = interior_vertex_points(seq->refined[i]);
        }
    }
    return out;
}

}  // namespace cvd
