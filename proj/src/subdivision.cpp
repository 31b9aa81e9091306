#include "cvd/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace cvd {

namespace {

struct Dir {
    Rational dx, dy;
};

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int dir_half(const Dir& d) {
    int sy = sgn(d.dy);
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return sgn(d.dx) > 0 ? 0 : 1;
}

bool dir_less(const Dir& a, const Dir& b) {
    int ha = dir_half(a), hb = dir_half(b);
    if (ha != hb) return ha < hb;
    return sgn(a.dx * b.dy - a.dy * b.dx) > 0;
}

// Twice the signed area of a closed vertex chain.
Rational cycle_area2(const std::vector<Point2>& pts) {
    Rational area = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2& p = pts[i];
        const Point2& q = pts[(i + 1) % pts.size()];
        area += p.x * q.y - p.y * q.x;
    }
    return area;
}

// Strict point-in-polygon by crossing parity. The point must not lie on the
// chain; callers guarantee that. Division-free: the edge crosses the
// rightward ray iff it straddles p.y and p sees it on the matching side.
bool point_in_chain(const Point2& p, const std::vector<Point2>& pts) {
    bool inside = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2& a = pts[i];
        const Point2& b = pts[(i + 1) % pts.size()];
        bool a_below = a.y <= p.y;
        bool b_below = b.y <= p.y;
        if (a_below == b_below) continue;
        int o = orient2d(a, b, p);
        int dy = cmp(b.y, a.y);
        if (o != 0 && o == dy) inside = !inside;
    }
    return inside;
}

bool on_segment_interior(const Point2& p, const Point2& a, const Point2& b) {
    if (orient2d(a, b, p) != 0) return false;
    if (p == a || p == b) return false;
    Rational dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    Rational len2 = squared_distance(a, b);
    return sgn(dot) > 0 && dot < len2;
}

}  // namespace

std::vector<int> Subdivision::cycle_halfedges(int start) const {
    std::vector<int> out;
    int h = start;
    do {
        out.push_back(h);
        h = half[h].next;
    } while (h != start);
    return out;
}

std::vector<int> Subdivision::face_halfedges(int face) const {
    std::vector<int> out;
    const Face& f = faces[face];
    if (f.outer >= 0) out = cycle_halfedges(f.outer);
    for (int hole : f.holes) {
        std::vector<int> cyc = cycle_halfedges(hole);
        out.insert(out.end(), cyc.begin(), cyc.end());
    }
    return out;
}

Point2 Subdivision::interior_point(int face) const {
    const Face& f = faces[face];
    if (f.is_outer_face) throw GeometryError("interior point of the unbounded face");
    int h0 = f.outer;
    const Point2& a = vertices[half[h0].origin].p;
    const Point2& b = vertices[head(h0)].p;
    Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    Dir normal{a.y - b.y, b.x - a.x};  // left normal of a->b

    std::optional<Rational> t_min;
    for (int h : face_halfedges(face)) {
        if (h == h0 || h == twin(h0)) continue;
        const Point2& p = vertices[half[h].origin].p;
        const Point2& q = vertices[head(h)].p;
        // Solve mid + t*normal = p + s*(q - p).
        Rational ex = q.x - p.x, ey = q.y - p.y;
        Rational det = normal.dx * (-ey) - normal.dy * (-ex);
        if (sgn(det) == 0) {
            // Parallel; if collinear with the ray, endpoints are candidate hits.
            for (const Point2* w : {&p, &q}) {
                Rational rx = w->x - mid.x, ry = w->y - mid.y;
                if (sgn(rx * normal.dy - ry * normal.dx) != 0) continue;
                Rational t = sgn(normal.dx) != 0 ? rx / normal.dx : ry / normal.dy;
                if (sgn(t) > 0 && (!t_min || t < *t_min)) t_min = t;
            }
            continue;
        }
        Rational bx = p.x - mid.x, by = p.y - mid.y;
        Rational t = (bx * (-ey) - by * (-ex)) / det;
        Rational s = (normal.dx * by - normal.dy * bx) / det;
        if (sgn(t) > 0 && sgn(s) >= 0 && s <= 1 && (!t_min || t < *t_min)) t_min = t;
    }
    if (!t_min) throw GeometryMismatch("face boundary not re-hit from interior ray");
    Rational t = *t_min / 2;
    return Point2{mid.x + t * normal.dx, mid.y + t * normal.dy};
}

std::vector<Point2> Subdivision::interior_samples(int face, int count) const {
    std::set<Point2> seen;
    std::vector<Point2> out;
    auto push = [&](const Point2& p) {
        if (static_cast<int>(out.size()) >= count) return;
        if (seen.insert(p).second) out.push_back(p);
    };
    Point2 anchor = interior_point(face);
    push(anchor);

    std::vector<int> boundary = face_halfedges(face);
    // Fan centroids from the anchor, filtered to the face.
    for (int h : boundary) {
        if (static_cast<int>(out.size()) >= count) break;
        const Point2& a = vertices[half[h].origin].p;
        const Point2& b = vertices[head(h)].p;
        Point2 centroid{(anchor.x + a.x + b.x) / 3, (anchor.y + a.y + b.y) / 3};
        if (point_in_face(face, centroid)) push(centroid);
    }
    // Inward ray points at varied depths from each boundary edge.
    static const int kNum[6] = {1, 1, 3, 1, 7, 5};
    static const int kDen[6] = {2, 4, 4, 8, 8, 8};
    for (int depth = 0; depth < 6 && static_cast<int>(out.size()) < count; ++depth) {
        for (int h : boundary) {
            if (static_cast<int>(out.size()) >= count) break;
            const Point2& a = vertices[half[h].origin].p;
            const Point2& b = vertices[head(h)].p;
            Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
            Dir normal{a.y - b.y, b.x - a.x};
            // Distance to first re-crossing along the inward normal.
            std::optional<Rational> t_min;
            for (int g : boundary) {
                if (g == h || g == twin(h)) continue;
                const Point2& p = vertices[half[g].origin].p;
                const Point2& q = vertices[head(g)].p;
                Rational ex = q.x - p.x, ey = q.y - p.y;
                Rational det = normal.dx * (-ey) - normal.dy * (-ex);
                if (sgn(det) == 0) {
                    for (const Point2* w : {&p, &q}) {
                        Rational rx = w->x - mid.x, ry = w->y - mid.y;
                        if (sgn(rx * normal.dy - ry * normal.dx) != 0) continue;
                        Rational t = sgn(normal.dx) != 0 ? rx / normal.dx : ry / normal.dy;
                        if (sgn(t) > 0 && (!t_min || t < *t_min)) t_min = t;
                    }
                    continue;
                }
                Rational bx = p.x - mid.x, by = p.y - mid.y;
                Rational t = (bx * (-ey) - by * (-ex)) / det;
                Rational s = (normal.dx * by - normal.dy * bx) / det;
                if (sgn(t) > 0 && sgn(s) >= 0 && s <= 1 && (!t_min || t < *t_min)) t_min = t;
            }
            if (!t_min) continue;
            Rational t = *t_min * kNum[depth] / kDen[depth];
            push(Point2{mid.x + t * normal.dx, mid.y + t * normal.dy});
        }
    }
    return out;
}

bool Subdivision::point_in_face(int face, const Point2& p) const {
    const Face& f = faces[face];
    auto chain_points = [&](int start) {
        std::vector<Point2> pts;
        for (int h : cycle_halfedges(start)) pts.push_back(vertices[half[h].origin].p);
        return pts;
    };
    if (!f.is_outer_face) {
        if (!point_in_chain(p, chain_points(f.outer))) return false;
    }
    for (int hole : f.holes)
        if (point_in_chain(p, chain_points(hole))) return false;
    return true;
}

void Subdivision::check_invariants() const {
    const int H = static_cast<int>(half.size());
    for (int h = 0; h < H; ++h) {
        if (half[half[h].next].prev != h || half[half[h].prev].next != h)
            throw GeometryMismatch("next/prev not inverse");
        if (half[half[h].next].origin != head(h))
            throw GeometryMismatch("next half-edge does not continue at head");
        if (half[h].face < 0) throw GeometryMismatch("half-edge without a face");
    }
    std::vector<char> seen(H, 0);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const Face& f = faces[fi];
        std::vector<int> starts = f.holes;
        if (f.outer >= 0) starts.push_back(f.outer);
        if (f.is_outer_face && f.outer >= 0)
            throw GeometryMismatch("outer face must not have an outer cycle");
        for (int s : starts)
            for (int h : cycle_halfedges(s)) {
                if (half[h].face != static_cast<int>(fi))
                    throw GeometryMismatch("cycle half-edge in the wrong face");
                if (seen[h]) throw GeometryMismatch("half-edge in two cycles");
                seen[h] = 1;
            }
    }
    for (int h = 0; h < H; ++h)
        if (!seen[h]) throw GeometryMismatch("half-edge in no face cycle");

    // Generalized Euler relation.
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int h = 0; h < H; h += 2) parent[find(half[h].origin)] = find(head(h));
    std::set<int> roots;
    for (std::size_t v = 0; v < vertices.size(); ++v) roots.insert(find(static_cast<int>(v)));
    long long V = static_cast<long long>(vertices.size());
    long long E = static_cast<long long>(attrs.size());
    long long F = static_cast<long long>(faces.size());
    long long C = static_cast<long long>(roots.size());
    if (V - E + F != 1 + C) throw GeometryMismatch("Euler relation violated");
}

GlueResult glue_subdivision(const std::vector<BuildSegment>& segments, const Box& box) {
    GlueResult result;
    Subdivision& sub = result.sub;
    sub.box = box;
    result.seg_halfedge.assign(segments.size(), {-1, -1});

    // Canonical segment list with deduplication of twin-shared walls.
    struct Canonical {
        Point2 a, b;
        EdgeAttr attr;
        std::vector<std::pair<int, bool>> sources;  // (input index, reversed?)
    };
    std::map<std::pair<Point2, Point2>, int> canon_index;
    std::vector<Canonical> canon;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const BuildSegment& s = segments[i];
        if (s.a == s.b) throw GeometryMismatch("zero-length segment");
        bool reversed = s.b < s.a;
        std::pair<Point2, Point2> key =
            reversed ? std::make_pair(s.b, s.a) : std::make_pair(s.a, s.b);
        auto [it, inserted] = canon_index.emplace(key, static_cast<int>(canon.size()));
        if (inserted) {
            canon.push_back({key.first, key.second, s.attr, {}});
        } else {
            const EdgeAttr& prev = canon[it->second].attr;
            if (prev.site_a != s.attr.site_a || prev.site_b != s.attr.site_b ||
                prev.is_new != s.attr.is_new)
                throw GeometryMismatch("conflicting attributes on a shared segment");
        }
        canon[it->second].sources.emplace_back(static_cast<int>(i), reversed);
    }

    // Split box-boundary segments at vertices that land on them. Diagram
    // segments are never subdivided: new edges of one order meet older
    // boundaries only at existing vertices.
    std::set<Point2> endpoint_set;
    for (const Canonical& c : canon) {
        endpoint_set.insert(c.a);
        endpoint_set.insert(c.b);
    }
    // Endpoints grouped per box side line, keyed by the varying coordinate.
    std::array<std::set<Rational>, 4> side_coords;  // ymin, xmax, ymax, xmin
    for (const Point2& p : endpoint_set) {
        if (p.y == box.ymin) side_coords[0].insert(p.x);
        if (p.x == box.xmax) side_coords[1].insert(p.y);
        if (p.y == box.ymax) side_coords[2].insert(p.x);
        if (p.x == box.xmin) side_coords[3].insert(p.y);
    }
    auto box_side_of = [&](const Point2& a, const Point2& b) -> int {
        if (a.y == b.y && a.y == box.ymin) return 0;
        if (a.x == b.x && a.x == box.xmax) return 1;
        if (a.y == b.y && a.y == box.ymax) return 2;
        if (a.x == b.x && a.x == box.xmin) return 3;
        throw GeometryMismatch("box segment not on a box side");
    };
    struct FinalSeg {
        Point2 a, b;
        EdgeAttr attr;
        int canon_id;
    };
    std::vector<FinalSeg> finals;
    for (std::size_t ci = 0; ci < canon.size(); ++ci) {
        const Canonical& c = canon[ci];
        if (!c.attr.is_box()) {
            finals.push_back({c.a, c.b, c.attr, static_cast<int>(ci)});
            continue;
        }
        int side = box_side_of(c.a, c.b);
        bool horizontal = side == 0 || side == 2;
        Rational lo = horizontal ? std::min(c.a.x, c.b.x) : std::min(c.a.y, c.b.y);
        Rational hi = horizontal ? std::max(c.a.x, c.b.x) : std::max(c.a.y, c.b.y);
        const auto& coords = side_coords[side];
        std::vector<Rational> cuts = {lo};
        for (auto it = coords.upper_bound(lo); it != coords.end() && *it < hi; ++it)
            cuts.push_back(*it);
        cuts.push_back(hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Point2 pa = horizontal ? Point2{cuts[i], c.a.y} : Point2{c.a.x, cuts[i]};
            Point2 pb = horizontal ? Point2{cuts[i + 1], c.a.y} : Point2{c.a.x, cuts[i + 1]};
            finals.push_back({pa, pb, c.attr, cuts.size() == 2 ? static_cast<int>(ci) : -1});
        }
    }

    const bool audit = finals.size() < 1000;
    if (audit) {
        for (const FinalSeg& f : finals)
            for (const Point2& p : endpoint_set)
                if (on_segment_interior(p, f.a, f.b))
                    throw GeometryMismatch("T-junction: endpoint inside a segment");
    }

    std::map<Point2, int> vertex_ids;
    auto vid = [&](const Point2& p) {
        auto [it, inserted] = vertex_ids.emplace(p, static_cast<int>(sub.vertices.size()));
        if (inserted) sub.vertices.push_back({p, box.on_boundary(p)});
        return it->second;
    };

    sub.half.resize(2 * finals.size());
    sub.attrs.resize(finals.size());
    std::vector<std::vector<int>> outgoing;
    for (std::size_t e = 0; e < finals.size(); ++e) {
        int va = vid(finals[e].a);
        int vb = vid(finals[e].b);
        sub.attrs[e] = finals[e].attr;
        sub.half[2 * e].origin = va;
        sub.half[2 * e + 1].origin = vb;
        if (static_cast<int>(outgoing.size()) < static_cast<int>(sub.vertices.size()))
            outgoing.resize(sub.vertices.size());
        outgoing[va].push_back(static_cast<int>(2 * e));
        outgoing[vb].push_back(static_cast<int>(2 * e + 1));
        if (finals[e].canon_id >= 0)
            for (auto [src, reversed] : canon[finals[e].canon_id].sources)
                result.seg_halfedge[src] =
                    reversed ? std::make_pair(static_cast<int>(2 * e + 1), static_cast<int>(2 * e))
                             : std::make_pair(static_cast<int>(2 * e), static_cast<int>(2 * e + 1));
    }
    outgoing.resize(sub.vertices.size());

    auto direction = [&](int h) {
        const Point2& o = sub.vertices[sub.half[h].origin].p;
        const Point2& d = sub.vertices[sub.head(h)].p;
        return Dir{d.x - o.x, d.y - o.y};
    };
    std::vector<int> ring_pos(sub.half.size(), -1);
    for (std::size_t v = 0; v < outgoing.size(); ++v) {
        auto& ring = outgoing[v];
        std::sort(ring.begin(), ring.end(),
                  [&](int a, int b) { return dir_less(direction(a), direction(b)); });
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            Dir da = direction(ring[i]);
            Dir db = direction(ring[i + 1]);
            if (!dir_less(da, db) && !dir_less(db, da))
                throw GeometryMismatch("overlapping edges at a vertex");
        }
        for (std::size_t i = 0; i < ring.size(); ++i) ring_pos[ring[i]] = static_cast<int>(i);
    }
    for (int h = 0; h < static_cast<int>(sub.half.size()); ++h) {
        int t = sub.twin(h);
        const auto& ring = outgoing[sub.half[t].origin];
        int idx = ring_pos[t];
        int nxt = ring[(idx - 1 + static_cast<int>(ring.size())) % ring.size()];
        sub.half[h].next = nxt;
        sub.half[nxt].prev = h;
    }

    // Decompose into cycles and classify by orientation.
    struct Cycle {
        int start;
        Rational area2;
        std::vector<Point2> points;
        int component;
    };
    std::vector<int> parent(sub.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < finals.size(); ++e)
        parent[find(sub.half[2 * e].origin)] = find(sub.half[2 * e + 1].origin);

    std::vector<Cycle> ccw_cycles, cw_cycles;
    std::vector<char> visited(sub.half.size(), 0);
    for (int h0 = 0; h0 < static_cast<int>(sub.half.size()); ++h0) {
        if (visited[h0]) continue;
        Cycle cyc;
        cyc.start = h0;
        int h = h0;
        do {
            visited[h] = 1;
            cyc.points.push_back(sub.vertices[sub.half[h].origin].p);
            h = sub.half[h].next;
        } while (h != h0);
        cyc.area2 = cycle_area2(cyc.points);
        cyc.component = find(sub.half[h0].origin);
        int s = sgn(cyc.area2);
        if (s == 0) throw GeometryMismatch("degenerate zero-area cycle");
        (s > 0 ? ccw_cycles : cw_cycles).push_back(std::move(cyc));
    }

    for (const Cycle& cyc : ccw_cycles) {
        int fid = static_cast<int>(sub.faces.size());
        Subdivision::Face face;
        face.outer = cyc.start;
        sub.faces.push_back(std::move(face));
        for (int h : sub.cycle_halfedges(cyc.start)) sub.half[h].face = fid;
    }

    sub.outer_face = static_cast<int>(sub.faces.size());
    Subdivision::Face outer;
    outer.is_outer_face = true;
    sub.faces.push_back(std::move(outer));

    int unassigned_to_outer = 0;
    for (const Cycle& cyc : cw_cycles) {
        const Point2& probe = *std::min_element(cyc.points.begin(), cyc.points.end());
        int best = -1;
        for (std::size_t i = 0; i < ccw_cycles.size(); ++i) {
            if (ccw_cycles[i].component == cyc.component) continue;
            if (!point_in_chain(probe, ccw_cycles[i].points)) continue;
            if (best < 0 || ccw_cycles[i].area2 < ccw_cycles[best].area2)
                best = static_cast<int>(i);
        }
        int fid = best >= 0 ? best : sub.outer_face;
        if (best < 0) ++unassigned_to_outer;
        sub.faces[fid].holes.push_back(cyc.start);
        for (int h : sub.cycle_halfedges(cyc.start)) sub.half[h].face = fid;
    }
    if (unassigned_to_outer != 1)
        throw GeometryMismatch("expected exactly the box ring outside all faces");
    return result;
}

}  // namespace cvd
