#ifndef CVD_SUBDIVISION_HPP
#define CVD_SUBDIVISION_HPP

#include <optional>
#include <vector>

#include "cvd/errors.hpp"
#include "cvd/geometry.hpp"

namespace cvd {

struct Box {
    Rational xmin, ymin, xmax, ymax;

    bool contains_strict(const Point2& p) const {
        return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
    }
    bool on_boundary(const Point2& p) const {
        bool x_edge = (p.x == xmin || p.x == xmax) && p.y >= ymin && p.y <= ymax;
        bool y_edge = (p.y == ymin || p.y == ymax) && p.x >= xmin && p.x <= xmax;
        return x_edge || y_edge;
    }
};

struct EdgeAttr {
    int site_a = -1;  // defining pair with site_a < site_b; -1,-1 on box edges
    int site_b = -1;
    bool is_new = true;
    int chromaticity = 0;  // 1 or 2 for diagram edges, 0 for box edges

    bool is_box() const { return site_a < 0; }
};

struct FaceLabel {
    std::vector<int> colors;  // sorted color set H
    int assoc_site = -1;      // witness site in refined diagrams, else -1
};

// Planar subdivision of the clip box. Faces may be multiply connected:
// each holds one outer cycle plus any number of hole cycles. One designated
// outer face lies outside the box.
struct Subdivision {
    struct Vertex {
        Point2 p;
        bool on_box = false;
    };
    struct HalfEdge {
        int origin = -1;
        int next = -1;
        int prev = -1;
        int face = -1;
    };
    struct Face {
        FaceLabel label;
        int outer = -1;  // a half-edge of the outer cycle; -1 for the outer face
        std::vector<int> holes;
        bool is_outer_face = false;
    };

    std::vector<Vertex> vertices;
    std::vector<HalfEdge> half;   // twin of h is h^1
    std::vector<EdgeAttr> attrs;  // attrs[h/2]
    std::vector<Face> faces;
    Box box;
    int outer_face = -1;

    int twin(int h) const { return h ^ 1; }
    int head(int h) const { return half[twin(h)].origin; }
    const EdgeAttr& attr(int h) const { return attrs[h >> 1]; }
    int edge_count() const { return static_cast<int>(attrs.size()); }

    std::vector<int> cycle_halfedges(int start) const;
    // All boundary half-edges of a face, outer cycle first.
    std::vector<int> face_halfedges(int face) const;

    // A point strictly inside the face, found by stepping inward from a
    // boundary edge midpoint to halfway before the first re-crossing.
    Point2 interior_point(int face) const;

    // Up to `count` distinct strict interior points spread over the face.
    std::vector<Point2> interior_samples(int face, int count) const;

    bool point_in_face(int face, const Point2& p) const;

    // Structural audit: twin/next/prev wiring, cycle closure, face cycle
    // consistency, and the Euler relation V - E + F = 1 + C with C the
    // number of connected components of the edge graph.
    void check_invariants() const;
};

// Input segment for subdivision construction. Segments must be pairwise
// non-crossing and may share only endpoints; segments lying on the box
// boundary are split automatically at vertices of other segments.
struct BuildSegment {
    Point2 a, b;
    EdgeAttr attr;
};

struct GlueResult {
    Subdivision sub;
    // For every unsplit input segment: half-edge directed a->b (face on the
    // left of a->b is that half-edge's face); {-1,-1} if the segment was
    // split or deduplicated into an opposite orientation.
    std::vector<std::pair<int, int>> seg_halfedge;  // (forward, reverse)
};

GlueResult glue_subdivision(const std::vector<BuildSegment>& segments, const Box& box);

}  // namespace cvd

#endif
