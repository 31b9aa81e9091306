#include "cvd/geometry.hpp"

namespace cvd {

int orient2d(const Point2& p, const Point2& q, const Point2& r) {
    Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return sgn(det);
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    Rational bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
    Rational cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
    Rational dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
    Rational det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
    return sgn(det);
}

Point3 lift(const Point2& p) { return Point3{p.x, p.y, p.x * p.x + p.y * p.y}; }

Rational squared_distance(const Point2& a, const Point2& b) {
    Rational dx = a.x - b.x;
    Rational dy = a.y - b.y;
    return dx * dx + dy * dy;
}

Rational linf_distance(const Point2& a, const Point2& b) {
    Rational dx = abs(a.x - b.x);
    Rational dy = abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

}  // namespace cvd
