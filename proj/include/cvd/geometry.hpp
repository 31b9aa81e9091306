#ifndef CVD_GEOMETRY_HPP
#define CVD_GEOMETRY_HPP

#include <compare>

#include "cvd/rational.hpp"

namespace cvd {

struct Point2 {
    Rational x;
    Rational y;

    Point2() = default;
    Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
    // Lexicographic (x, y); total order used for canonical vertex keys.
    bool operator<(const Point2& o) const {
        int cx = cmp(x, o.x);
        if (cx != 0) return cx < 0;
        return cmp(y, o.y) < 0;
    }
};

struct Point3 {
    Rational x;
    Rational y;
    Rational z;

    bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
};

// Sign of det |q-p, r-p|; +1 means p,q,r in counterclockwise order.
int orient2d(const Point2& p, const Point2& q, const Point2& r);

// Sign of det (b-a, c-a, d-a); +1 for a positively oriented tetrahedron.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// (x, y) -> (x, y, x^2 + y^2), the standard paraboloid lifting.
Point3 lift(const Point2& p);

Rational squared_distance(const Point2& a, const Point2& b);

// Chebyshev distance max(|dx|, |dy|).
Rational linf_distance(const Point2& a, const Point2& b);

}  // namespace cvd

#endif
