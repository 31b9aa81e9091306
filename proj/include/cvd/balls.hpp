#ifndef CVD_BALLS_HPP
#define CVD_BALLS_HPP

#include <vector>

#include "cvd/errors.hpp"
#include "cvd/geometry.hpp"

namespace cvd {

enum class PointClass { Inside, OnBoundary, Outside };

struct Circle {
    Point2 center;
    Rational radius_squared;
};

// Axis-aligned square as a Chebyshev ball: radius is half the side length.
struct SquareBall {
    Point2 center;
    Rational radius;
};

PointClass classify_point(const Circle& c, const Point2& p);
PointClass classify_point(const SquareBall& b, const Point2& p);

// The circle through three non-collinear points, exact.
// Throws CollinearInput when orient2d(p, q, r) == 0.
Circle circumcircle(const Point2& p, const Point2& q, const Point2& r);

// All axis-aligned squares whose boundary passes through p, q, r.
// Resolved by assigning each point to one of the four sides (64 cases),
// solving the resulting linear system and verifying the side constraints.
// Throws DegenerateConfiguration when a one-parameter family of squares
// exists (possible only when two of the points share a coordinate).
std::vector<SquareBall> squares_through_three(const Point2& p, const Point2& q, const Point2& r);

}  // namespace cvd

#endif
