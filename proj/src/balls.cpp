#include "cvd/balls.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace cvd {

PointClass classify_point(const Circle& c, const Point2& p) {
    Rational d2 = squared_distance(c.center, p);
    int s = cmp(d2, c.radius_squared);
    if (s < 0) return PointClass::Inside;
    if (s == 0) return PointClass::OnBoundary;
    return PointClass::Outside;
}

PointClass classify_point(const SquareBall& b, const Point2& p) {
    Rational d = linf_distance(b.center, p);
    int s = cmp(d, b.radius);
    if (s < 0) return PointClass::Inside;
    if (s == 0) return PointClass::OnBoundary;
    return PointClass::Outside;
}

Circle circumcircle(const Point2& p, const Point2& q, const Point2& r) {
    if (orient2d(p, q, r) == 0) throw CollinearInput("circumcircle of collinear points");
    // Center solves 2(q-p).c = |q|^2-|p|^2, 2(r-p).c = |r|^2-|p|^2.
    Rational ax = 2 * (q.x - p.x), ay = 2 * (q.y - p.y);
    Rational bx = 2 * (r.x - p.x), by = 2 * (r.y - p.y);
    Rational c1 = (q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y);
    Rational c2 = (r.x * r.x + r.y * r.y) - (p.x * p.x + p.y * p.y);
    Rational det = ax * by - ay * bx;
    Point2 center{(c1 * by - ay * c2) / det, (ax * c2 - c1 * bx) / det};
    return Circle{center, squared_distance(center, p)};
}

namespace {

// Side codes for the square solver. A point assigned to a side contributes
// one linear equation in the unknowns (cx, cy, r).
enum Side4 { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

struct Row {
    // a*cx + b*cy + c*r = rhs
    Rational a, b, c, rhs;
};

Row side_equation(Side4 side, const Point2& p) {
    switch (side) {
        case kLeft: return Row{1, 0, -1, p.x};
        case kRight: return Row{1, 0, 1, p.x};
        case kBottom: return Row{0, 1, -1, p.y};
        case kTop: return Row{0, 1, 1, p.y};
    }
    return Row{};
}

struct Solve3 {
    int rank = 0;
    bool consistent = true;
    std::array<Rational, 3> particular{};  // one solution (cx, cy, r)
    std::array<Rational, 3> direction{};   // nullspace basis when rank == 2
};

Solve3 solve_rows(std::array<Row, 3> rows) {
    // Gaussian elimination on the 3x4 augmented matrix.
    std::array<std::array<Rational, 4>, 3> m;
    for (int i = 0; i < 3; ++i) m[i] = {rows[i].a, rows[i].b, rows[i].c, rows[i].rhs};
    Solve3 out;
    int pivot_row = 0;
    std::array<int, 3> pivot_col{-1, -1, -1};
    for (int col = 0; col < 3 && pivot_row < 3; ++col) {
        int found = -1;
        for (int r = pivot_row; r < 3; ++r)
            if (sgn(m[r][col]) != 0) { found = r; break; }
        if (found < 0) continue;
        std::swap(m[pivot_row], m[found]);
        for (int r = 0; r < 3; ++r) {
            if (r == pivot_row || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col] / m[pivot_row][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[pivot_row][c];
        }
        pivot_col[pivot_row] = col;
        ++pivot_row;
    }
    out.rank = pivot_row;
    for (int r = out.rank; r < 3; ++r)
        if (sgn(m[r][3]) != 0) out.consistent = false;
    if (!out.consistent) return out;

    std::array<bool, 3> is_pivot{false, false, false};
    for (int r = 0; r < out.rank; ++r) is_pivot[pivot_col[r]] = true;
    // Particular solution: free variables set to 0.
    for (int r = out.rank - 1; r >= 0; --r) {
        int pc = pivot_col[r];
        Rational v = m[r][3];
        for (int c = pc + 1; c < 3; ++c) v -= m[r][c] * out.particular[c];
        out.particular[pc] = v / m[r][pc];
    }
    if (out.rank == 2) {
        int free_col = -1;
        for (int c = 0; c < 3; ++c)
            if (!is_pivot[c]) free_col = c;
        out.direction[free_col] = 1;
        for (int r = out.rank - 1; r >= 0; --r) {
            int pc = pivot_col[r];
            Rational v = 0;
            for (int c = pc + 1; c < 3; ++c) v -= m[r][c] * out.direction[c];
            out.direction[pc] = v / m[r][pc];
        }
    }
    return out;
}

bool on_boundary_all(const SquareBall& b, const Point2& p, const Point2& q, const Point2& r) {
    return classify_point(b, p) == PointClass::OnBoundary &&
           classify_point(b, q) == PointClass::OnBoundary &&
           classify_point(b, r) == PointClass::OnBoundary;
}

// Interval of the line parameter t subject to linear inequalities.
struct ParamInterval {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    bool empty = false;

    // alpha + beta*t >= 0 (or > 0 when strict)
    void add(const Rational& alpha, const Rational& beta, bool strict) {
        if (empty) return;
        int sb = sgn(beta);
        if (sb == 0) {
            int sa = sgn(alpha);
            if (sa < 0 || (strict && sa == 0)) empty = true;
            return;
        }
        Rational bound = -alpha / beta;
        if (sb > 0) {
            if (!lo || bound > *lo || (bound == *lo && strict)) {
                lo = bound;
                lo_strict = strict;
            }
        } else {
            if (!hi || bound < *hi || (bound == *hi && strict)) {
                hi = bound;
                hi_strict = strict;
            }
        }
        if (lo && hi) {
            int c = cmp(*lo, *hi);
            if (c > 0 || (c == 0 && (lo_strict || hi_strict))) empty = true;
        }
    }

    bool unbounded() const { return !empty && (!lo || !hi); }
    bool single_point() const { return !empty && lo && hi && *lo == *hi; }
    bool positive_length() const { return !empty && lo && hi && *lo < *hi; }
};

}  // namespace

std::vector<SquareBall> squares_through_three(const Point2& p, const Point2& q, const Point2& r) {
    if (p == q || q == r || p == r)
        throw GeometryError("squares_through_three requires distinct points");
    const std::array<Point2, 3> pts{p, q, r};
    std::vector<SquareBall> found;
    auto emit = [&](const SquareBall& b) {
        if (sgn(b.radius) <= 0) return;
        if (!on_boundary_all(b, p, q, r)) return;
        for (const SquareBall& other : found)
            if (other.center == b.center && other.radius == b.radius) return;
        found.push_back(b);
    };

    for (int assignment = 0; assignment < 64; ++assignment) {
        std::array<Side4, 3> sides{static_cast<Side4>(assignment & 3),
                                   static_cast<Side4>((assignment >> 2) & 3),
                                   static_cast<Side4>((assignment >> 4) & 3)};
        std::array<Row, 3> rows;
        for (int i = 0; i < 3; ++i) rows[i] = side_equation(sides[i], pts[i]);
        Solve3 sol = solve_rows(rows);
        if (!sol.consistent) continue;
        if (sol.rank == 3) {
            SquareBall b{Point2{sol.particular[0], sol.particular[1]}, sol.particular[2]};
            emit(b);
            continue;
        }
        if (sol.rank <= 1) {
            // Three collinear same-side points: any large enough square fits.
            throw DegenerateConfiguration("square family of rank <= 1 through triple");
        }
        // rank == 2: solutions (cx, cy, r) = particular + t * direction.
        // Constrain by r > 0 and by each point lying within its side span.
        ParamInterval iv;
        iv.add(sol.particular[2], sol.direction[2], /*strict=*/true);
        for (int i = 0; i < 3; ++i) {
            const Point2& w = pts[i];
            bool horizontal_span = (sides[i] == kBottom || sides[i] == kTop);
            // span constraint: |coord - center_coord| <= r
            int axis = horizontal_span ? 0 : 1;
            Rational wc = horizontal_span ? w.x : w.y;
            // wc - (center + (-r)) >= 0  and  (center + r) - wc >= 0
            iv.add(wc - sol.particular[axis] + sol.particular[2],
                   -sol.direction[axis] + sol.direction[2], false);
            iv.add(sol.particular[axis] + sol.particular[2] - wc,
                   sol.direction[axis] + sol.direction[2], false);
        }
        if (iv.empty) continue;
        if (iv.positive_length() || iv.unbounded())
            throw DegenerateConfiguration("one-parameter square family through triple");
        if (iv.single_point()) {
            Rational t = *iv.lo;
            SquareBall b{Point2{sol.particular[0] + t * sol.direction[0],
                                sol.particular[1] + t * sol.direction[1]},
                         sol.particular[2] + t * sol.direction[2]};
            emit(b);
        }
    }
    return found;
}

}  // namespace cvd
