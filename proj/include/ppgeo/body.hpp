#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace ppgeo {

/// Coordinates in R^1 or R^2; the second slot is ignored when n == 1.
using Point = std::array<double, 2>;

inline double dot(const Point& a, const Point& b, int dim) {
    return dim == 1 ? a[0] * b[0] : a[0] * b[0] + a[1] * b[1];
}

struct Box {
    int dim = 1;
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};

    double width(int axis) const { return hi[axis] - lo[axis]; }
    bool operator==(const Box&) const = default;
};

/// A compact convex body with interior: a closed interval (n = 1) or a
/// convex polygon stored as counter-clockwise vertices (n = 2).
class ConvexBody {
public:
    static ConvexBody interval(double lo, double hi);
    /// Any vertex order is accepted; the convex hull is stored CCW.
    static ConvexBody polygon(std::vector<Point> points);
    static ConvexBody rectangle(Point lo, Point hi);
    /// Square [c - r, c + r]^2.
    static ConvexBody square(Point center, double half_width);

    int dim() const { return dim_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /// sup over the body of <p, x>; exact (max over vertices).
    double support(const Point& x) const;
    bool contains(const Point& p, double tol = 0.0) const;
    /// True when a ball of radius `radius` around p lies inside.
    bool contains_ball(const Point& p, double radius) const;
    double volume() const;
    double perimeter() const;
    double diameter() const;
    Box bounding_box() const;
    ConvexBody translated(const Point& c) const;

    bool operator==(const ConvexBody&) const = default;

private:
    ConvexBody(int dim, std::vector<Point> vertices);

    int dim_ = 1;
    std::vector<Point> vertices_;
};

/// P + eps * Q. Exact for intervals; convex hull of pairwise vertex sums for polygons.
ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q, double eps);

/// Free-function form of ConvexBody::support.
inline double support_function(const ConvexBody& body, const Point& x) { return body.support(x); }

} // namespace ppgeo
