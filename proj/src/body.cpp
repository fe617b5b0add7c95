#include "ppgeo/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppgeo/errors.hpp"

namespace ppgeo {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; returns CCW hull without collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace

ConvexBody::ConvexBody(int dim, std::vector<Point> vertices) : dim_(dim), vertices_(std::move(vertices)) {}

ConvexBody ConvexBody::interval(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("interval body needs finite lo < hi");
    return ConvexBody(1, {Point{lo, 0.0}, Point{hi, 0.0}});
}

ConvexBody ConvexBody::polygon(std::vector<Point> points) {
    for (const auto& p : points)
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw ConfigError("polygon vertex is not finite");
    auto hull = convex_hull(std::move(points));
    if (hull.size() < 3) throw ConfigError("polygon body has empty interior");
    ConvexBody body(2, std::move(hull));
    if (!(body.volume() > 0.0)) throw ConfigError("polygon body has empty interior");
    return body;
}

ConvexBody ConvexBody::rectangle(Point lo, Point hi) {
    if (!(lo[0] < hi[0]) || !(lo[1] < hi[1])) throw ConfigError("rectangle needs lo < hi on both axes");
    return polygon({lo, Point{hi[0], lo[1]}, hi, Point{lo[0], hi[1]}});
}

ConvexBody ConvexBody::square(Point center, double half_width) {
    return rectangle({center[0] - half_width, center[1] - half_width},
                     {center[0] + half_width, center[1] + half_width});
}

double ConvexBody::support(const Point& x) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) best = std::max(best, dot(v, x, dim_));
    return best;
}

bool ConvexBody::contains(const Point& p, double tol) const {
    if (dim_ == 1) return p[0] >= vertices_[0][0] - tol && p[0] <= vertices_[1][0] + tol;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % m];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (cross(a, b, p) < -tol * len) return false;
    }
    return true;
}

bool ConvexBody::contains_ball(const Point& p, double radius) const {
    if (dim_ == 1) return p[0] - radius > vertices_[0][0] && p[0] + radius < vertices_[1][0];
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % m];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (cross(a, b, p) / len <= radius) return false;
    }
    return true;
}

double ConvexBody::volume() const {
    if (dim_ == 1) return vertices_[1][0] - vertices_[0][0];
    double twice = 0.0;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % m];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * twice;
}

double ConvexBody::perimeter() const {
    if (dim_ == 1) return 2.0;
    double total = 0.0;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % m];
        total += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return total;
}

double ConvexBody::diameter() const {
    double best = 0.0;
    for (const auto& a : vertices_)
        for (const auto& b : vertices_) best = std::max(best, std::hypot(a[0] - b[0], a[1] - b[1]));
    return best;
}

Box ConvexBody::bounding_box() const {
    Box box;
    box.dim = dim_;
    box.lo = vertices_.front();
    box.hi = vertices_.front();
    for (const auto& v : vertices_)
        for (int a = 0; a < dim_; ++a) {
            box.lo[a] = std::min(box.lo[a], v[a]);
            box.hi[a] = std::max(box.hi[a], v[a]);
        }
    if (dim_ == 1) box.lo[1] = box.hi[1] = 0.0;
    return box;
}

ConvexBody ConvexBody::translated(const Point& c) const {
    auto verts = vertices_;
    for (auto& v : verts) {
        v[0] += c[0];
        if (dim_ == 2) v[1] += c[1];
    }
    return ConvexBody(dim_, std::move(verts));
}

ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q, double eps) {
    if (p.dim() != q.dim()) throw StructuralError("minkowski_sum: dimension mismatch");
    if (!(eps >= 0.0)) throw ConfigError("minkowski_sum: eps must be nonnegative");
    if (eps == 0.0) return p;
    if (p.dim() == 1) {
        return ConvexBody::interval(p.vertices()[0][0] + eps * q.vertices()[0][0],
                                    p.vertices()[1][0] + eps * q.vertices()[1][0]);
    }
    std::vector<Point> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) sums.push_back({a[0] + eps * b[0], a[1] + eps * b[1]});
    return ConvexBody::polygon(std::move(sums));
}

} // namespace ppgeo
