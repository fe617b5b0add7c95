#include "ppgeo/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppgeo/errors.hpp"
#include "ppgeo/kernels.hpp"

namespace ppgeo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kConvexTol = 1e-10;

// Lower hull of (nodes[i], values[i]) over finite values, as indices.
std::vector<std::size_t> lower_hull(std::span<const double> nodes, std::span<const double> values, bool keep_collinear) {
    std::vector<std::size_t> hull;
    hull.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (is_singular(values[i])) continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double cr = (nodes[b] - nodes[a]) * (values[i] - values[a]) - (values[b] - values[a]) * (nodes[i] - nodes[a]);
            if (cr < 0.0 || (!keep_collinear && cr == 0.0))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    return hull;
}

double range_scale(std::span<const double> v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : v)
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (!(hi >= lo)) return 1.0;
    return std::max({1.0, hi - lo, std::abs(hi), std::abs(lo)});
}

// Second differences along axes and both diagonals; triples touching +inf skip.
bool grid_convex(std::span<const double> v, int dim, int n) {
    const double tol = kConvexTol * range_scale(v);
    auto ok = [&](double a, double b, double c) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return true;
        return a + c - 2.0 * b >= -tol;
    };
    if (dim == 1) {
        for (int i = 1; i + 1 < n; ++i)
            if (!ok(v[i - 1], v[i], v[i + 1])) return false;
        return true;
    }
    auto at = [&](int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (i > 0 && i + 1 < n && !ok(at(i - 1, j), at(i, j), at(i + 1, j))) return false;
            if (j > 0 && j + 1 < n && !ok(at(i, j - 1), at(i, j), at(i, j + 1))) return false;
            if (i > 0 && j > 0 && i + 1 < n && j + 1 < n) {
                if (!ok(at(i - 1, j - 1), at(i, j), at(i + 1, j + 1))) return false;
                if (!ok(at(i - 1, j + 1), at(i, j), at(i + 1, j - 1))) return false;
            }
        }
    return true;
}

struct CompactDual {
    std::vector<double> px, py, g;
};

CompactDual compact(const DualPotential& g) {
    CompactDual c;
    const auto& grid = *g.grid();
    for (std::size_t k : grid.active()) {
        if (is_singular(g[k])) continue;
        const Point p = grid.node(k);
        c.px.push_back(p[0]);
        c.py.push_back(p[1]);
        c.g.push_back(g[k]);
    }
    return c;
}

// Slope grid spanning the finite differences of a sample, for 2-D biconjugates.
std::vector<double> slope_axis(std::span<const double> v, std::span<const double> coords, int n, int axis, int count) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            const std::size_t a = axis == 0 ? static_cast<std::size_t>(j) * n + i : static_cast<std::size_t>(i) * n + j;
            const std::size_t b = axis == 0 ? a + 1 : a + n;
            if (!std::isfinite(v[a]) || !std::isfinite(v[b])) continue;
            const double s = (v[b] - v[a]) / (coords[i + 1] - coords[i]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    if (!(hi >= lo)) lo = hi = 0.0;
    const double pad = std::max(1e-9, 1e-6 * (hi - lo));
    lo -= pad;
    hi += pad;
    std::vector<double> s(count);
    for (int q = 0; q < count; ++q) s[q] = lo + (hi - lo) * q / (count - 1);
    return s;
}

std::vector<double> biconjugate_2d(std::span<const double> v, std::span<const double> coords_x,
                                   std::span<const double> coords_y, int n) {
    const int m = 4 * n;
    const auto sx = slope_axis(v, coords_x, n, 0, m);
    const auto sy = slope_axis(v, coords_y, n, 1, m);
    std::vector<double> dual(static_cast<std::size_t>(m) * m);
    conjugate_2d(coords_x, coords_y, v, sx, sy, dual);
    std::vector<double> back(v.size());
    conjugate_2d(sx, sy, dual, coords_x, coords_y, back);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!std::isfinite(back[k])) back[k] = kInfinity;
    return back;
}

} // namespace

void conjugate_1d(std::span<const double> nodes, std::span<const double> values, std::span<const double> slopes,
                  std::span<double> out, std::span<std::size_t> argmax) {
    if (nodes.size() != values.size() || slopes.size() != out.size())
        throw StructuralError("conjugate_1d: size mismatch");
    const bool want_arg = !argmax.empty();
    const auto hull = lower_hull(nodes, values, false);
    if (hull.empty()) {
        std::fill(out.begin(), out.end(), kNegInf);
        if (want_arg) std::fill(argmax.begin(), argmax.end(), kNoIndex);
        return;
    }
    std::size_t k = 0;
    for (std::size_t q = 0; q < slopes.size(); ++q) {
        const double s = slopes[q];
        double cur = s * nodes[hull[k]] - values[hull[k]];
        while (k + 1 < hull.size()) {
            const double next = s * nodes[hull[k + 1]] - values[hull[k + 1]];
            if (next > cur) {
                cur = next;
                ++k;
            } else {
                break;
            }
        }
        out[q] = cur;
        if (want_arg) argmax[q] = hull[k];
    }
}

void conjugate_2d(std::span<const double> nodes_x, std::span<const double> nodes_y, std::span<const double> values,
                  std::span<const double> slopes_x, std::span<const double> slopes_y, std::span<double> out,
                  std::span<std::size_t> argmax) {
    const std::size_t nx = nodes_x.size();
    const std::size_t ny = nodes_y.size();
    const std::size_t qx = slopes_x.size();
    const std::size_t qy = slopes_y.size();
    if (values.size() != nx * ny || out.size() != qx * qy) throw StructuralError("conjugate_2d: size mismatch");
    const bool want_arg = !argmax.empty();

    // Stage 1: for each x-node column, transform along y.
    std::vector<double> stage(nx * qy);
    std::vector<std::size_t> stage_arg(want_arg ? nx * qy : 0);
    std::vector<double> col(ny), res(qy);
    std::vector<std::size_t> res_arg(want_arg ? qy : 0);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) col[j] = values[j * nx + i];
        conjugate_1d(nodes_y, col, slopes_y, res, res_arg);
        for (std::size_t q = 0; q < qy; ++q) {
            stage[q * nx + i] = res[q];
            if (want_arg) stage_arg[q * nx + i] = res_arg[q];
        }
    }
    // Stage 2: out(sx, sy) = max_i (sx * x_i + stage(i, sy)).
    std::vector<double> row(nx), res2(qx);
    std::vector<std::size_t> res2_arg(want_arg ? qx : 0);
    for (std::size_t q = 0; q < qy; ++q) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double s = stage[q * nx + i];
            row[i] = s == kNegInf ? kInfinity : -s;
        }
        conjugate_1d(nodes_x, row, slopes_x, res2, res2_arg);
        for (std::size_t r = 0; r < qx; ++r) {
            out[q * qx + r] = res2[r];
            if (want_arg) {
                const std::size_t i = res2_arg[r];
                argmax[q * qx + r] = i == kNoIndex ? kNoIndex : stage_arg[q * nx + i] * nx + i;
            }
        }
    }
}

std::vector<double> lower_hull_1d(std::span<const double> nodes, std::span<const double> values) {
    const auto hull = lower_hull(nodes, values, true);
    std::vector<double> out(nodes.size(), kInfinity);
    if (hull.empty()) return out;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t a = hull[h];
        const std::size_t b = hull[h + 1];
        out[a] = values[a];
        for (std::size_t i = a + 1; i < b; ++i) {
            const double t = (nodes[i] - nodes[a]) / (nodes[b] - nodes[a]);
            out[i] = values[a] + t * (values[b] - values[a]);
        }
    }
    out[hull.back()] = values[hull.back()];
    return out;
}

// ---------------------------------------------------------------------------

PrimalPotential::PrimalPotential(std::shared_ptr<const SpatialGrid> grid, std::vector<double> values,
                                 std::optional<ConvexBody> body, std::string provenance)
    : grid_(std::move(grid)), values_(std::move(values)), body_(std::move(body)), provenance_(std::move(provenance)) {
    if (!grid_) throw StructuralError("primal potential without grid");
    if (values_.size() != grid_->size()) throw StructuralError("primal potential size does not match its grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw ConfigError("primal potential values must be finite");
    convex_ = grid_convex(values_, grid_->dim(), grid_->nodes_per_axis());
}

DualPotential::DualPotential(std::shared_ptr<const MomentGrid> grid, std::vector<double> values, std::string provenance)
    : grid_(std::move(grid)), values_(std::move(values)), provenance_(std::move(provenance)) {
    if (!grid_) throw StructuralError("dual potential without grid");
    if (values_.size() != grid_->size()) throw StructuralError("dual potential size does not match its grid");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!grid_->included(k)) {
            values_[k] = kInfinity;
            continue;
        }
        if (std::isnan(values_[k]) || values_[k] == -kInfinity)
            throw ConfigError("dual potential values must be real or +inf");
        if (is_singular(values_[k]))
            singular_ = true;
        else
            ++finite_count_;
    }
    if (finite_count_ == 0) throw ConfigError("dual potential has no finite node");
    convex_ = grid_convex(values_, grid_->dim(), grid_->nodes_per_axis());
}

DualPotential DualPotential::from_closed_form(std::shared_ptr<const MomentGrid> grid, const ClosedForm& form) {
    std::vector<double> v(grid->size(), kInfinity);
    for (std::size_t k : grid->active()) v[k] = eval_closed_form(form, grid->node(k), grid->dim());
    return DualPotential(std::move(grid), std::move(v), form.id);
}

DualPotential DualPotential::reference(std::shared_ptr<const MomentGrid> grid) {
    std::vector<double> v(grid->size(), 0.0);
    return DualPotential(std::move(grid), std::move(v), "reference");
}

double DualPotential::min_value() const {
    double m = kInfinity;
    for (std::size_t k : grid_->active()) m = std::min(m, values_[k]);
    return m;
}

DualPotential DualPotential::truncated(double cap) const {
    std::vector<double> v = values_;
    for (std::size_t k : grid_->active()) v[k] = std::min(v[k], cap);
    return convexify(DualPotential(grid_, std::move(v), provenance_ + "|cap"));
}

DualPotential DualPotential::shifted(double c) const {
    std::vector<double> v = values_;
    for (std::size_t k : grid_->active())
        if (!is_singular(v[k])) v[k] += c;
    return DualPotential(grid_, std::move(v), provenance_);
}

bool same_grid(const DualPotential& a, const DualPotential& b) {
    return a.grid() == b.grid() || *a.grid() == *b.grid();
}

void require_same_grid(const DualPotential& a, const DualPotential& b, const char* what) {
    if (!same_grid(a, b)) throw StructuralError(std::string(what) + ": potentials live on different moment grids");
}

// ---------------------------------------------------------------------------

DualPotential to_dual(const SpatialFunction& f, std::shared_ptr<const MomentGrid> target, TransformMethod method) {
    const SpatialGrid& sg = *f.grid;
    if (sg.dim() != target->dim()) throw StructuralError("to_dual: dimension mismatch");
    const int n = sg.nodes_per_axis();
    std::vector<double> out(target->size());
    std::vector<std::size_t> arg(target->size(), kNoIndex);

    if (method == TransformMethod::kBruteForce) {
        const auto& kern = kernels::active();
        std::vector<double> xs(sg.size()), ys(sg.size());
        for (std::size_t k = 0; k < sg.size(); ++k) {
            const Point x = sg.node(k);
            xs[k] = x[0];
            ys[k] = x[1];
        }
        for (std::size_t k = 0; k < target->size(); ++k) {
            const Point p = target->node(k);
            out[k] = kern.max_affine(xs.data(), sg.dim() == 2 ? ys.data() : nullptr, f.values.data(), xs.size(), p[0],
                                     p[1], &arg[k]);
        }
    } else if (sg.dim() == 1) {
        conjugate_1d(sg.axis_coords(0), f.values, target->axis_coords(0), out, arg);
    } else {
        conjugate_2d(sg.axis_coords(0), sg.axis_coords(1), f.values, target->axis_coords(0), target->axis_coords(1),
                     out, arg);
    }

    std::vector<std::size_t> flags;
    for (std::size_t k : target->active()) {
        const std::size_t a = arg[k];
        if (a == kNoIndex) continue;
        const int i = static_cast<int>(a % n);
        const int j = static_cast<int>(a / n);
        const bool edge = i == 0 || i == n - 1 || (sg.dim() == 2 && (j == 0 || j == n - 1));
        if (edge) flags.push_back(k);
    }
    DualPotential dual(std::move(target), std::move(out), f.provenance + "*");
    dual.set_boundary_flags(std::move(flags));
    return dual;
}

DualPotential to_dual(const PrimalPotential& u, std::shared_ptr<const MomentGrid> target, TransformMethod method) {
    return to_dual(u.as_function(), std::move(target), method);
}

PrimalPotential to_primal(const DualPotential& g, std::shared_ptr<const SpatialGrid> target, TransformMethod method) {
    const MomentGrid& mg = *g.grid();
    if (mg.dim() != target->dim()) throw StructuralError("to_primal: dimension mismatch");
    std::vector<double> out(target->size());
    if (method == TransformMethod::kBruteForce) {
        const auto c = compact(g);
        const auto& kern = kernels::active();
        for (std::size_t k = 0; k < target->size(); ++k) {
            const Point x = target->node(k);
            out[k] = kern.max_affine(c.px.data(), mg.dim() == 2 ? c.py.data() : nullptr, c.g.data(), c.g.size(), x[0],
                                     x[1], nullptr);
        }
    } else if (mg.dim() == 1) {
        conjugate_1d(mg.axis_coords(0), g.values(), target->axis_coords(0), out);
    } else {
        conjugate_2d(mg.axis_coords(0), mg.axis_coords(1), g.values(), target->axis_coords(0), target->axis_coords(1),
                     out);
    }
    return PrimalPotential(std::move(target), std::move(out), mg.body(), g.provenance() + "*");
}

std::vector<double> evaluate_primal(const DualPotential& g, std::span<const Point> points) {
    const MomentGrid& mg = *g.grid();
    std::vector<double> out(points.size());
    if (points.empty()) return out;
    if (mg.dim() == 1) {
        std::vector<std::size_t> order(points.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        const bool sorted = std::is_sorted(points.begin(), points.end(),
                                           [](const Point& a, const Point& b) { return a[0] < b[0]; });
        if (!sorted)
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
        std::vector<double> qs(points.size()), res(points.size());
        for (std::size_t i = 0; i < order.size(); ++i) qs[i] = points[order[i]][0];
        conjugate_1d(mg.axis_coords(0), g.values(), qs, res);
        for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = res[i];
        return out;
    }
    // Exact sup by rows: each row's lower hull in p2 answers its conjugate at
    // x2 by binary search over edge slopes.
    const int n = mg.nodes_per_axis();
    const auto xs = mg.axis_coords(0);
    const auto ys = mg.axis_coords(1);
    struct Row {
        double p1;
        std::vector<double> p2, v, slope;
    };
    std::vector<Row> rows;
    std::vector<double> line(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) line[j] = g[mg.index(i, j)];
        const auto idx = lower_hull(ys, line, false);
        if (idx.empty()) continue;
        Row r{xs[i], {}, {}, {}};
        for (std::size_t k : idx) {
            r.p2.push_back(ys[k]);
            r.v.push_back(line[k]);
        }
        for (std::size_t k = 1; k < r.p2.size(); ++k)
            r.slope.push_back((r.v[k] - r.v[k - 1]) / (r.p2[k] - r.p2[k - 1]));
        rows.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double x1 = points[k][0];
        const double x2 = points[k][1];
        double best = kNegInf;
        for (const Row& r : rows) {
            const auto m = static_cast<std::size_t>(std::lower_bound(r.slope.begin(), r.slope.end(), x2) - r.slope.begin());
            best = std::max(best, x1 * r.p1 + x2 * r.p2[m] - r.v[m]);
        }
        out[k] = best;
    }
    return out;
}

PrimalPotential convexify(const SpatialFunction& f) {
    const SpatialGrid& sg = *f.grid;
    for (double v : f.values)
        if (!std::isfinite(v)) throw ConfigError("convexify: samples must be finite");
    if (sg.dim() == 1) {
        auto hull = lower_hull_1d(sg.axis_coords(0), f.values);
        return PrimalPotential(f.grid, std::move(hull), std::nullopt, f.provenance + "|hull");
    }
    const int n = sg.nodes_per_axis();
    auto hull = biconjugate_2d(f.values, sg.axis_coords(0), sg.axis_coords(1), n);
    return PrimalPotential(f.grid, std::move(hull), std::nullopt, f.provenance + "|hull");
}

DualPotential convexify(const DualPotential& g) {
    const MomentGrid& mg = *g.grid();
    if (mg.dim() == 1) {
        auto hull = lower_hull_1d(mg.axis_coords(0), g.values());
        return DualPotential(g.grid(), std::move(hull), g.provenance() + "|hull");
    }
    auto hull = biconjugate_2d(g.values(), mg.axis_coords(0), mg.axis_coords(1), mg.nodes_per_axis());
    // The biconjugate never exceeds the input; masked nodes stay outside.
    for (std::size_t k = 0; k < hull.size(); ++k)
        if (!mg.included(k)) hull[k] = kInfinity;
    return DualPotential(g.grid(), std::move(hull), g.provenance() + "|hull");
}

} // namespace ppgeo
