#include "ppgeo/monge_ampere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "ppgeo/errors.hpp"

namespace ppgeo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_finite(const DualPotential& u, const char* what) {
    if (u.singular()) throw RequiresTruncationError(std::string(what) + ": dual has +inf nodes; truncate first");
}

std::vector<Point> atom_locations(const AtomicMeasure& mu) {
    std::vector<Point> pts;
    pts.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) pts.push_back(a.location);
    return pts;
}

struct Sample {
    Point p;
    double value;
};

// Distance from p along axis direction `dir` to the boundary of the body,
// at most one cell.
double reach(const MomentGrid& g, const Point& p, int axis, int dir) {
    const double h = g.h(axis);
    auto at = [&](double t) {
        Point q = p;
        q[axis] += dir * t;
        return q;
    };
    if (g.body().contains(at(h), 1e-12)) return h;
    double lo = 0.0, hi = h;
    for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (lo + hi);
        (g.body().contains(at(m), 1e-12) ? lo : hi) = m;
    }
    return lo;
}

// Dual values on the boundary of P, extrapolated linearly from the two
// nearest included nodes along each axis (and both axes at corners).
std::vector<Sample> boundary_samples(const DualPotential& u) {
    const MomentGrid& g = *u.grid();
    const int n = g.nodes_per_axis();
    const int dim = g.dim();
    auto lookup = [&](int i, int j) -> std::optional<std::size_t> {
        if (i < 0 || i >= n || j < 0 || j >= (dim == 2 ? n : 1)) return std::nullopt;
        const std::size_t k = g.index(i, j);
        if (!g.included(k) || is_singular(u[k])) return std::nullopt;
        return k;
    };
    std::vector<Sample> out;
    for (std::size_t k : g.active()) {
        if (is_singular(u[k])) continue;
        const int i = static_cast<int>(k % static_cast<std::size_t>(n));
        const int j = dim == 2 ? static_cast<int>(k / static_cast<std::size_t>(n)) : 0;
        const Point p = g.node(k);
        std::array<double, 2> dist{0.0, 0.0}, rise{0.0, 0.0};
        std::array<int, 2> open{0, 0};
        for (int a = 0; a < dim; ++a)
            for (int dir : {-1, 1}) {
                const int di = a == 0 ? dir : 0;
                const int dj = a == 1 ? dir : 0;
                if (lookup(i + di, j + dj)) continue;
                const double s = reach(g, p, a, dir);
                if (s <= 0.0) continue;
                const auto inner = lookup(i - di, j - dj);
                const double slope = inner ? (u[k] - u[*inner]) / g.h(a) : 0.0;
                Point q = p;
                q[a] += dir * s;
                out.push_back({q, u[k] + s * slope});
                open[a] = dir;
                dist[a] = s;
                rise[a] = s * slope;
            }
        if (dim == 2 && open[0] != 0 && open[1] != 0) {
            const Point q{p[0] + open[0] * dist[0], p[1] + open[1] * dist[1]};
            if (g.body().contains(q, 1e-12)) out.push_back({q, u[k] + rise[0] + rise[1]});
        }
    }
    return out;
}

// Primal of the dual with its boundary samples added, so the sup runs over
// all of P rather than the hull of the cell centres.
std::vector<double> primal_to_boundary(const DualPotential& u, std::span<const Point> pts) {
    auto out = evaluate_primal(u, pts);
    const auto extra = boundary_samples(u);
    const int dim = u.grid()->dim();
    for (std::size_t k = 0; k < pts.size(); ++k)
        for (const Sample& b : extra) out[k] = std::max(out[k], dot(pts[k], b.p, dim) - b.value);
    return out;
}

// Second difference along one axis (or diagonal) scaled by 1/h^2.
struct Hessian2 {
    double xx, yy, xy;
};

Hessian2 hessian_at(std::span<const double> v, const SpatialGrid& g, int i, int j) {
    const int n = g.nodes_per_axis();
    auto at = [&](int a, int b) { return v[static_cast<std::size_t>(b) * n + a]; };
    const double hx = g.h(0);
    const double hy = g.h(1);
    const double c = at(i, j);
    Hessian2 h;
    h.xx = (at(i - 1, j) + at(i + 1, j) - 2.0 * c) / (hx * hx);
    h.yy = (at(i, j - 1) + at(i, j + 1) - 2.0 * c) / (hy * hy);
    h.xy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * hx * hy);
    return h;
}

} // namespace

std::vector<Point> dual_gradient(const DualPotential& u) {
    const MomentGrid& g = *u.grid();
    const int n = g.nodes_per_axis();
    std::vector<Point> grad(g.size(), Point{kNan, kNan});
    auto finite_at = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= n || j >= n) return false;
        const std::size_t k = g.index(i, j);
        return g.included(k) && !is_singular(u[k]);
    };
    auto derivative = [&](int i, int j, int axis) {
        const int di = axis == 0 ? 1 : 0;
        const int dj = axis == 1 ? 1 : 0;
        const bool lo = finite_at(i - di, j - dj);
        const bool hi = finite_at(i + di, j + dj);
        const double h = g.h(axis);
        const double c = u[g.index(i, j)];
        if (lo && hi) return (u[g.index(i + di, j + dj)] - u[g.index(i - di, j - dj)]) / (2.0 * h);
        if (hi) return (u[g.index(i + di, j + dj)] - c) / h;
        if (lo) return (c - u[g.index(i - di, j - dj)]) / h;
        return 0.0;
    };
    for (std::size_t k : g.active()) {
        if (is_singular(u[k])) continue;
        const int i = static_cast<int>(g.dim() == 1 ? k : k % n);
        const int j = static_cast<int>(g.dim() == 1 ? 0 : k / n);
        if (g.dim() == 1)
            grad[k] = {derivative(i, 0, 0), 0.0};
        else
            grad[k] = {derivative(i, j, 0), derivative(i, j, 1)};
    }
    return grad;
}

AtomicMeasure ma_atomic(const DualPotential& u) {
    const MomentGrid& g = *u.grid();
    const auto grad = dual_gradient(u);
    AtomicMeasure mu;
    mu.dim = g.dim();
    mu.provenance = "MA(" + u.provenance() + ")";
    mu.atoms.reserve(g.active().size());
    for (std::size_t k : g.active()) {
        if (is_singular(u[k])) continue;
        mu.atoms.push_back({grad[k], g.weight(k)});
        mu.total_mass += g.weight(k);
    }
    return mu;
}

std::vector<double> hessian_determinant(const SpatialFunction& f) {
    const SpatialGrid& g = *f.grid;
    const int n = g.nodes_per_axis();
    std::vector<double> out(g.size(), 0.0);
    if (g.dim() == 1) {
        const double h2 = g.h() * g.h();
        for (int i = 1; i + 1 < n; ++i) out[i] = (f.values[i - 1] + f.values[i + 1] - 2.0 * f.values[i]) / h2;
        return out;
    }
    for (int j = 1; j + 1 < n; ++j)
        for (int i = 1; i + 1 < n; ++i) {
            const Hessian2 h = hessian_at(f.values, g, i, j);
            out[g.index(i, j)] = h.xx * h.yy - h.xy * h.xy;
        }
    return out;
}

std::vector<double> hessian_max_eigenvalue(const SpatialFunction& f) {
    const SpatialGrid& g = *f.grid;
    const int n = g.nodes_per_axis();
    std::vector<double> out(g.size(), 0.0);
    if (g.dim() == 1) {
        const double h2 = g.h() * g.h();
        for (int i = 1; i + 1 < n; ++i) out[i] = (f.values[i - 1] + f.values[i + 1] - 2.0 * f.values[i]) / h2;
        return out;
    }
    for (int j = 1; j + 1 < n; ++j)
        for (int i = 1; i + 1 < n; ++i) {
            const Hessian2 h = hessian_at(f.values, g, i, j);
            const double mean = 0.5 * (h.xx + h.yy);
            const double diff = 0.5 * (h.xx - h.yy);
            out[g.index(i, j)] = mean + std::sqrt(diff * diff + h.xy * h.xy);
        }
    return out;
}

DensityField ma_density(const PrimalPotential& u, double reference_volume) {
    DensityField rho;
    rho.grid = u.grid();
    rho.density = hessian_determinant(u.as_function());
    const double cell = rho.grid->cell_volume();
    for (double& d : rho.density) {
        if (d < 0.0) {
            rho.clamped_mass += -d * cell;
            d = 0.0;
        }
        rho.total += d * cell;
    }
    if (rho.clamped_mass > 1e-6 * reference_volume)
        throw NumericalError("ma_density: clamped negative mass " + std::to_string(rho.clamped_mass) +
                             " exceeds 1e-6 * vol");
    return rho;
}

AtomicMeasure ma_mixed_pair(const DualPotential& u, const DualPotential& v, std::shared_ptr<const SpatialGrid> spatial,
                            double negative_tol) {
    require_same_grid(u, v, "ma_mixed_pair");
    if (u.grid()->dim() != 2) throw ConfigError("ma_mixed_pair: only defined for n = 2");
    require_finite(u, "ma_mixed_pair");
    require_finite(v, "ma_mixed_pair");
    std::vector<Point> nodes(spatial->size());
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = spatial->node(k);
    auto a = primal_to_boundary(u, nodes);
    auto b = primal_to_boundary(v, nodes);
    std::vector<double> mid(nodes.size());
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (a[k] + b[k]);
    const auto du = hessian_determinant(SpatialFunction{spatial, std::move(a), "u"});
    const auto dv = hessian_determinant(SpatialFunction{spatial, std::move(b), "v"});
    const auto dm = hessian_determinant(SpatialFunction{spatial, mid, "mid"});
    const double cell = spatial->cell_volume();
    AtomicMeasure mu;
    mu.dim = 2;
    mu.provenance = "MA(" + u.provenance() + "," + v.provenance() + ")";
    for (std::size_t k = 0; k < mid.size(); ++k) {
        const double d = 2.0 * dm[k] - 0.5 * du[k] - 0.5 * dv[k];
        if (d == 0.0) continue;
        if (d < 0.0) {
            mu.negative_mass += -d * cell;
            continue;
        }
        mu.atoms.push_back({spatial->node(k), d * cell});
        mu.total_mass += d * cell;
    }
    if (mu.negative_mass > negative_tol)
        throw PolarizationError("ma_mixed_pair: negative mixed mass " + std::to_string(mu.negative_mass) +
                                " beyond tolerance");
    return mu;
}

double integrate_abs_pow(const AtomicMeasure& mu, const DualPotential& u, const DualPotential& v, double p) {
    const auto pts = atom_locations(mu);
    const auto uu = evaluate_primal(u, pts);
    const auto vv = evaluate_primal(v, pts);
    double sum = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) sum += mu.atoms[k].mass * std::pow(std::abs(uu[k] - vv[k]), p);
    return sum;
}

namespace {

// Integral of u - V over mu, with V the exact support function of P.
double integrate_difference(const AtomicMeasure& mu, const DualPotential& u) {
    const auto pts = atom_locations(mu);
    const auto uu = primal_to_boundary(u, pts);
    const ConvexBody& body = u.body();
    double sum = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) sum += mu.atoms[k].mass * (uu[k] - body.support(pts[k]));
    return sum;
}

} // namespace

double energy(const DualPotential& u, std::shared_ptr<const SpatialGrid> spatial) {
    require_finite(u, "energy");
    const DualPotential ref = DualPotential::reference(u.grid());
    const double inv_vol = 1.0 / u.body().volume();
    const double top = integrate_difference(ma_atomic(u), u);
    const double bottom = integrate_difference(ma_atomic(ref), u);
    if (u.grid()->dim() == 1) return 0.5 * inv_vol * (top + bottom);
    if (!spatial) throw ConfigError("energy: n = 2 needs a spatial grid for the mixed term");
    const double vol = u.body().volume();
    const AtomicMeasure mixed = ma_mixed_pair(u, ref, spatial, 1e-2 * vol);
    const double middle = integrate_difference(mixed, u);
    return inv_vol * (top + middle + bottom) / 3.0;
}

double i_p(const DualPotential& u, const DualPotential& v, double p) {
    require_same_grid(u, v, "i_p");
    if (!(p >= 1.0)) throw ConfigError("i_p: p must be >= 1");
    require_finite(u, "i_p");
    require_finite(v, "i_p");
    return integrate_abs_pow(ma_atomic(u), u, v, p) + integrate_abs_pow(ma_atomic(v), u, v, p);
}

std::vector<double> bin_measure(const AtomicMeasure& mu, const SpatialGrid& grid) {
    std::vector<double> out(grid.size(), 0.0);
    const int n = grid.nodes_per_axis();
    auto nearest = [&](double x, int axis) {
        const double r = std::round((x - grid.box().lo[axis]) / grid.h(axis));
        return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(n - 1)));
    };
    for (const auto& a : mu.atoms) {
        const int i = nearest(a.location[0], 0);
        const int j = grid.dim() == 2 ? nearest(a.location[1], 1) : 0;
        out[grid.index(i, j)] += a.mass;
    }
    return out;
}

std::vector<double> density_masses(const DensityField& rho) {
    std::vector<double> out(rho.density.size());
    const double cell = rho.grid->cell_volume();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = rho.density[k] * cell;
    return out;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw StructuralError("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s;
}

} // namespace ppgeo
