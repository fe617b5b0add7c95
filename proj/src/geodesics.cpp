#include "ppgeo/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ppgeo/errors.hpp"
#include "ppgeo/kernels.hpp"

namespace ppgeo {

namespace {

DualPotential interpolate(const DualPotential& a, const DualPotential& b, double t) {
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    std::vector<double> out(a.values().size());
    kernels::active().lerp(a.values().data(), b.values().data(), out.size(), t, out.data());
    return DualPotential(a.grid(), std::move(out), "geodesic");
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

GeodesicCurve::GeodesicCurve(DualPotential u0, DualPotential u1, int samples)
    : u0_(std::move(u0)), u1_(std::move(u1)), samples_(samples) {
    require_same_grid(u0_, u1_, "geodesic");
    if (samples_ < 2) throw ConfigError("geodesic: need at least 2 time samples");
    if (u0_.singular() || u1_.singular())
        throw RequiresTruncationError("geodesic: endpoints must have finite duals; truncate first");
    cache_.reserve(samples_ + 1);
    for (int k = 0; k <= samples_; ++k) cache_.push_back(interpolate(u0_, u1_, sample_time(k)));
}

DualPotential GeodesicCurve::at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("geodesic: t must lie in [0, 1]");
    return interpolate(u0_, u1_, t);
}

std::vector<double> velocity(const GeodesicCurve& curve, int end) {
    if (end != 0 && end != 1) throw ConfigError("velocity: end must be 0 or 1");
    const auto& g = *curve.start().grid();
    std::vector<double> d(g.size(), 0.0);
    for (std::size_t k : g.active()) d[k] = curve.end()[k] - curve.start()[k];
    return d;
}

SpatialVelocity velocity_spatial(const GeodesicCurve& curve, int end, std::span<const double> t_steps,
                                 std::shared_ptr<const SpatialGrid> grid, double tol) {
    if (end != 0 && end != 1) throw ConfigError("velocity_spatial: end must be 0 or 1");
    if (t_steps.size() < 2) throw ConfigError("velocity_spatial: need at least two time steps");
    for (std::size_t s = 0; s < t_steps.size(); ++s) {
        if (!(t_steps[s] > 0.0 && t_steps[s] <= 1.0)) throw ConfigError("velocity_spatial: steps must lie in (0, 1]");
        if (s > 0 && !(t_steps[s] < t_steps[s - 1])) throw ConfigError("velocity_spatial: steps must decrease");
    }
    const DualPotential& base = end == 0 ? curve.start() : curve.end();
    const PrimalPotential u_base = to_primal(base, grid);
    const std::size_t n = grid->size();

    SpatialVelocity out;
    out.quotients.resize(t_steps.size());
    for (std::size_t s = 0; s < t_steps.size(); ++s) {
        const double t = t_steps[s];
        const PrimalPotential ut = to_primal(curve.at(end == 0 ? t : 1.0 - t), grid);
        auto& q = out.quotients[s];
        q.resize(n);
        for (std::size_t k = 0; k < n; ++k) q[k] = (ut[k] - u_base[k]) / t;
    }

    // Tie detection: spread of the dual maximiser set at the endpoint.
    const MomentGrid& mg = *base.grid();
    const int mn = mg.nodes_per_axis();
    out.tie.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const Point x = grid->node(k);
        const double level = u_base[k];
        const double slack = 1e-12 * std::max(1.0, std::abs(level));
        int lo[2] = {mn, mn}, hi[2] = {-1, -1};
        for (std::size_t j : mg.active()) {
            if (is_singular(base[j])) continue;
            const Point p = mg.node(j);
            if (dot(p, x, mg.dim()) - base[j] < level - slack) continue;
            const int idx[2] = {static_cast<int>(mg.dim() == 1 ? j : j % mn), static_cast<int>(mg.dim() == 1 ? 0 : j / mn)};
            for (int a = 0; a < mg.dim(); ++a) {
                lo[a] = std::min(lo[a], idx[a]);
                hi[a] = std::max(hi[a], idx[a]);
            }
        }
        for (int a = 0; a < mg.dim(); ++a)
            if (hi[a] - lo[a] > 3) out.tie[k] = 1;
        out.tie_count += out.tie[k];
    }

    for (std::size_t s = 1; s < t_steps.size(); ++s)
        for (std::size_t k = 0; k < n; ++k) {
            if (out.tie[k]) continue;
            const double rise = out.quotients[s][k] - out.quotients[s - 1][k];
            out.monotonicity_violation = std::max(out.monotonicity_violation, rise);
        }
    if (out.monotonicity_violation > tol)
        throw ConvexityViolation("velocity_spatial: difference quotients are not monotone in t");

    const std::size_t last = t_steps.size() - 1;
    const double t1 = t_steps[last];
    const double t2 = t_steps[last - 1];
    std::vector<double> lim(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double q1 = out.quotients[last][k];
        const double q2 = out.quotients[last - 1][k];
        lim[k] = q1 - (q2 - q1) * t1 / (t2 - t1);
    }
    out.limit = SpatialFunction{grid, std::move(lim), "velocity"};
    return out;
}

CurveReport curve_checks(const GeodesicCurve& curve, std::shared_ptr<const SpatialGrid> grid) {
    const int m = curve.samples();
    const std::size_t n = grid->size();
    const int np = grid->nodes_per_axis();
    const int dim = grid->dim();
    const MomentGrid& mg = *curve.start().grid();
    std::vector<std::vector<double>> u(m + 1, std::vector<double>(n));
    std::vector<std::vector<std::size_t>> arg(m + 1, std::vector<std::size_t>(n));
    for (int k = 0; k <= m; ++k) {
        const auto& dual = curve.sample(k);
        if (dim == 1)
            conjugate_1d(mg.axis_coords(0), dual.values(), grid->axis_coords(0), u[k], arg[k]);
        else
            conjugate_2d(mg.axis_coords(0), mg.axis_coords(1), dual.values(), grid->axis_coords(0),
                         grid->axis_coords(1), u[k], arg[k]);
    }
    const auto speed = velocity(curve, 0);
    // Space-time gradient at a node: (p*, -d(p*)).
    auto gradient = [&](int i, int j, int k) {
        const std::size_t a = arg[k][static_cast<std::size_t>(j) * np + i];
        const Point p = mg.node(a);
        return std::array<double, 3>{p[0], dim == 2 ? p[1] : -speed[a], -speed[a]};
    };

    CurveReport r;
    const double dt = 1.0 / m;
    r.h = dt;
    for (int a = 0; a < dim; ++a) r.h = std::max(r.h, grid->h(a));

    for (std::size_t j : curve.start().grid()->active())
        r.lipschitz_bound = std::max(r.lipschitz_bound, std::abs(curve.end()[j] - curve.start()[j]));

    for (int k = 0; k <= m; ++k) {
        const double t = curve.sample_time(k);
        for (std::size_t i = 0; i < n; ++i) {
            const double chord = (1.0 - t) * u[0][i] + t * u[m][i];
            r.chord_violation = std::max(r.chord_violation, u[k][i] - chord);
        }
        for (int l = k + 1; l <= m; ++l) {
            const double span = curve.sample_time(l) - t;
            for (std::size_t i = 0; i < n; ++i)
                r.lipschitz_measured = std::max(r.lipschitz_measured, std::abs(u[l][i] - u[k][i]) / span);
        }
    }

    // Space-time second differences. Steps are (di, dj, dk) in node units.
    std::vector<std::array<int, 3>> dirs;
    if (dim == 1) {
        dirs = {{1, 0, 0}, {0, 0, 1}, {1, 0, 1}, {1, 0, -1}};
    } else {
        dirs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, -1, 0},
                {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
    }
    auto at = [&](int i, int j, int k) { return u[k][static_cast<std::size_t>(j) * np + i]; };
    const int jmax = dim == 1 ? 1 : np;
    for (int k = 0; k <= m; ++k)
        for (int j = 0; j < jmax; ++j)
            for (int i = 0; i < np; ++i)
                for (const auto& d : dirs) {
                    const int i0 = i - d[0], i1 = i + d[0];
                    const int j0 = j - d[1], j1 = j + d[1];
                    const int k0 = k - d[2], k1 = k + d[2];
                    if (std::min(i0, i1) < 0 || std::max(i0, i1) >= np) continue;
                    if (std::min(k0, k1) < 0 || std::max(k0, k1) > m) continue;
                    if (dim == 2 && (std::min(j0, j1) < 0 || std::max(j0, j1) >= np)) continue;
                    const double second = at(i0, j0, k0) + at(i1, j1, k1) - 2.0 * at(i, j, k);
                    const double viol = std::max(0.0, -second);
                    r.joint_convexity_violation = std::max(r.joint_convexity_violation, viol);
                    if (d[0] == 0 && d[1] == 0) r.t_convexity_violation = std::max(r.t_convexity_violation, viol);
                }

    // Space-time Hessian determinant at interior nodes.
    const double hx = grid->h(0);
    const double hy = dim == 2 ? grid->h(1) : 1.0;
    const double cell = (dim == 1 ? hx : hx * hy) * dt;
    for (int k = 1; k < m; ++k)
        for (int j = (dim == 2 ? 1 : 0); j < (dim == 2 ? np - 1 : 1); ++j)
            for (int i = 1; i + 1 < np; ++i) {
                const double c = at(i, j, k);
                const double uxx = (at(i - 1, j, k) + at(i + 1, j, k) - 2 * c) / (hx * hx);
                const double utt = (at(i, j, k - 1) + at(i, j, k + 1) - 2 * c) / (dt * dt);
                const double uxt =
                    (at(i + 1, j, k + 1) - at(i + 1, j, k - 1) - at(i - 1, j, k + 1) + at(i - 1, j, k - 1)) / (4 * hx * dt);
                double det;
                if (dim == 1) {
                    det = uxx * utt - uxt * uxt;
                } else {
                    const double uyy = (at(i, j - 1, k) + at(i, j + 1, k) - 2 * c) / (hy * hy);
                    const double uxy =
                        (at(i + 1, j + 1, k) - at(i + 1, j - 1, k) - at(i - 1, j + 1, k) + at(i - 1, j - 1, k)) /
                        (4 * hx * hy);
                    const double uyt =
                        (at(i, j + 1, k + 1) - at(i, j + 1, k - 1) - at(i, j - 1, k + 1) + at(i, j - 1, k - 1)) /
                        (4 * hy * dt);
                    det = det3({{{uxx, uxy, uxt}, {uxy, uyy, uyt}, {uxt, uyt, utt}}});
                }
                r.hrma_residual += std::abs(det) * cell;

                // Jacobian of the gradient map by central differences.
                const auto gxp = gradient(i + 1, j, k), gxm = gradient(i - 1, j, k);
                const auto gtp = gradient(i, j, k + 1), gtm = gradient(i, j, k - 1);
                double jac;
                if (dim == 1) {
                    const double a11 = (gxp[0] - gxm[0]) / (2 * hx), a12 = (gtp[0] - gtm[0]) / (2 * dt);
                    const double a21 = (gxp[1] - gxm[1]) / (2 * hx), a22 = (gtp[1] - gtm[1]) / (2 * dt);
                    jac = a11 * a22 - a12 * a21;
                } else {
                    const auto gyp = gradient(i, j + 1, k), gym = gradient(i, j - 1, k);
                    std::array<std::array<double, 3>, 3> jm{};
                    for (int c = 0; c < 3; ++c) {
                        jm[c][0] = (gxp[c] - gxm[c]) / (2 * hx);
                        jm[c][1] = (gyp[c] - gym[c]) / (2 * hy);
                        jm[c][2] = (gtp[c] - gtm[c]) / (2 * dt);
                    }
                    jac = det3(jm);
                }
                r.hrma_gradient_residual += std::abs(jac) * cell;
            }
    return r;
}

} // namespace ppgeo
