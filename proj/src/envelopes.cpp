#include "ppgeo/envelopes.hpp"

#include <algorithm>
#include <cmath>

#include "ppgeo/errors.hpp"
#include "ppgeo/kernels.hpp"
#include "ppgeo/monge_ampere.hpp"

namespace ppgeo {

Obstacle Obstacle::from_closed_form(std::shared_ptr<const SpatialGrid> grid, const ClosedForm& form) {
    const int dim = grid->dim();
    auto f = sample_spatial(
        std::move(grid), [&](const Point& x) { return eval_closed_form(form, x, dim); }, form.id);
    return Obstacle{std::move(f), closed_form_hessian_bound(form, dim)};
}

double Obstacle::bound() const { return hessian_bound ? *hessian_bound : estimate_hessian_bound(f); }

double estimate_hessian_bound(const SpatialFunction& f) {
    const auto eig = hessian_max_eigenvalue(f);
    double c = 0.0;
    for (double e : eig) c = std::max(c, e);
    return c;
}

double contact_tolerance(double hessian_bound, const SpatialGrid& spatial, const MomentGrid& moment) {
    double h = 0.0;
    for (int a = 0; a < spatial.dim(); ++a) h = std::max({h, spatial.h(a), moment.h(a)});
    return 0.2 * (1.0 + hessian_bound) * h * h;
}

EnvelopeRecord envelope(const Obstacle& obstacle, std::shared_ptr<const MomentGrid> target) {
    const SpatialFunction& f = obstacle.f;
    if (f.grid->dim() != target->dim()) throw StructuralError("envelope: dimension mismatch");
    const double c = obstacle.bound();
    DualPotential dual = to_dual(f, target);
    PrimalPotential primal = to_primal(dual, f.grid);
    const double tol = contact_tolerance(c, *f.grid, *target);
    std::vector<std::uint8_t> contact(f.values.size());
    for (std::size_t k = 0; k < contact.size(); ++k) contact[k] = primal[k] >= f.values[k] - tol ? 1 : 0;
    const std::size_t flags = dual.boundary_flags().size();
    return EnvelopeRecord{f, std::move(primal), std::move(dual), std::move(contact), c, tol, flags};
}

PrimalPotential iterative_envelope(const SpatialFunction& f, const ConvexBody& body, int max_rounds) {
    const SpatialGrid& g = *f.grid;
    if (g.dim() != body.dim()) throw StructuralError("iterative_envelope: dimension mismatch");
    const std::size_t n = g.size();
    std::vector<Point> nodes(n);
    for (std::size_t k = 0; k < n; ++k) nodes[k] = g.node(k);
    const auto first = convexify(f);
    std::vector<double> cur(first.values().begin(), first.values().end());
    double scale = 1.0;
    for (double v : f.values) scale = std::max(scale, std::abs(v));
    std::vector<double> clip(n);
    for (int round = 0; round < max_rounds; ++round) {
        for (std::size_t k = 0; k < n; ++k) {
            double best = cur[k];
            for (std::size_t y = 0; y < n; ++y) {
                const Point d{nodes[k][0] - nodes[y][0], nodes[k][1] - nodes[y][1]};
                best = std::min(best, cur[y] + body.support(d));
            }
            clip[k] = std::min(best, f.values[k]);
        }
        const auto hull = convexify(SpatialFunction{f.grid, clip, f.provenance});
        double change = 0.0;
        for (std::size_t k = 0; k < n; ++k) change = std::max(change, std::abs(hull[k] - cur[k]));
        cur.assign(hull.values().begin(), hull.values().end());
        if (change <= 1e-14 * scale) break;
    }
    return PrimalPotential(f.grid, std::move(cur), body, f.provenance + "|iterative");
}

DualPotential rooftop(const DualPotential& u, const DualPotential& v) {
    require_same_grid(u, v, "rooftop");
    std::vector<double> out(u.values().size());
    kernels::active().pointwise_max(u.values().data(), v.values().data(), out.size(), out.data());
    return DualPotential(u.grid(), std::move(out), "P(" + u.provenance() + "," + v.provenance() + ")");
}

DualPotential multi_rooftop(std::span<const DualPotential> list) {
    if (list.empty()) throw ConfigError("multi_rooftop: empty list");
    std::vector<double> acc(list[0].values().begin(), list[0].values().end());
    std::string prov = "P(" + list[0].provenance();
    for (std::size_t i = 1; i < list.size(); ++i) {
        require_same_grid(list[0], list[i], "multi_rooftop");
        kernels::active().pointwise_max(acc.data(), list[i].values().data(), acc.size(), acc.data());
        prov += "," + list[i].provenance();
    }
    return DualPotential(list[0].grid(), std::move(acc), prov + ")");
}

DualPotential primal_maximum(const DualPotential& u, const DualPotential& v) {
    require_same_grid(u, v, "primal_maximum");
    std::vector<double> m(u.values().size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(u[k], v[k]);
    return convexify(DualPotential(u.grid(), std::move(m), "max(" + u.provenance() + "," + v.provenance() + ")"));
}

BermanResult berman_residual(const EnvelopeRecord& rec) {
    BermanResult out;
    const auto env = hessian_determinant(rec.primal.as_function());
    const auto obs = hessian_determinant(rec.obstacle);
    const double cell = rec.obstacle.grid->cell_volume();
    for (std::size_t k = 0; k < env.size(); ++k) {
        double e = env[k];
        if (e < 0.0) {
            out.clamped_mass += -e * cell;
            e = 0.0;
        }
        const double target = rec.contact[k] ? std::max(obs[k], 0.0) : 0.0;
        out.residual += std::abs(e - target) * cell;
        out.max_density = std::max(out.max_density, e);
    }
    return out;
}

} // namespace ppgeo
