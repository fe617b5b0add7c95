#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppgeo/closed_form.hpp"
#include "ppgeo/grid.hpp"
#include "ppgeo/legendre.hpp"

namespace ppgeo {

/// An obstacle sampled on a spatial grid together with its Hessian bound.
/// A missing bound is estimated from second differences.
struct Obstacle {
    SpatialFunction f;
    std::optional<double> hessian_bound;

    static Obstacle from_closed_form(std::shared_ptr<const SpatialGrid> grid, const ClosedForm& form);
    double bound() const;
};

struct EnvelopeRecord {
    SpatialFunction obstacle;
    PrimalPotential primal;
    DualPotential dual;
    /// 1 where envelope >= obstacle - contact_tol.
    std::vector<std::uint8_t> contact;
    double hessian_bound = 0.0;
    double contact_tol = 0.0;
    /// Moment nodes whose maximiser sat on the box edge: the obstacle grows
    /// too slowly there and the envelope is shaped by the box.
    std::size_t growth_flags = 0;
};

/// Largest eigenvalue of the discrete Hessian over interior nodes, >= 0.
double estimate_hessian_bound(const SpatialFunction& f);

/// 0.2 (1 + C) h^2 with h the larger of the spatial and moment spacings.
double contact_tolerance(double hessian_bound, const SpatialGrid& spatial, const MomentGrid& moment);

/// Largest convex function below the obstacle with gradients in the body of
/// `target`, computed through the obstacle's dual on `target`.
EnvelopeRecord envelope(const Obstacle& obstacle, std::shared_ptr<const MomentGrid> target);

/// Reference route: repeated hull, slope clipping by infimal convolution with
/// the body's support function, and minimum with the obstacle. O(N^2).
PrimalPotential iterative_envelope(const SpatialFunction& f, const ConvexBody& body, int max_rounds = 16);

/// Dual of P(min(u, v)): pointwise maximum of the duals.
DualPotential rooftop(const DualPotential& u, const DualPotential& v);
DualPotential multi_rooftop(std::span<const DualPotential> list);

/// Dual of max(u, v): convex hull of the pointwise minimum of the duals.
DualPotential primal_maximum(const DualPotential& u, const DualPotential& v);

struct BermanResult {
    /// Integral of |rho_env - 1_contact rho_f| over interior nodes.
    double residual = 0.0;
    double max_density = 0.0;
    double clamped_mass = 0.0;
};

BermanResult berman_residual(const EnvelopeRecord& rec);

} // namespace ppgeo
