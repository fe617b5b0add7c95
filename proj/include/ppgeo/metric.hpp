#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppgeo/envelopes.hpp"
#include "ppgeo/grid.hpp"
#include "ppgeo/legendre.hpp"
#include "ppgeo/toric_model.hpp"

namespace ppgeo {

enum class Route { kEpsilonLimit, kEndpoint, kDualOracle, kEnergyD1, kSingularLimit };

const char* route_name(Route r);
/// Throws ConfigError for an unknown name.
Route parse_route(const std::string& name);

/// One row of a convergence table. For the epsilon route `parameter` is eps;
/// for the singular route it is the truncation cap.
struct DistanceRow {
    double parameter = 0.0;
    double volume = 0.0;
    double value = 0.0;
};

struct DistanceReport {
    double p = 1.0;
    double value = 0.0;
    Route route = Route::kEndpoint;
    std::vector<DistanceRow> table;
    double extrapolated = 0.0;
    double fit_residual = 0.0;
    double last_increment = 0.0;
    bool converged = true;
    /// Grid spacing that sets the quadrature tolerance of this report.
    double h = 0.0;
    /// dp_endpoint between the base-body envelopes (epsilon route only).
    double endpoint_value = 0.0;
    /// Named cross-route deviations in insertion order.
    std::vector<std::pair<std::string, double>> deviations;
};

/// ((1/V) sum_j w_j |u1*(p_j) - u0*(p_j)|^p)^(1/p) over the common grid; the
/// reversed (t = 1) pairing must agree to 1e-9 relative or SymmetryError.
double dp_endpoint(const DualPotential& u0, const DualPotential& u1, double p);

/// Same quantity accumulated independently in long double straight from the
/// node values. With a cap both duals are clipped at it first; without one a
/// +inf at an included node throws SingularIntegrandError.
double dp_dual_oracle(const DualPotential& u0, const DualPotential& u1, double p,
                      std::optional<double> cap = std::nullopt);

/// d_p in the perturbed class: envelopes of both obstacles over the member's
/// body, paired on its moment grid.
double dp_kahler(const Obstacle& f0, const Obstacle& f1, const EpsilonMember& member, double p);

/// d_{p,eps} over the family, extrapolated to eps = 0 by an affine fit on the
/// last three points. Deviations: "endpoint" (|extrapolated - endpoint|) and
/// "dual_oracle" (relative endpoint vs oracle), both on the base body.
DistanceReport dp_limit(const Obstacle& f0, const Obstacle& f1, const EpsilonFamily& family, double p);

/// E(u0) + E(u1) - 2 E(rooftop). n = 2 needs a spatial grid.
double d1_energy(const DualPotential& u0, const DualPotential& u1,
                 std::shared_ptr<const SpatialGrid> spatial = nullptr);

/// Distances between the cap-M truncations for increasing caps. The report's
/// deviations hold "triangle_excess" (largest increment beyond the sum of the
/// two approximant distances) and "ip_constant" (largest increment over
/// I_p(u0 terms)^(1/p) + I_p(u1 terms)^(1/p)).
DistanceReport dp_singular(const DualPotential& u0, const DualPotential& u1, double p, std::span<const double> caps);

/// Inverse Monge-Ampere in n = 1: phi' is the cumulative distribution of the
/// density (Riemann sums, node value weighted by h) rescaled onto the body.
/// The dual is shifted so that min phi* = 0. NormalizationError when the
/// mass differs from vol(P) by more than rel_tol * vol(P).
DualPotential ma_solve_1d(const SpatialFunction& density, std::shared_ptr<const MomentGrid> target,
                          double rel_tol = 1e-6);

struct SupBoundPoint {
    double sup = 0.0;
    double distance = 0.0;
};

struct SupBoundReport {
    std::vector<SupBoundPoint> fitted;
    std::vector<SupBoundPoint> held_out;
    double c1 = 0.0;
    double c2 = 0.0;
    /// Largest held-out |sup| - (c1 + c2 d); <= 0 when the bound holds.
    double worst_held_out_excess = 0.0;
    bool holds = true;
};

/// Records (|sup u|, d_p(u, phi)) for every potential; even positions fit the
/// smallest (c1, c2) >= 0 covering them (least c1 + c2 * mean d), odd
/// positions are held out.
SupBoundReport sup_bound_check(std::span<const DualPotential> corpus, const DualPotential& phi, double p);

struct AffineInvarianceReport {
    double before = 0.0;
    double after = 0.0;
    double deviation = 0.0;
};

/// d_p of the pair against d_p of (u0 + l, u1 + l), l(x) = <c,x> + b, the
/// latter computed on the translated body by transforming the shifted primal
/// potentials. Both sides use the same primal round trip through `spatial`.
/// ConfigError when the translation exceeds the body's diameter.
AffineInvarianceReport affine_invariance_check(const DualPotential& u0, const DualPotential& u1, Point c, double b,
                                               double p, std::shared_ptr<const SpatialGrid> spatial);

} // namespace ppgeo
