#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ppgeo/grid.hpp"
#include "ppgeo/legendre.hpp"

namespace ppgeo {

/// Weak geodesic between two potentials with finite duals: the duals are
/// interpolated affinely, u_t* = (1 - t) u0* + t u1*.
class GeodesicCurve {
public:
    GeodesicCurve(DualPotential u0, DualPotential u1, int samples = 16);

    const DualPotential& start() const { return u0_; }
    const DualPotential& end() const { return u1_; }
    int samples() const { return samples_; }
    double sample_time(int k) const { return static_cast<double>(k) / samples_; }
    /// Cached dual at sample_time(k), k = 0..samples.
    const DualPotential& sample(int k) const { return cache_[k]; }

    /// Dual at time t; t = 0 and t = 1 reproduce the endpoints exactly.
    DualPotential at(double t) const;

private:
    DualPotential u0_;
    DualPotential u1_;
    int samples_;
    std::vector<DualPotential> cache_;
};

/// Dual-cell velocity: the raw difference u1* - u0* at every moment node,
/// for either end. Masked nodes hold 0.
std::vector<double> velocity(const GeodesicCurve& curve, int end);

struct SpatialVelocity {
    SpatialFunction limit;
    /// 1 where the maximiser set of the endpoint dual spans more than 3 cells.
    std::vector<std::uint8_t> tie;
    std::size_t tie_count = 0;
    /// quotients[s][k] for t_steps[s].
    std::vector<std::vector<double>> quotients;
    /// Largest increase of the quotient as t decreases, over non-tie nodes.
    double monotonicity_violation = 0.0;
};

/// Difference quotients (u_t - u_0) / t (end 0) or (u_{1-t} - u_1) / t
/// (end 1) at spatial nodes for decreasing t_steps, with a linear
/// extrapolation to t = 0. Throws ConvexityViolation when a non-tie node's
/// quotient is not monotone within `tol`.
SpatialVelocity velocity_spatial(const GeodesicCurve& curve, int end, std::span<const double> t_steps,
                                 std::shared_ptr<const SpatialGrid> grid, double tol = 1e-9);

struct CurveReport {
    /// max of u_t - ((1 - t) u0 + t u1), clipped at 0.
    double chord_violation = 0.0;
    /// max |u_t - u_s| / |t - s| over the sample grid and spatial nodes.
    double lipschitz_measured = 0.0;
    /// sup over X of |u0 - u1|, equal to the max of |u0* - u1*| over the duals.
    double lipschitz_bound = 0.0;
    /// Most negative second difference in t alone, as a positive number.
    double t_convexity_violation = 0.0;
    /// Most negative second difference along space-time axes and diagonals.
    double joint_convexity_violation = 0.0;
    /// Integral of |det| of the central-difference space-time Hessian over
    /// interior nodes.
    double hrma_residual = 0.0;
    /// Same integral for the Jacobian of the exact space-time gradient map
    /// (x, t) -> (p*, -(u1* - u0*)(p*)), p* the first maximiser on the dual grid.
    double hrma_gradient_residual = 0.0;
    /// Largest spacing involved (spatial or time).
    double h = 0.0;
};

CurveReport curve_checks(const GeodesicCurve& curve, std::shared_ptr<const SpatialGrid> grid);

} // namespace ppgeo
