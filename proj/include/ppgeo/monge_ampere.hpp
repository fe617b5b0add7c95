#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ppgeo/grid.hpp"
#include "ppgeo/legendre.hpp"

namespace ppgeo {

struct Atom {
    Point location;
    double mass;
};

/// Monge-Ampere measure as a pushforward: one atom per finite moment node.
struct AtomicMeasure {
    int dim = 1;
    std::vector<Atom> atoms;
    double total_mass = 0.0;
    /// Negative mass dropped while atomizing a signed density (mixed measures).
    double negative_mass = 0.0;
    std::string provenance;
};

/// Discrete Hessian-determinant density on a spatial grid, negatives clamped.
struct DensityField {
    std::shared_ptr<const SpatialGrid> grid;
    std::vector<double> density;
    double total = 0.0;
    double clamped_mass = 0.0;
};

/// Gradient of the dual at every included finite node: central differences,
/// one-sided where a neighbour is missing. Other nodes get {nan, nan}.
std::vector<Point> dual_gradient(const DualPotential& u);

AtomicMeasure ma_atomic(const DualPotential& u);

/// Central-difference Hessian determinant at interior nodes (second
/// difference / h^2 in 1-D); boundary nodes hold 0. No clamping.
std::vector<double> hessian_determinant(const SpatialFunction& f);

/// Largest eigenvalue of the central-difference Hessian at interior nodes.
std::vector<double> hessian_max_eigenvalue(const SpatialFunction& f);

/// Clamped Hessian density. Throws NumericalError when the clamped negative
/// mass exceeds 1e-6 * reference_volume.
DensityField ma_density(const PrimalPotential& u, double reference_volume = 1.0);

/// Mixed measure MA(u, v) (n = 2) by midpoint polarization of the density
/// route, atomized at spatial nodes. The primals take the sup over P itself,
/// with dual values on the boundary extrapolated from the grid. Throws
/// PolarizationError when the negative part exceeds `negative_tol`.
AtomicMeasure ma_mixed_pair(const DualPotential& u, const DualPotential& v, std::shared_ptr<const SpatialGrid> spatial,
                            double negative_tol);

/// Monge-Ampere energy relative to the reference potential, carrying 1/vol(P).
/// Integrands are u - V with V the exact support function of P.
/// n = 2 needs a spatial grid for the mixed term. Singular duals throw
/// RequiresTruncationError.
double energy(const DualPotential& u, std::shared_ptr<const SpatialGrid> spatial = nullptr);

/// Sum over the atoms of MA(u) and MA(v) of mass * |u - v|^p (not normalized).
double i_p(const DualPotential& u, const DualPotential& v, double p);

/// Mass of each atom deposited on the nearest spatial node; atoms outside
/// the box go to the nearest boundary node.
std::vector<double> bin_measure(const AtomicMeasure& mu, const SpatialGrid& grid);

/// Density field as node masses (density * cell volume).
std::vector<double> density_masses(const DensityField& rho);

double total_variation(std::span<const double> a, std::span<const double> b);

/// Sum of w * |values - other|^p over atoms, evaluating both potentials at
/// the atom locations.
double integrate_abs_pow(const AtomicMeasure& mu, const DualPotential& u, const DualPotential& v, double p);

} // namespace ppgeo
