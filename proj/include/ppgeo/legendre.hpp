#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppgeo/closed_form.hpp"
#include "ppgeo/grid.hpp"

namespace ppgeo {

/// Linear-time scan is the production path; the O(N*M) maximum is the
/// reference oracle and is only selected explicitly.
enum class TransformMethod { kLinearScan, kBruteForce };

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

/// out[q] = max_i (slopes[q] * nodes[i] - values[i]) for ascending `nodes`
/// and ascending `slopes`. Entries with values[i] == +inf are skipped; if no
/// entry is finite the result is -inf. O(N + M) via the lower convex hull.
void conjugate_1d(std::span<const double> nodes, std::span<const double> values, std::span<const double> slopes,
                  std::span<double> out, std::span<std::size_t> argmax = {});

/// Separable two-axis form of conjugate_1d. Values are stored x-fastest
/// (index = j * nx + i); the output uses the same layout over the queries.
void conjugate_2d(std::span<const double> nodes_x, std::span<const double> nodes_y, std::span<const double> values,
                  std::span<const double> slopes_x, std::span<const double> slopes_y, std::span<double> out,
                  std::span<std::size_t> argmax = {});

/// Largest grid-convex minorant of ascending-node samples (+inf skipped),
/// exact in 1-D. Nodes outside the finite hull stay +inf.
std::vector<double> lower_hull_1d(std::span<const double> nodes, std::span<const double> values);

/// Primal potential: a convex function sampled on a spatial box; outside
/// the box it is understood to continue with slopes in its class body.
class PrimalPotential {
public:
    PrimalPotential(std::shared_ptr<const SpatialGrid> grid, std::vector<double> values,
                    std::optional<ConvexBody> body = std::nullopt, std::string provenance = "derived");

    const std::shared_ptr<const SpatialGrid>& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    const std::optional<ConvexBody>& body() const { return body_; }
    const std::string& provenance() const { return provenance_; }
    /// Second differences along axes and diagonals are >= -1e-10 * range.
    bool convex_certified() const { return convex_; }

    SpatialFunction as_function() const { return SpatialFunction{grid_, values_, provenance_}; }

private:
    std::shared_ptr<const SpatialGrid> grid_;
    std::vector<double> values_;
    std::optional<ConvexBody> body_;
    std::string provenance_;
    bool convex_ = false;
};

/// A potential represented by its Legendre dual sampled on a moment grid.
/// Nodes outside the body hold +inf; +inf at an included node marks a
/// potential without minimal singularities.
class DualPotential {
public:
    DualPotential(std::shared_ptr<const MomentGrid> grid, std::vector<double> values, std::string provenance = "derived");

    static DualPotential from_closed_form(std::shared_ptr<const MomentGrid> grid, const ClosedForm& form);
    /// Dual of the support function of the body: identically zero.
    static DualPotential reference(std::shared_ptr<const MomentGrid> grid);

    const std::shared_ptr<const MomentGrid>& grid() const { return grid_; }
    const ConvexBody& body() const { return grid_->body(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    const std::string& provenance() const { return provenance_; }

    bool singular() const { return singular_; }
    bool convex_certified() const { return convex_; }
    std::size_t finite_count() const { return finite_count_; }
    /// Moment nodes whose maximiser sat on the spatial box edge in to_dual.
    std::span<const std::size_t> boundary_flags() const { return flags_; }
    void set_boundary_flags(std::vector<std::size_t> flags) { flags_ = std::move(flags); }

    double min_value() const;
    /// sup over X of the potential relative to the reference, i.e. -min u*.
    double sup_relative() const { return -min_value(); }

    /// Dual of max(u, V - cap): the convex hull of min(u*, cap).
    DualPotential truncated(double cap) const;
    DualPotential shifted(double c) const;

private:
    std::shared_ptr<const MomentGrid> grid_;
    std::vector<double> values_;
    std::string provenance_;
    std::vector<std::size_t> flags_;
    bool singular_ = false;
    bool convex_ = false;
    std::size_t finite_count_ = 0;
};

bool same_grid(const DualPotential& a, const DualPotential& b);
/// Throws StructuralError when the two potentials live on different grids.
void require_same_grid(const DualPotential& a, const DualPotential& b, const char* what);

/// u*(p) = max over spatial nodes of (<p,x> - u(x)).
DualPotential to_dual(const PrimalPotential& u, std::shared_ptr<const MomentGrid> target,
                      TransformMethod method = TransformMethod::kLinearScan);
/// Same transform for an arbitrary (possibly non-convex) spatial sample.
DualPotential to_dual(const SpatialFunction& f, std::shared_ptr<const MomentGrid> target,
                      TransformMethod method = TransformMethod::kLinearScan);

/// u(x) = max over finite included moment nodes of (<p,x> - g(p)).
PrimalPotential to_primal(const DualPotential& g, std::shared_ptr<const SpatialGrid> target,
                          TransformMethod method = TransformMethod::kLinearScan);

/// Primal values at arbitrary points.
std::vector<double> evaluate_primal(const DualPotential& g, std::span<const Point> points);

/// Largest grid-convex function below f (exact hull in 1-D, discrete
/// biconjugate in 2-D).
PrimalPotential convexify(const SpatialFunction& f);
/// Convex hull of a dual sample on its moment grid.
DualPotential convexify(const DualPotential& g);

} // namespace ppgeo
