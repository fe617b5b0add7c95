#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppgeo/body.hpp"

namespace ppgeo {

/// The +inf sentinel used on moment grids for non-minimal singularities and
/// for nodes outside the body. Never substitute a large finite number.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_singular(double v) { return v == kInfinity; }

/// Uniform node grid on a box in R^n, n in {1, 2}. Nodes include both box
/// ends: `cells + 1` nodes per axis.
class SpatialGrid {
public:
    SpatialGrid(Box box, int cells);

    /// Symmetric box [-half_width, half_width]^n.
    static std::shared_ptr<const SpatialGrid> centered(int dim, double half_width, int cells);

    int dim() const { return box_.dim; }
    int cells() const { return cells_; }
    int nodes_per_axis() const { return cells_ + 1; }
    std::size_t size() const { return size_; }
    const Box& box() const { return box_; }
    double h(int axis = 0) const { return h_[axis]; }
    double coord(int axis, int i) const;
    std::vector<double> axis_coords(int axis) const;
    Point node(std::size_t k) const;
    std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(j) * nodes_per_axis() + i; }
    /// Product of spacings; the cell volume attached to a node by Riemann sums.
    double cell_volume() const { return dim() == 1 ? h_[0] : h_[0] * h_[1]; }

    bool operator==(const SpatialGrid& o) const { return box_ == o.box_ && cells_ == o.cells_; }

private:
    Box box_;
    int cells_;
    std::size_t size_;
    Point h_{};
};

/// Cell-centred grid over the bounding box of a convex body. A node is
/// included when its centre lies in the body and then carries the full cell
/// volume as its weight.
class MomentGrid {
public:
    MomentGrid(ConvexBody body, int cells);

    static std::shared_ptr<const MomentGrid> make(ConvexBody body, int cells) {
        return std::make_shared<const MomentGrid>(std::move(body), cells);
    }

    int dim() const { return body_.dim(); }
    const ConvexBody& body() const { return body_; }
    const Box& box() const { return box_; }
    int cells() const { return cells_; }
    int nodes_per_axis() const { return cells_; }
    std::size_t size() const { return weights_.size(); }
    double h(int axis = 0) const { return h_[axis]; }
    double coord(int axis, int i) const;
    std::vector<double> axis_coords(int axis) const;
    Point node(std::size_t k) const;
    std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(j) * cells_ + i; }

    bool included(std::size_t k) const { return mask_[k] != 0; }
    double weight(std::size_t k) const { return weights_[k]; }
    std::span<const double> weights() const { return weights_; }
    std::span<const std::uint8_t> mask() const { return mask_; }
    /// Indices of included nodes in storage order.
    std::span<const std::size_t> active() const { return active_; }
    double total_weight() const { return total_weight_; }
    double cell_volume() const { return dim() == 1 ? h_[0] : h_[0] * h_[1]; }

    bool operator==(const MomentGrid& o) const { return cells_ == o.cells_ && body_ == o.body_; }

private:
    ConvexBody body_;
    Box box_;
    int cells_;
    Point h_{};
    std::vector<std::uint8_t> mask_;
    std::vector<double> weights_;
    std::vector<std::size_t> active_;
    double total_weight_ = 0.0;
};

/// Node values on a grid plus a provenance label.
template <class Grid>
struct Sampled {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
    std::string provenance;
};

using SpatialFunction = Sampled<SpatialGrid>;
using MomentFunction = Sampled<MomentGrid>;

/// Validates a spatial sample: finite everywhere, matching size.
SpatialFunction make_spatial(std::shared_ptr<const SpatialGrid> grid, std::vector<double> values,
                             std::string provenance = "derived");

/// Samples a callable at every spatial node.
template <class F>
SpatialFunction sample_spatial(std::shared_ptr<const SpatialGrid> grid, F&& f, std::string provenance = "derived") {
    std::vector<double> v(grid->size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid->node(k));
    return make_spatial(std::move(grid), std::move(v), std::move(provenance));
}

/// (sum_j w_j |v_j|^p)^{1/p} over the included nodes of `grid`. A +inf value at
/// an included node throws SingularIntegrandError unless `truncation_cap`
/// is given, in which case |v| is replaced by min(|v|, cap).
double lp_norm_against(std::span<const double> values, const MomentGrid& grid, double p,
                       std::optional<double> truncation_cap = std::nullopt);

} // namespace ppgeo
