#include "ppgeo/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ppgeo/errors.hpp"
#include "ppgeo/kernels.hpp"

namespace ppgeo {

SpatialGrid::SpatialGrid(Box box, int cells) : box_(box), cells_(cells) {
    if (box.dim != 1 && box.dim != 2) throw ConfigError("spatial grid: dimension must be 1 or 2");
    if (cells < 8) throw ConfigError("spatial grid: need at least 8 cells per axis");
    for (int a = 0; a < box.dim; ++a) {
        if (!(box.lo[a] < box.hi[a])) throw ConfigError("spatial grid: low must be below high on every axis");
        h_[a] = (box.hi[a] - box.lo[a]) / cells;
    }
    if (box.dim == 1) box_.lo[1] = box_.hi[1] = 0.0;
    const auto n = static_cast<std::size_t>(cells + 1);
    size_ = box.dim == 1 ? n : n * n;
}

std::shared_ptr<const SpatialGrid> SpatialGrid::centered(int dim, double half_width, int cells) {
    Box box;
    box.dim = dim;
    box.lo = {-half_width, dim == 2 ? -half_width : 0.0};
    box.hi = {half_width, dim == 2 ? half_width : 0.0};
    return std::make_shared<const SpatialGrid>(box, cells);
}

double SpatialGrid::coord(int axis, int i) const {
    if (i == cells_) return box_.hi[axis];
    return box_.lo[axis] + (box_.hi[axis] - box_.lo[axis]) * i / cells_;
}

std::vector<double> SpatialGrid::axis_coords(int axis) const {
    std::vector<double> c(nodes_per_axis());
    for (int i = 0; i < nodes_per_axis(); ++i) c[i] = coord(axis, i);
    return c;
}

Point SpatialGrid::node(std::size_t k) const {
    const int n = nodes_per_axis();
    if (dim() == 1) return {coord(0, static_cast<int>(k)), 0.0};
    return {coord(0, static_cast<int>(k % n)), coord(1, static_cast<int>(k / n))};
}

MomentGrid::MomentGrid(ConvexBody body, int cells) : body_(std::move(body)), box_(body_.bounding_box()), cells_(cells) {
    if (cells < 8) throw ConfigError("moment grid: need at least 8 cells per axis");
    const int dim = body_.dim();
    for (int a = 0; a < dim; ++a) h_[a] = box_.width(a) / cells;
    const std::size_t n = dim == 1 ? cells : static_cast<std::size_t>(cells) * cells;
    mask_.assign(n, 0);
    weights_.assign(n, 0.0);
    const double vol = cell_volume();
    // Interval bodies cover their bounding box exactly; every centre is inside.
    for (std::size_t k = 0; k < n; ++k) {
        const bool in = dim == 1 || body_.contains(node(k), 1e-12 * body_.diameter());
        if (in) {
            mask_[k] = 1;
            weights_[k] = vol;
            active_.push_back(k);
            total_weight_ += vol;
        }
    }
    if (active_.empty()) throw ConfigError("moment grid: no node centre falls inside the body");
}

double MomentGrid::coord(int axis, int i) const {
    return box_.lo[axis] + box_.width(axis) * (i + 0.5) / cells_;
}

std::vector<double> MomentGrid::axis_coords(int axis) const {
    std::vector<double> c(cells_);
    for (int i = 0; i < cells_; ++i) c[i] = coord(axis, i);
    return c;
}

Point MomentGrid::node(std::size_t k) const {
    if (dim() == 1) return {coord(0, static_cast<int>(k)), 0.0};
    return {coord(0, static_cast<int>(k % cells_)), coord(1, static_cast<int>(k / cells_))};
}

SpatialFunction make_spatial(std::shared_ptr<const SpatialGrid> grid, std::vector<double> values, std::string provenance) {
    if (!grid) throw StructuralError("spatial function without grid");
    if (values.size() != grid->size()) throw StructuralError("spatial function size does not match its grid");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("spatial samples must be finite (+inf is reserved for moment grids)");
    return SpatialFunction{std::move(grid), std::move(values), std::move(provenance)};
}

double lp_norm_against(std::span<const double> values, const MomentGrid& grid, double p,
                       std::optional<double> truncation_cap) {
    if (!(p >= 1.0)) throw ConfigError("lp_norm_against: p must be >= 1");
    if (values.size() != grid.size()) throw StructuralError("lp_norm_against: value count does not match grid");
    std::vector<double> w;
    std::vector<double> a;
    w.reserve(grid.active().size());
    a.reserve(grid.active().size());
    for (std::size_t k : grid.active()) {
        double v = std::abs(values[k]);
        if (is_singular(v)) {
            if (!truncation_cap) throw SingularIntegrandError("lp_norm_against: +inf at a node with positive weight");
        }
        if (truncation_cap) v = std::min(v, *truncation_cap);
        w.push_back(grid.weight(k));
        a.push_back(v);
    }
    const double sum = kernels::active().weighted_abs_pow_sum(w.data(), a.data(), nullptr, w.size(), p);
    return std::pow(sum, 1.0 / p);
}

} // namespace ppgeo
