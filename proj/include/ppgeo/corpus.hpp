#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ppgeo/body.hpp"
#include "ppgeo/closed_form.hpp"

namespace ppgeo {

/// Seeded generator with a fixed uniform mapping (top 53 bits), so draws do
/// not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Integer in [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// max_k <a_k, p> + b_k with 3-8 pieces, slopes in [-2,2]^n, intercepts in [-1,1].
ClosedForm random_max_affine_dual(Rng& rng, int dim);

/// s |p - c|^2 / 2 with s in [0.5, 2] and c in the body's bounding box.
ClosedForm random_quadratic_dual(Rng& rng, const ConvexBody& body);

/// Convex primal with gradients in the body: 3-8 affine pieces whose slopes
/// are drawn inside the body.
ClosedForm random_primal_convex(Rng& rng, const ConvexBody& body);

/// a |x - m|^2 / 2 + b sin(<k,x> + phi) + c with a in [0.5,2], m in
/// [-0.5,0.5]^n, b in [0,0.2], |k| in [1,3].
ClosedForm random_wave_obstacle(Rng& rng, int dim);

/// Forms of a bundled pair in one dimension. Dual pairs give dual forms;
/// obstacle pairs give primal obstacles only.
struct PairForms {
    std::optional<ClosedForm> dual0, dual1;
    std::optional<ClosedForm> obstacle0, obstacle1;
};

struct CatalogEntry {
    std::string name;
    std::string note;
    /// Index 0 for n = 1, index 1 for n = 2.
    std::array<PairForms, 2> forms;
    bool singular = false;

    const PairForms& in_dim(int dim) const { return forms.at(static_cast<std::size_t>(dim - 1)); }
};

/// Bundled pairs in stable order.
const std::vector<CatalogEntry>& catalog();

/// Entries whose name contains `filter` (all entries for an empty filter).
std::vector<const CatalogEntry*> catalog_filter(std::string_view filter);

/// ConfigError for an unknown name.
const CatalogEntry& catalog_entry(std::string_view name);

} // namespace ppgeo
