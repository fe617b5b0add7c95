#include "ppgeo/corpus.hpp"

#include <cmath>
#include <numbers>

#include "ppgeo/errors.hpp"

namespace ppgeo {

ClosedForm random_max_affine_dual(Rng& rng, int dim) {
    ClosedForm f{"dual_max_affine", {}};
    const int pieces = rng.integer(3, 8);
    for (int k = 0; k < pieces; ++k) {
        for (int a = 0; a < dim; ++a) f.params.push_back(rng.uniform(-2.0, 2.0));
        f.params.push_back(rng.uniform(-1.0, 1.0));
    }
    return f;
}

ClosedForm random_quadratic_dual(Rng& rng, const ConvexBody& body) {
    const Box box = body.bounding_box();
    ClosedForm f{"dual_quadratic", {rng.uniform(0.5, 2.0)}};
    for (int a = 0; a < body.dim(); ++a) f.params.push_back(rng.uniform(box.lo[a], box.hi[a]));
    return f;
}

ClosedForm random_primal_convex(Rng& rng, const ConvexBody& body) {
    const Box box = body.bounding_box();
    const int dim = body.dim();
    ClosedForm f{"primal_max_affine", {}};
    const int pieces = rng.integer(3, 8);
    for (int k = 0; k < pieces; ++k) {
        Point s{};
        do {
            for (int a = 0; a < dim; ++a) s[a] = rng.uniform(box.lo[a], box.hi[a]);
        } while (!body.contains(s));
        for (int a = 0; a < dim; ++a) f.params.push_back(s[a]);
        f.params.push_back(rng.uniform(-1.0, 1.0));
    }
    return f;
}

ClosedForm random_wave_obstacle(Rng& rng, int dim) {
    const double a = rng.uniform(0.5, 2.0);
    const double b = rng.uniform(0.0, 0.2);
    const double freq = rng.uniform(1.0, 3.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = rng.uniform(-0.5, 0.5);
    if (dim == 1) return {"primal_wave", {a, rng.uniform(-0.5, 0.5), b, freq, phi, c}};
    const double m1 = rng.uniform(-0.5, 0.5);
    const double m2 = rng.uniform(-0.5, 0.5);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {"primal_wave", {a, m1, m2, b, freq * std::cos(angle), freq * std::sin(angle), phi, c}};
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto duals = [](ClosedForm a, ClosedForm b) {
            PairForms f;
            f.dual0 = std::move(a);
            f.dual1 = std::move(b);
            return f;
        };
        auto obstacles = [](ClosedForm a, ClosedForm b) {
            PairForms f;
            f.obstacle0 = std::move(a);
            f.obstacle1 = std::move(b);
            return f;
        };
        std::vector<CatalogEntry> v;
        v.push_back({"ramp_pair", "reference potential against the dual p (first coordinate); d_1 = 1/2",
                     {duals({"zero", {}}, {"dual_linear", {1.0, 0.0}}),
                      duals({"zero", {}}, {"dual_linear", {1.0, 0.0, 0.0}})},
                     false});
        v.push_back({"crossing_pair", "duals p and 1 - p (first coordinate); d_1 = 1/2, d_2 = 3^-1/2",
                     {duals({"dual_linear", {1.0, 0.0}}, {"dual_linear", {-1.0, 1.0}}),
                      duals({"dual_linear", {1.0, 0.0, 0.0}}, {"dual_linear", {-1.0, 0.0, 1.0}})},
                     false});
        v.push_back({"log_barrier_singular", "reference against the -log barrier dual; finite energy, unbounded",
                     {duals({"zero", {}}, {"dual_log_barrier", {1.0}}),
                      duals({"zero", {}}, {"dual_log_barrier", {1.0}})},
                     true});
        v.push_back({"quadratic_pair", "two smooth strictly convex duals",
                     {duals({"dual_quadratic", {1.0, 0.0}}, {"dual_quadratic", {2.0, 0.5}}),
                      duals({"dual_quadratic", {1.0, 0.0, 0.0}}, {"dual_quadratic", {2.0, 0.5, 0.5}})},
                     false});
        v.push_back({"wave_pair", "non-convex wave obstacles; potentials are their envelopes",
                     {obstacles({"primal_wave", {1.0, 0.2, 0.1, 3.0, 0.0, 0.0}},
                                {"primal_wave", {1.5, -0.3, 0.15, 2.0, 0.5, 0.1}}),
                      obstacles({"primal_wave", {1.0, 0.2, 0.1, 0.1, 3.0, 1.0, 0.0, 0.0}},
                                {"primal_wave", {1.5, -0.3, 0.2, 0.15, 2.0, -1.0, 0.5, 0.1}})},
                     false});
        v.push_back({"constant_pair", "reference against the reference shifted down by one",
                     {duals({"zero", {}}, {"constant", {1.0}}), duals({"zero", {}}, {"constant", {1.0}})},
                     false});
        return v;
    }();
    return entries;
}

std::vector<const CatalogEntry*> catalog_filter(std::string_view filter) {
    std::vector<const CatalogEntry*> out;
    for (const auto& e : catalog())
        if (e.name.find(filter) != std::string::npos) out.push_back(&e);
    return out;
}

const CatalogEntry& catalog_entry(std::string_view name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw ConfigError("unknown catalog pair '" + std::string(name) + "'");
}

} // namespace ppgeo
