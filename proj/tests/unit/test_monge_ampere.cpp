#include <cmath>

#include "doctest.h"
#include "ppgeo/envelopes.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/monge_ampere.hpp"

using namespace ppgeo;

namespace {

auto grid1(int cells = 1024) { return MomentGrid::make(ConvexBody::interval(0.0, 1.0), cells); }

DualPotential linear(const std::shared_ptr<const MomentGrid>& g, double a, double b) {
    std::vector<double> v(g->size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a * g->node(k)[0] + b;
    return DualPotential(g, v);
}

} // namespace

TEST_CASE("atomic measure examples") {
    auto g = grid1();
    auto ref = ma_atomic(DualPotential::reference(g));
    CHECK(ref.total_mass == g->total_weight());
    for (const auto& a : ref.atoms) CHECK(a.location[0] == 0.0);
    auto q = ma_atomic(DualPotential::from_closed_form(g, {"dual_quadratic", {1.0}}));
    for (std::size_t k = 1; k + 1 < q.atoms.size(); ++k) {
        CHECK(q.atoms[k].location[0] == doctest::Approx(g->node(k)[0]).epsilon(1e-12));
        CHECK(q.atoms[k].mass == g->h());
    }
    auto l = ma_atomic(linear(g, 1, 0));
    for (const auto& a : l.atoms) CHECK(a.location[0] == doctest::Approx(1.0));
    CHECK(l.total_mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density examples") {
    auto space = SpatialGrid::centered(1, 4.0, 256);
    auto quad = sample_spatial(space, [](const Point& x) { return 0.5 * x[0] * x[0]; });
    auto rho = ma_density(PrimalPotential(space, quad.values));
    for (std::size_t k = 1; k + 1 < space->size(); ++k) CHECK(rho.density[k] == doctest::Approx(1.0).epsilon(1e-9));
    auto aff = sample_spatial(space, [](const Point& x) { return 2 * x[0] - 1; });
    auto r0 = ma_density(PrimalPotential(space, aff.values));
    CHECK(r0.total == doctest::Approx(0.0).epsilon(1e-9));
    auto ramp = sample_spatial(space, [](const Point& x) { return std::max(0.0, x[0]); });
    auto r1 = ma_density(PrimalPotential(space, ramp.values));
    CHECK(r1.total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.density[128] == doctest::Approx(1.0 / space->h()));
    auto concave = sample_spatial(space, [](const Point& x) { return -x[0] * x[0]; });
    CHECK_THROWS_AS(ma_density(PrimalPotential(space, concave.values)), NumericalError);
}

TEST_CASE("energy examples") {
    auto g = grid1();
    CHECK(energy(DualPotential::reference(g)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(energy(linear(g, 1, 0)) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(energy(linear(g, 0, -0.75)) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(energy(DualPotential::from_closed_form(g, {"dual_quadratic", {1.0}})) ==
          doctest::Approx(-1.0 / 6.0).epsilon(1e-3));
    CHECK_THROWS_AS(energy(DualPotential::from_closed_form(g, {"dual_log_barrier", {0.5}})), RequiresTruncationError);
}

TEST_CASE("energy is monotone") {
    auto g = grid1(512);
    auto u = DualPotential::from_closed_form(g, {"dual_quadratic", {1.0}});
    auto v = DualPotential::from_closed_form(g, {"dual_max_affine", {1.0, 0.0, -0.5, 0.2}});
    auto r = rooftop(u, v);  // below both in primal
    CHECK(energy(r) <= energy(u) + 1e-12);
    CHECK(energy(r) <= energy(v) + 1e-12);
}

TEST_CASE("I_p examples") {
    auto g = grid1();
    auto v = DualPotential::reference(g);
    auto u = linear(g, 1, 0);
    CHECK(i_p(u, u, 2.0) == 0.0);
    CHECK(i_p(v, u, 1.0) == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(i_p(linear(g, 1, 0), linear(g, -1, 1), 1.0) == doctest::Approx(2.0).epsilon(2e-3));
    CHECK(i_p(u, v, 3.0) == doctest::Approx(i_p(v, u, 3.0)).epsilon(1e-14));
}

TEST_CASE("atomic and density constructions agree for a smooth dual") {
    auto g = grid1(4096);
    auto u = DualPotential::from_closed_form(g, {"dual_quadratic", {0.5, 0.3}});
    for (int cells : {64, 128}) {
        auto space = SpatialGrid::centered(1, 4.0, cells);
        const auto atoms = bin_measure(ma_atomic(u), *space);
        const auto dens = density_masses(ma_density(to_primal(u, space)));
        CHECK(total_variation(atoms, dens) <= 4 * space->h());
    }
}

TEST_CASE("mixed measures in the plane") {
    auto space = SpatialGrid::centered(2, 2.0, 64);
    auto g = MomentGrid::make(ConvexBody::square({0.5, 0.5}, 0.5), 96);
    auto ref = DualPotential::reference(g);
    auto q = DualPotential::from_closed_form(g, {"dual_quadratic", {1.0}});
    auto mixed = ma_mixed_pair(ref, q, space, 1e-2);
    CHECK(mixed.total_mass == doctest::Approx(1.0).epsilon(1e-3));
    auto diag = ma_mixed_pair(q, q, space, 1e-2);
    CHECK(diag.total_mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(total_variation(bin_measure(diag, *space), bin_measure(ma_atomic(q), *space)) <= 0.1);
    auto r = DualPotential::from_closed_form(g, {"dual_quadratic", {2.0, 0.3, 0.6}});
    auto ab = ma_mixed_pair(q, r, space, 1e-2);
    auto ba = ma_mixed_pair(r, q, space, 1e-2);
    CHECK(total_variation(bin_measure(ab, *space), bin_measure(ba, *space)) <= 1e-9);
    CHECK_THROWS_AS(ma_mixed_pair(DualPotential::reference(grid1()), DualPotential::reference(grid1()), space, 1.0),
                    ConfigError);
}

TEST_CASE("energy in the plane") {
    auto space = SpatialGrid::centered(2, 2.0, 64);
    auto g = MomentGrid::make(ConvexBody::square({0.5, 0.5}, 0.5), 96);
    CHECK(energy(DualPotential::reference(g), space) == doctest::Approx(0.0).epsilon(1e-9));
    std::vector<double> lin(g->size());
    for (std::size_t k = 0; k < lin.size(); ++k) lin[k] = g->node(k)[0];
    // Exact value: minus the mean of the dual.
    CHECK(energy(DualPotential(g, lin), space) == doctest::Approx(-0.5).epsilon(1e-3));
    auto q = DualPotential::from_closed_form(g, {"dual_quadratic", {1.0}});
    CHECK(energy(q, space) == doctest::Approx(-1.0 / 3.0).epsilon(0.01));
}
