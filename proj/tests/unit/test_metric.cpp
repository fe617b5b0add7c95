#include <cmath>
#include <vector>

#include "doctest.h"
#include "ppgeo/errors.hpp"
#include "ppgeo/metric.hpp"
#include "ppgeo/monge_ampere.hpp"

using namespace ppgeo;

namespace {

auto grid1(int cells = 1024) { return MomentGrid::make(ConvexBody::interval(0.0, 1.0), cells); }

template <class F>
DualPotential dual_of(const std::shared_ptr<const MomentGrid>& g, F f) {
    std::vector<double> v(g->size(), kInfinity);
    for (std::size_t k : g->active()) v[k] = f(g->node(k));
    return DualPotential(g, v);
}

DualPotential log_barrier(const std::shared_ptr<const MomentGrid>& g) {
    return DualPotential::from_closed_form(g, ClosedForm{"dual_log_barrier", {1.0}});
}

// Finite except at the last node.
DualPotential pole_at_end(const std::shared_ptr<const MomentGrid>& g) {
    auto u = dual_of(g, [](Point p) { return p[0]; });
    std::vector<double> v(u.values().begin(), u.values().end());
    v[g->active().back()] = kInfinity;
    return DualPotential(g, v);
}

} // namespace

TEST_CASE("dp_endpoint examples") {
    auto g = grid1();
    auto a = dual_of(g, [](Point p) { return p[0]; });
    auto b = dual_of(g, [](Point p) { return 1.0 - p[0]; });
    CHECK(dp_endpoint(a, a, 1.0) == 0.0);
    CHECK(dp_endpoint(a, b, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dp_endpoint(a, b, 2.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-6));
    CHECK(dp_endpoint(a, b, 3.0) == doctest::Approx(dp_endpoint(b, a, 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(dp_endpoint(a, b, 0.5), ConfigError);
    CHECK_THROWS_AS(dp_endpoint(a, dual_of(grid1(512), [](Point) { return 0.0; }), 1.0), StructuralError);
    CHECK_THROWS_AS(dp_endpoint(a, pole_at_end(g), 1.0), RequiresTruncationError);
}

TEST_CASE("dual oracle agrees with the endpoint route") {
    auto g = grid1();
    auto zero = DualPotential::reference(g);
    auto ramp = dual_of(g, [](Point p) { return p[0]; });
    CHECK(dp_dual_oracle(ramp, ramp, 2.0) == 0.0);
    CHECK(dp_dual_oracle(zero, ramp, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double p : {1.0, 2.0, 3.0, 1.5}) {
        auto q = dual_of(g, [](Point x) { return 0.7 * x[0] * x[0] - std::abs(x[0] - 0.3); });
        const double e = dp_endpoint(q, ramp, p);
        CHECK(std::abs(e - dp_dual_oracle(q, ramp, p)) <= 1e-9 * e);
    }
    auto bar = log_barrier(g);
    CHECK_THROWS_AS(dp_dual_oracle(zero, pole_at_end(g), 1.0), SingularIntegrandError);
    CHECK(dp_dual_oracle(zero, bar, 1.0, 64.0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("dp_limit on the ramp pair") {
    auto space = SpatialGrid::centered(1, 4.0, 256);
    auto f0 = Obstacle::from_closed_form(space, ClosedForm{"support_[0,1]", {}});
    auto f1 = Obstacle{make_spatial(space, [&] {
                                        std::vector<double> v(space->size());
                                        for (std::size_t k = 0; k < v.size(); ++k)
                                            v[k] = std::max(0.0, space->node(k)[0] - 1.0);
                                        return v;
                                    }()),
                       0.0};
    EpsilonFamily fam(ClassBody::standard(1), EpsilonFamily::default_schedule(), 1024);
    SUBCASE("equal obstacles") {
        auto r = dp_limit(f0, f0, fam, 1.0);
        for (const auto& row : r.table) CHECK(row.value == 0.0);
        CHECK(r.value == 0.0);
    }
    SUBCASE("distance one half") {
        auto r = dp_limit(f0, f1, fam, 1.0);
        REQUIRE(r.table.size() == 7);
        for (std::size_t k = 1; k < r.table.size(); ++k) {
            CHECK(r.table[k].parameter < r.table[k - 1].parameter);
            CHECK(r.table[k].volume < r.table[k - 1].volume);
        }
        CHECK(r.value == doctest::Approx(0.5).epsilon(0.01));
        CHECK(r.converged);
        CHECK(r.deviations[0].first == "endpoint");
        CHECK(r.deviations[0].second <= std::max(0.02 * r.value, 5 * r.h));
        CHECK(r.deviations[1].second <= 1e-9);
        CHECK(dp_kahler(f0, f1, fam[0], 1.0) >= 0.0);
    }
}

TEST_CASE("d1 through the energy") {
    auto g = grid1();
    auto zero = DualPotential::reference(g);
    auto ramp = dual_of(g, [](Point p) { return p[0]; });
    auto back = dual_of(g, [](Point p) { return 1.0 - p[0]; });
    CHECK(d1_energy(ramp, ramp) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d1_energy(zero, ramp) == doctest::Approx(0.5).epsilon(0.01));
    CHECK(d1_energy(ramp, back) == doctest::Approx(dp_endpoint(ramp, back, 1.0)).epsilon(0.01));
}

TEST_CASE("singular distances through truncation") {
    auto g = grid1();
    auto zero = DualPotential::reference(g);
    auto bar = log_barrier(g);
    const std::vector<double> caps{2, 4, 8, 16, 32};
    SUBCASE("identical singular potentials") {
        auto r = dp_singular(bar, bar, 1.0, caps);
        for (const auto& row : r.table) CHECK(row.value == 0.0);
    }
    SUBCASE("p = 1") {
        auto r = dp_singular(zero, bar, 1.0, caps);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(1.0).epsilon(0.02));
        for (std::size_t k = 1; k < r.table.size(); ++k) CHECK(r.table[k].value >= r.table[k - 1].value - 1e-12);
        CHECK(r.deviations[0].second <= 1e-9);
    }
    SUBCASE("p = 2") {
        auto r = dp_singular(zero, bar, 2.0, caps);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    }
    CHECK_THROWS_AS(dp_singular(zero, bar, 1.0, std::vector<double>{4, 2}), ConfigError);
}

TEST_CASE("inverse Monge-Ampere in one dimension") {
    auto g = grid1(512);
    auto space = SpatialGrid::centered(1, 4.0, 256);
    const double h = space->h();
    auto indicator = [&](double a, double b, double height) {
        std::vector<double> v(space->size(), 0.0);
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double x = space->node(k)[0];
            if (x > a && x < b) v[k] = height;
            if (x == a || x == b) v[k] = 0.5 * height;
        }
        return make_spatial(space, v);
    };
    SUBCASE("spike") {
        std::vector<double> v(space->size(), 0.0);
        v[space->size() / 2] = 1.0 / h;
        auto u = ma_solve_1d(make_spatial(space, v), g);
        CHECK(u.min_value() == 0.0);
        for (std::size_t k : g->active()) CHECK(std::abs(u[k]) <= h);
    }
    SUBCASE("uniform on the body") {
        auto u = ma_solve_1d(indicator(0.0, 1.0, 1.0), g);
        for (std::size_t k : g->active()) {
            const double p = g->node(k)[0];
            CHECK(std::abs(u[k] - 0.5 * p * p) <= 2 * h);
        }
    }
    SUBCASE("uniform on a wider interval") {
        auto u = ma_solve_1d(indicator(-1.0, 1.0, 0.5), g);
        for (std::size_t k : g->active()) {
            const double p = g->node(k)[0];
            CHECK(std::abs(u[k] - (p - 0.5) * (p - 0.5)) <= 2 * h);
        }
    }
    CHECK_THROWS_AS(ma_solve_1d(indicator(0.0, 1.0, 2.0), g), NormalizationError);
}

TEST_CASE("sup bound fit") {
    auto g = grid1();
    auto space = SpatialGrid::centered(1, 4.0, 256);
    std::vector<double> v(space->size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double x = space->node(k)[0];
        v[k] = x > 0.0 && x < 1.0 ? 1.0 : (x == 0.0 || x == 1.0 ? 0.5 : 0.0);
    }
    auto phi = ma_solve_1d(make_spatial(space, v), g);
    SUBCASE("phi itself") {
        std::vector<DualPotential> list{phi};
        auto r = sup_bound_check(list, phi, 1.0);
        CHECK(r.fitted[0].sup == 0.0);
        CHECK(r.fitted[0].distance == 0.0);
        CHECK(r.c1 >= 0.0);
    }
    SUBCASE("large translates force a unit slope") {
        std::vector<DualPotential> list;
        for (double c : {10.0, 30.0, 3000.0, 300.0, 1000.0, 100.0}) list.push_back(DualPotential::reference(g).shifted(-c));
        auto r = sup_bound_check(list, phi, 1.0);
        CHECK(r.c2 >= 0.999);
        CHECK(r.c2 <= 1.0 + 1e-9);
        CHECK(r.holds);
    }
}

TEST_CASE("affine shifts leave distances unchanged") {
    auto g = grid1(512);
    auto space = SpatialGrid::centered(1, 4.0, 256);
    auto a = dual_of(g, [](Point p) { return p[0]; });
    auto b = dual_of(g, [](Point p) { return 1.0 - p[0]; });
    auto none = affine_invariance_check(a, b, {0.0, 0.0}, 0.0, 1.0, space);
    CHECK(none.deviation <= 1e-12);
    auto r = affine_invariance_check(a, b, {0.3, 0.0}, 2.0, 1.0, space);
    CHECK(r.before == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.deviation <= 1e-9);
    auto c = affine_invariance_check(a, b, {0.0, 0.0}, -7.5, 2.0, space);
    CHECK(c.deviation <= 1e-12);
    CHECK_THROWS_AS(affine_invariance_check(a, b, {5.0, 0.0}, 0.0, 1.0, space), ConfigError);
}

TEST_CASE("route names") {
    for (Route r : {Route::kEpsilonLimit, Route::kEndpoint, Route::kDualOracle, Route::kEnergyD1,
                    Route::kSingularLimit})
        CHECK(parse_route(route_name(r)) == r);
    CHECK_THROWS_AS(parse_route("nearest"), ConfigError);
}
