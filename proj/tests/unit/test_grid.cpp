#include <cmath>

#include "doctest.h"
#include "ppgeo/closed_form.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/grid.hpp"

using namespace ppgeo;

TEST_CASE("closed forms: documented values") {
    CHECK(eval_closed_form("support_[0,1]", {2.0, 0.0}, 1) == 2.0);
    CHECK(eval_closed_form("dual_quadratic", {0.5, 0.0}, 1) == doctest::Approx(0.125));
    CHECK(is_singular(eval_closed_form("dual_log_barrier", {1.0, 0.0}, 1)));
    CHECK_THROWS_AS(eval_closed_form("no_such_form", {0.0, 0.0}, 1), ConfigError);
}

TEST_CASE("grids: construction rules") {
    CHECK_THROWS_AS(SpatialGrid(Box{1, {0, 0}, {1, 0}}, 4), ConfigError);
    CHECK_THROWS_AS(SpatialGrid(Box{1, {1, 0}, {0, 0}}, 16), ConfigError);
    auto g = SpatialGrid::centered(1, 4.0, 64);
    CHECK(g->size() == 65);
    CHECK(g->coord(0, 0) == -4.0);
    CHECK(g->coord(0, 64) == 4.0);
    CHECK(g->h() == doctest::Approx(0.125));
}

TEST_CASE("moment grid: weights sum to the body volume") {
    auto g1 = MomentGrid::make(ConvexBody::interval(0.0, 1.0), 64);
    CHECK(g1->total_weight() == doctest::Approx(1.0).epsilon(1e-14));
    auto g2 = MomentGrid::make(ConvexBody::square({0.5, 0.5}, 0.5), 32);
    CHECK(g2->total_weight() == doctest::Approx(1.0).epsilon(1e-14));
    auto tri = ConvexBody::polygon({{0, 0}, {1, 0}, {0, 1}});
    for (int cells : {16, 32, 64, 128}) {
        auto g = MomentGrid::make(tri, cells);
        const double h = 1.0 / cells;
        CHECK(std::abs(g->total_weight() - tri.volume()) <= 2 * h * tri.perimeter());
    }
}

TEST_CASE("lp_norm_against: quadrature examples") {
    auto g = MomentGrid::make(ConvexBody::interval(0.0, 1.0), 256);
    std::vector<double> zero(g->size(), 0.0), lin(g->size()), odd(g->size());
    for (std::size_t k = 0; k < g->size(); ++k) {
        lin[k] = g->node(k)[0];
        odd[k] = 2 * g->node(k)[0] - 1;
    }
    CHECK(lp_norm_against(zero, *g, 2.0) == 0.0);
    CHECK(lp_norm_against(lin, *g, 1.0) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(lp_norm_against(odd, *g, 2.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-3));
    auto sing = lin;
    sing.back() = kInfinity;
    CHECK_THROWS_AS(lp_norm_against(sing, *g, 1.0), SingularIntegrandError);
    CHECK(std::isfinite(lp_norm_against(sing, *g, 1.0, 5.0)));
}

TEST_CASE("quadrature of cubics converges at rate >= 0.9") {
    // p (1 - p)^2 integrates to 1/12 on [0, 1].
    const double exact = 1.0 / 12.0;
    double prev = 0.0;
    for (int cells : {16, 32, 64, 128, 256}) {
        auto g = MomentGrid::make(ConvexBody::interval(0.0, 1.0), cells);
        std::vector<double> v(g->size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double p = g->node(k)[0];
            v[k] = p * p * p - 2 * p * p + p;
        }
        const double err = std::abs(lp_norm_against(v, *g, 1.0) - exact) + 1e-300;
        if (prev > 0.0) CHECK(std::log2(prev / err) >= 0.9);
        prev = err;
    }
}
