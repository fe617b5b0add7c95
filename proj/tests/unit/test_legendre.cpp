#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/legendre.hpp"

using namespace ppgeo;

namespace {

auto unit_grid(int cells = 512) { return MomentGrid::make(ConvexBody::interval(0.0, 1.0), cells); }

} // namespace

TEST_CASE("conjugate_1d agrees with the brute-force oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> nodes(101), values(101), slopes(77);
        for (int i = 0; i < 101; ++i) {
            nodes[i] = -2 + 4.0 * i / 100;
            values[i] = d(rng) + 0.3 * nodes[i] * nodes[i];
        }
        if (trial % 3 == 0) values[17] = kInfinity;
        for (int q = 0; q < 77; ++q) slopes[q] = -3 + 6.0 * q / 76;
        std::vector<double> out(77);
        std::vector<std::size_t> arg(77);
        conjugate_1d(nodes, values, slopes, out, arg);
        const auto ref = oracle::conjugate(nodes, values, slopes);
        for (int q = 0; q < 77; ++q) {
            CHECK(out[q] == doctest::Approx(ref[q]).epsilon(1e-13));
            CHECK(slopes[q] * nodes[arg[q]] - values[arg[q]] == doctest::Approx(ref[q]).epsilon(1e-13));
        }
    }
}

TEST_CASE("conjugate_2d agrees with the brute-force oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-1, 1);
    const int n = 21;
    std::vector<double> xs(n), ys(n), v(n * n), sx(13), sy(11);
    for (int i = 0; i < n; ++i) xs[i] = ys[i] = -1 + 2.0 * i / (n - 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) v[j * n + i] = d(rng) + xs[i] * xs[i] + 0.5 * ys[j] * ys[j];
    v[5] = kInfinity;
    for (int a = 0; a < 13; ++a) sx[a] = -2 + 4.0 * a / 12;
    for (int b = 0; b < 11; ++b) sy[b] = -1.5 + 3.0 * b / 10;
    std::vector<double> out(13 * 11);
    std::vector<std::size_t> arg(13 * 11);
    conjugate_2d(xs, ys, v, sx, sy, out, arg);
    const auto ref = oracle::conjugate_2d(xs, ys, v, sx, sy);
    for (std::size_t k = 0; k < out.size(); ++k) {
        CHECK(out[k] == doctest::Approx(ref[k]).epsilon(1e-13));
        const std::size_t i = arg[k] % n, j = arg[k] / n;
        CHECK(sx[k % 13] * xs[i] + sy[k / 13] * ys[j] - v[arg[k]] == doctest::Approx(ref[k]).epsilon(1e-13));
    }
}

TEST_CASE("to_dual: documented pairs") {
    auto space = SpatialGrid::centered(1, 4.0, 512);
    auto grid = unit_grid();
    SUBCASE("support function has zero dual") {
        auto f = sample_spatial(space, [](const Point& x) { return std::max(0.0, x[0]); });
        auto u = to_dual(f, grid);
        for (std::size_t k = 0; k < grid->size(); ++k) CHECK(std::abs(u[k]) <= 1e-14);
        CHECK(u.convex_certified());
        CHECK_FALSE(u.singular());
    }
    SUBCASE("x^2/2 gives p^2/2") {
        auto f = sample_spatial(space, [](const Point& x) { return 0.5 * x[0] * x[0]; });
        auto u = to_dual(f, grid);
        for (std::size_t k = 0; k < grid->size(); ++k) {
            const double p = grid->node(k)[0];
            CHECK(std::abs(u[k] - 0.5 * p * p) <= space->h());
        }
    }
    SUBCASE("translated support function gives p") {
        auto f = sample_spatial(space, [](const Point& x) { return std::max(0.0, x[0] - 1.0); });
        auto u = to_dual(f, grid);
        for (std::size_t k = 0; k < grid->size(); ++k) CHECK(u[k] == doctest::Approx(grid->node(k)[0]));
    }
    SUBCASE("linear scan and brute force agree") {
        auto f = sample_spatial(space, [](const Point& x) { return std::cosh(0.7 * x[0]) - x[0] / 3; });
        auto a = to_dual(f, grid);
        auto b = to_dual(f, grid, TransformMethod::kBruteForce);
        for (std::size_t k = 0; k < grid->size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
    }
}

TEST_CASE("to_primal: documented values") {
    auto grid = unit_grid();
    std::vector<Point> pts{{0.5, 0.0}, {-3.0, 0.0}};
    auto zero = DualPotential::reference(grid);
    std::vector<double> lin(grid->size()), rev(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k) {
        lin[k] = grid->node(k)[0];
        rev[k] = 1.0 - grid->node(k)[0];
    }
    const double h = grid->h();
    const auto v0 = evaluate_primal(zero, std::vector<Point>{{2.0, 0.0}, {-1.0, 0.0}});
    CHECK(v0[0] == doctest::Approx(2.0).epsilon(h));
    CHECK(v0[1] == doctest::Approx(0.0).epsilon(h));
    CHECK(std::abs(evaluate_primal(DualPotential(grid, lin), pts)[0]) <= h);
    CHECK(evaluate_primal(DualPotential(grid, rev), pts)[1] == doctest::Approx(-1.0).epsilon(4 * h));

    auto space = SpatialGrid::centered(1, 4.0, 64);
    auto a = to_primal(DualPotential(grid, rev), space);
    auto b = to_primal(DualPotential(grid, rev), space, TransformMethod::kBruteForce);
    for (std::size_t k = 0; k < space->size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
    CHECK(a.convex_certified());
}

TEST_CASE("involution on the spatial grid") {
    auto space = SpatialGrid::centered(1, 4.0, 256);
    auto grid = unit_grid(1024);
    auto f = sample_spatial(space, [](const Point& x) { return std::log1p(std::exp(x[0])); });
    PrimalPotential u(space, f.values);
    auto back = to_primal(to_dual(u, grid), space);
    for (std::size_t k = 0; k < space->size(); ++k) CHECK(std::abs(back[k] - u[k]) <= 2 * space->h());
}

TEST_CASE("convexify: documented cases") {
    auto space = SpatialGrid::centered(1, 4.0, 200);
    SUBCASE("convex input is a fixed point") {
        auto f = sample_spatial(space, [](const Point& x) { return x[0] * x[0]; });
        auto c = convexify(f);
        for (std::size_t k = 0; k < space->size(); ++k) CHECK(c[k] == doctest::Approx(f.values[k]));
    }
    SUBCASE("double well gets a bridge") {
        auto f = sample_spatial(space, [](const Point& x) {
            return std::min(x[0] * x[0], (x[0] - 2) * (x[0] - 2) + 0.5);
        });
        auto c = convexify(f);
        const auto ref = oracle::lower_hull(space->axis_coords(0), f.values);
        for (std::size_t k = 0; k < space->size(); ++k) CHECK(c[k] == doctest::Approx(ref[k]).epsilon(1e-12));
        const std::size_t mid = 125;  // x = 1
        CHECK(space->node(mid)[0] == doctest::Approx(1.0));
        CHECK(c[mid] < 1.0 - 1e-3);
        auto again = convexify(c.as_function());
        for (std::size_t k = 0; k < space->size(); ++k) CHECK(again[k] == doctest::Approx(c[k]).epsilon(1e-14));
    }
    SUBCASE("constant") {
        auto f = sample_spatial(space, [](const Point&) { return 3.25; });
        auto c = convexify(f);
        for (std::size_t k = 0; k < space->size(); ++k) CHECK(c[k] == 3.25);
    }
}

TEST_CASE("2-D transforms: separable scan matches brute force") {
    auto space = SpatialGrid::centered(2, 2.0, 32);
    auto grid = MomentGrid::make(ConvexBody::polygon({{0, 0}, {1, 0}, {0.2, 1}}), 24);
    auto f = sample_spatial(space, [](const Point& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]) + 0.1 * x[0] * x[1]; });
    auto a = to_dual(f, grid);
    auto b = to_dual(f, grid, TransformMethod::kBruteForce);
    for (std::size_t k : grid->active()) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));
    for (std::size_t k = 0; k < grid->size(); ++k)
        if (!grid->included(k)) CHECK(is_singular(a[k]));
    auto pa = to_primal(a, space);
    auto pb = to_primal(a, space, TransformMethod::kBruteForce);
    for (std::size_t k = 0; k < space->size(); ++k) CHECK(pa[k] == doctest::Approx(pb[k]).epsilon(1e-13));
}

TEST_CASE("dual potentials: structure and errors") {
    auto grid = unit_grid(64);
    std::vector<double> all_inf(grid->size(), kInfinity);
    CHECK_THROWS_AS(DualPotential(grid, all_inf), ConfigError);
    std::vector<double> bad(grid->size() + 1, 0.0);
    CHECK_THROWS_AS(DualPotential(grid, bad), StructuralError);
    auto g = DualPotential::from_closed_form(grid, {"dual_log_barrier", {1.0}});
    CHECK_FALSE(g.singular());
    auto h = DualPotential::from_closed_form(grid, {"dual_log_barrier", {0.5}});
    CHECK(h.singular());
    auto t = h.truncated(3.0);
    CHECK_FALSE(t.singular());
    CHECK(t.convex_certified());
    for (std::size_t k = 0; k < grid->size(); ++k) CHECK(t[k] <= std::min(h[k], 3.0) + 1e-12);
    auto other = MomentGrid::make(ConvexBody::interval(0.0, 1.0), 32);
    CHECK_THROWS_AS(require_same_grid(g, DualPotential::reference(other), "test"), StructuralError);
    CHECK(same_grid(g, DualPotential::reference(MomentGrid::make(ConvexBody::interval(0.0, 1.0), 64))));
}

TEST_CASE("order reversal on random pairs") {
    auto space = SpatialGrid::centered(1, 4.0, 128);
    auto grid = unit_grid(256);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = d(rng), b = std::abs(d(rng));
        auto u = sample_spatial(space, [&](const Point& x) { return std::log1p(std::exp(x[0] - a)); });
        auto v = sample_spatial(space, [&](const Point& x) { return std::log1p(std::exp(x[0] - a)) + b; });
        auto us = to_dual(u, grid), vs = to_dual(v, grid);
        for (std::size_t k = 0; k < grid->size(); ++k) CHECK(us[k] >= vs[k]);
    }
}

TEST_CASE("evaluate_primal in the plane matches the brute-force transform") {
    auto grid = MomentGrid::make(ConvexBody::polygon({{0, 0}, {1, 0}, {0.2, 1}}), 40);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<double> v(grid->size(), kInfinity);
    for (std::size_t k : grid->active()) v[k] = d(rng) + grid->node(k)[0] * grid->node(k)[1];
    const DualPotential u(grid, v);
    auto space = SpatialGrid::centered(2, 3.0, 24);
    const auto brute = to_primal(u, space, TransformMethod::kBruteForce);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < space->size(); ++k) pts.push_back(space->node(k));
    const auto fast = evaluate_primal(u, pts);
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK(fast[k] == doctest::Approx(brute[k]).epsilon(1e-13));
}
