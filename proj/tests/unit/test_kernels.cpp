#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "ppgeo/grid.hpp"
#include "ppgeo/kernels.hpp"

using namespace ppgeo;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("kernels: active table is one of the compiled variants") {
    const auto& a = kernels::active();
    CHECK((std::strcmp(a.name, "scalar") == 0 || std::strcmp(a.name, "avx2") == 0));
}

TEST_CASE("kernels: avx2 matches the scalar reference") {
    const kernels::KernelTable* v = kernels::avx2();
    if (!v) {
        MESSAGE("AVX2 unavailable; equivalence test skipped");
        return;
    }
    const auto& s = kernels::scalar();
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1000u, 1027u}) {
        auto px = random_values(rng, n, -2, 2);
        auto py = random_values(rng, n, -2, 2);
        auto g = random_values(rng, n, -1, 1);
        if (n > 4) g[n / 2] = kInfinity;
        for (int trial = 0; trial < 8; ++trial) {
            const double x = std::uniform_real_distribution<double>(-3, 3)(rng);
            const double y = std::uniform_real_distribution<double>(-3, 3)(rng);
            std::size_t as = 0, av = 0;
            CHECK(same_bits(s.max_affine(px.data(), nullptr, g.data(), n, x, y, &as),
                            v->max_affine(px.data(), nullptr, g.data(), n, x, y, &av)));
            CHECK(as == av);
            CHECK(same_bits(s.max_affine(px.data(), py.data(), g.data(), n, x, y, &as),
                            v->max_affine(px.data(), py.data(), g.data(), n, x, y, &av)));
            CHECK(as == av);
        }
        // Ties: equal values everywhere must report the first index.
        std::vector<double> flat(n, 0.0), zero(n, 0.0);
        std::size_t as = 99, av = 99;
        s.max_affine(zero.data(), nullptr, flat.data(), n, 1.0, 0.0, &as);
        v->max_affine(zero.data(), nullptr, flat.data(), n, 1.0, 0.0, &av);
        CHECK(as == 0);
        CHECK(av == 0);

        auto w = random_values(rng, n, 0, 1);
        auto a = random_values(rng, n, -1, 1);
        auto b = random_values(rng, n, -1, 1);
        for (double p : {1.0, 2.0, 3.0, 1.5}) {
            const double rs = s.weighted_abs_pow_sum(w.data(), a.data(), b.data(), n, p);
            const double rv = v->weighted_abs_pow_sum(w.data(), a.data(), b.data(), n, p);
            CHECK(rv == doctest::Approx(rs).epsilon(1e-13));
            const double zs = s.weighted_abs_pow_sum(w.data(), a.data(), nullptr, n, p);
            const double zv = v->weighted_abs_pow_sum(w.data(), a.data(), nullptr, n, p);
            CHECK(zv == doctest::Approx(zs).epsilon(1e-13));
        }
        std::vector<double> os(n), ov(n);
        for (double t : {0.0, 0.25, 0.3, 1.0}) {
            s.lerp(a.data(), b.data(), n, t, os.data());
            v->lerp(a.data(), b.data(), n, t, ov.data());
            for (std::size_t k = 0; k < n; ++k) CHECK(same_bits(os[k], ov[k]));
        }
        s.pointwise_max(a.data(), b.data(), n, os.data());
        v->pointwise_max(a.data(), b.data(), n, ov.data());
        for (std::size_t k = 0; k < n; ++k) CHECK(same_bits(os[k], ov[k]));
    }
}

TEST_CASE("kernels: lerp endpoints are exact copies") {
    const auto& s = kernels::scalar();
    std::vector<double> a{0.1, 0.7, kInfinity}, b{0.3, -2.0, 1.0}, out(3);
    s.lerp(a.data(), b.data(), 3, 0.0, out.data());
    CHECK(out == a);
    s.lerp(a.data(), b.data(), 3, 1.0, out.data());
    CHECK(out == b);
}
