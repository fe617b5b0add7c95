#include <cmath>

#include "doctest.h"
#include "ppgeo/corpus.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/harness.hpp"

using namespace ppgeo;

TEST_CASE("theorem report verdicts") {
    TheoremReport r;
    r.tolerance = 0.1;
    r.add("a", 0.05);
    r.finalize();
    CHECK(r.pass);
    r.add("b", std::nan(""));
    r.finalize();
    CHECK_FALSE(r.pass);
    CHECK(std::isinf(r.worst_slack));
}

TEST_CASE("rng mapping is fixed") {
    Rng a(1), b(1), c(2);
    for (int k = 0; k < 100; ++k) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        const int n = c.integer(3, 8);
        CHECK(n >= 3);
        CHECK(n <= 8);
    }
}

TEST_CASE("random pairs depend only on seed and stream") {
    const Setup s = Setup::defaults(1);
    const auto a = random_dual_pairs(s, 3, 7);
    const auto b = random_dual_pairs(s, 3, 7);
    const auto c = random_dual_pairs(s, 3, 8);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(std::equal(a[k].u0.values().begin(), a[k].u0.values().end(), b[k].u0.values().begin()));
    }
    CHECK_FALSE(std::equal(a[0].u0.values().begin(), a[0].u0.values().end(), c[0].u0.values().begin()));
}

TEST_CASE("catalog is stable and filterable") {
    const auto& all = catalog();
    REQUIRE(all.size() >= 5);
    CHECK(all.front().name == "ramp_pair");
    CHECK(catalog_filter("").size() == all.size());
    CHECK(catalog_filter("zzz").empty());
    CHECK(catalog_entry("log_barrier_singular").singular);
    CHECK_THROWS_AS(catalog_entry("nowhere"), ConfigError);
    for (const auto& e : all)
        for (int dim : {1, 2}) {
            const auto& f = e.in_dim(dim);
            CHECK((f.dual0.has_value() || f.obstacle0.has_value()));
        }
}

TEST_CASE("suite registry") {
    CHECK(suite_ids().size() == 17);
    CHECK(coverage_table().size() > 0);
    const Setup s = Setup::defaults(1);
    CHECK_THROWS_AS(run_suite("nowhere", s), ConfigError);
    for (const char* id : {"involution", "mass", "metric_axioms"}) {
        const auto r = run_suite(id, s);
        CHECK(r.pass());
    }
}
