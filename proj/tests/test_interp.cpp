#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "czkit/interp.hpp"
#include "czkit/rng.hpp"
#include "testutil.hpp"

using namespace czkit;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double conj(double p) { return p / (p - 1.0); }
}  // namespace

TEST_CASE("closed forms") {
    CHECK(phi(kInf, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (int i = 1; i <= 100; ++i) {
        const double p = 1.0 + 0.08 * i;
        CHECK(phi(kInf, p) == doctest::Approx(std::pow(conj(p), 1.0 / p)).epsilon(1e-12));
    }
    for (double r : {1.5, 2.0, 3.0, 10.0, 100.0}) CHECK(phi(r, r) == 1.0);
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(phi(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(2.0, kInf), std::invalid_argument);
}

TEST_CASE("duality phi(r,p) = phi(r',p') for p >= r") {
    Rng rng(19);
    for (int rep = 0; rep < 100; ++rep) {
        const double r = 1.0 + std::exp(rng.uniform(-2.0, 3.0));
        const double p = r * (1.0 + std::exp(rng.uniform(-3.0, 1.0)));
        const auto q = phi_query(r, p);
        CHECK(q.method == PhiQuery::Method::symmetry);
        CHECK(q.value == phi(conj(r), conj(p)));  // same code path, exact
        CHECK(q.value >= 1.0);
    }
}

TEST_CASE("minimization agrees with the dense grid oracle") {
    Rng rng(230);
    for (int rep = 0; rep < 200; ++rep) {
        const double r = 1.05 + std::exp(rng.uniform(-2.0, 4.0));
        const double p = 1.0 + (r - 1.0) * rng.uniform(0.02, 1.0);
        CAPTURE(r);
        CAPTURE(p);
        const double mine = phi(r, p);
        const double grid = testutil::oracle_phi_grid(r, p);
        CHECK(mine <= grid * (1.0 + 1e-9));
        CHECK(mine >= grid * (1.0 - 1e-9) - 1e-12);
        CHECK(mine >= 1.0 - 1e-12);
    }
}

TEST_CASE("closed-form upper bounds dominate phi on their regimes") {
    for (double r : {4.0, 9.0, 25.0, 100.0}) {
        const double sq = std::sqrt(r);
        // sqrt-regime: sqrt(r) <= p <= r
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double p = sq + (r - sq) * t;
            const auto [b1, b2] = phi_upper_bounds(r, p);
            CHECK(b1 >= phi(r, p) * (1.0 - 1e-12));
            (void)b2;
        }
        // small-p regime: 1 < p <= sqrt(r)
        for (double t : {0.1, 0.4, 0.7, 1.0}) {
            const double p = 1.0 + (sq - 1.0) * t;
            const auto [b1, b2] = phi_upper_bounds(r, p);
            CHECK(b2 >= phi(r, p) * (1.0 - 1e-12));
            (void)b1;
        }
    }
    // p = r: both bounds are >= 1 = phi (the second degenerates to infinity)
    const auto [b1, b2] = phi_upper_bounds(4.0, 4.0);
    CHECK(b1 >= 1.0);
    CHECK(std::isinf(b2));
    CHECK_THROWS_AS(phi_upper_bounds(kInf, 2.0), std::invalid_argument);
}

TEST_CASE("the objective base is decreasing then increasing around sqrt(r)") {
    for (double r : {4.0, 10.0, 50.0}) {
        const double sq = std::sqrt(r);
        auto base = [r](double q) { return conj(q) + 1.0 / (r / q - 1.0); };
        double prev = base(1.0 + 1e-6);
        for (int i = 1; i <= 50; ++i) {
            const double q = 1.0 + 1e-6 + (sq - 1.0 - 1e-6) * i / 50.0;
            const double cur = base(q);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
        prev = base(sq);
        for (int i = 1; i <= 50; ++i) {
            const double q = sq + (r - 1e-6 - sq) * i / 50.0;
            const double cur = base(q);
            CHECK(cur >= prev * (1.0 - 1e-12));
            prev = cur;
        }
        CHECK(base(sq) >= 1.0);
    }
}

TEST_CASE("marcinkiewicz constant") {
    CHECK(marcinkiewicz_constant(1.0, 1.0, 4.0, 2.0) ==
          doctest::Approx(2.0 * phi(4.0, 2.0)).epsilon(1e-15));
    CHECK(marcinkiewicz_constant(1.0, 1.0, kInf, 2.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(marcinkiewicz_constant(4.0, 1.0, kInf, 2.0) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(marcinkiewicz_constant(0.0, 1.0, 4.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(marcinkiewicz_constant(1.0, 1.0, 2.0, 3.0), std::invalid_argument);
}

TEST_CASE("region supremum is finite") {
    const double sup = phi_region_sup(2.0, 2.0, 64);
    CHECK(std::isfinite(sup));
    CHECK(sup >= 1.0);
    // slice p = r has phi = 1; a one-point grid lands there
    CHECK(phi_region_sup(2.0, 2.0, 1) == 1.0);
    CHECK_THROWS_AS(phi_region_sup(1.0, 2.0, 8), std::invalid_argument);
}
