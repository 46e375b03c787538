#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "czkit/covering.hpp"
#include "czkit/rng.hpp"
#include "testutil.hpp"

using namespace czkit;

namespace {

// re-derives the remaining sets E_j and checks the greedy certificate
void check_vitali_invariants(const MetricMeasureSpace& s, const std::vector<int>& E,
                             const std::vector<double>& radii, const VitaliCover& vc) {
    // disjoint selected balls
    for (std::size_t a = 0; a < vc.centers.size(); ++a) {
        const auto ball_a = s.ball_members(vc.centers[a], vc.radii[a]);
        for (std::size_t b = a + 1; b < vc.centers.size(); ++b) {
            for (int y : s.ball_members(vc.centers[b], vc.radii[b])) {
                CHECK(!std::binary_search(ball_a.begin(), ball_a.end(), y));
            }
        }
    }
    // 3r-coverage of E
    for (int e : E) {
        bool covered = false;
        for (std::size_t a = 0; a < vc.centers.size() && !covered; ++a) {
            covered = s.dist(vc.centers[a], e) < 3.0 * vc.radii[a];
        }
        CHECK(covered);
    }
    // selection certificate: each picked radius attains the max on E_j
    std::vector<char> remaining(s.n(), 0);
    std::vector<double> r_of(s.n(), 0.0);
    for (std::size_t i = 0; i < E.size(); ++i) {
        remaining[E[i]] = 1;
        r_of[E[i]] = radii[i];
    }
    for (std::size_t j = 0; j < vc.centers.size(); ++j) {
        double sup = 0.0;
        for (int x = 0; x < s.n(); ++x) {
            if (remaining[x]) sup = std::max(sup, r_of[x]);
        }
        CHECK(vc.step_sup[j] == sup);
        CHECK(vc.radii[j] == sup);
        CHECK(vc.radii[j] > 0.5 * sup);
        for (int y = 0; y < s.n(); ++y) {
            if (remaining[y] && s.dist(vc.centers[j], y) < 3.0 * vc.radii[j]) remaining[y] = 0;
        }
    }
    for (int x = 0; x < s.n(); ++x) CHECK(!remaining[x]);
}

}  // namespace

TEST_CASE("vitali on the 5-point line with unit radii") {
    const auto s = make_line(5);
    const std::vector<int> E{0, 1, 2, 3, 4};
    const std::vector<double> r(5, 1.0);
    const auto vc = vitali_cover(s, E, r, 1.0);
    CHECK(vc.centers == std::vector<int>{0, 3});
    CHECK(s.ball_members(0, 1.0) == std::vector<int>{0});
    CHECK(s.ball_members(3, 1.0) == std::vector<int>{3});
    check_vitali_invariants(s, E, r, vc);
}

TEST_CASE("vitali edge cases") {
    const auto s = make_line(5);
    const auto single = vitali_cover(s, {3}, {0.5}, 1.0);
    CHECK(single.centers == std::vector<int>{3});

    // radii so small that 3r-balls are singletons: every point selected
    const std::vector<int> E{0, 2, 4};
    const auto tiny = vitali_cover(s, E, {0.25, 0.25, 0.25}, 1.0);
    CHECK(tiny.centers == std::vector<int>{0, 2, 4});

    CHECK_THROWS_WITH_AS(vitali_cover(s, {0, 4}, {1.0, 1.0}, 1.5),
                         doctest::Contains("diam"), std::invalid_argument);
    CHECK_THROWS_AS(vitali_cover(s, {0, 1}, {1.0, 2.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(vitali_cover(s, {}, {}, 1.0), std::invalid_argument);
}

TEST_CASE("whitney on the 5-point line matches the hand trace") {
    const auto s = make_line(5);
    const auto wc = whitney_cover(s, {1, 2, 3}, 3.0);
    CHECK(wc.centers == std::vector<int>{2, 1, 3});
    CHECK(wc.radii == std::vector<double>{1.0, 0.5, 0.5});
    const auto counts = overlap_counts(s, wc.centers, wc.radii);
    CHECK(counts == std::vector<int>{0, 1, 1, 1, 0});
    // escape: B(2, 2.02) reaches 0 outside U
    CHECK(s.dist(2, 0) < 2.02 * wc.radii[0]);
}

TEST_CASE("whitney edge cases") {
    const auto s = make_line(5);
    const auto single = whitney_cover(s, {2}, 3.0);
    CHECK(single.centers == std::vector<int>{2});
    CHECK(single.radii == std::vector<double>{0.5});
    CHECK(s.ball_members(2, 0.5) == std::vector<int>{2});

    CHECK_THROWS_WITH_AS(whitney_cover(s, {0, 1, 2, 3, 4}, 10.0),
                         doctest::Contains("proper"), std::invalid_argument);

    // two clusters 8 apart: the near cluster has no exterior within R = 3
    const auto stretched = make_graph(
        6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 8.0}, {3, 4, 1.0}, {4, 5, 1.0}});
    CHECK_THROWS_WITH_AS(whitney_cover(stretched, {0, 1, 2}, 3.0),
                         doctest::Contains("d(x, X\\U) > R"), std::invalid_argument);
}

TEST_CASE("vitali invariants hold on random instances") {
    Rng rng(2024);
    int done = 0;
    while (done < 300) {
        const auto s = testutil::random_space(rng, 60);
        if (s.n() < 2) continue;
        // E: random nonempty subset; R big enough for its diameter
        std::vector<int> E;
        for (int x = 0; x < s.n(); ++x) {
            if (rng.coin(0.6)) E.push_back(x);
        }
        if (E.empty()) E.push_back(rng.index(s.n()));
        const double R = s.set_diameter(E) / 2.0 * 1.25 + 0.25;
        std::vector<double> radii(E.size());
        for (double& r : radii) r = rng.dyadic(0.05, 1.0, 10) * R;
        const auto vc = vitali_cover(s, E, radii, R);
        check_vitali_invariants(s, E, radii, vc);
        ++done;
    }
}

TEST_CASE("whitney invariants hold on random instances") {
    Rng rng(77);
    const double kappa = 2.0 + std::ldexp(1.0, -20);
    int done = 0;
    while (done < 300) {
        const auto s = testutil::random_space(rng, 60);
        if (s.n() < 3) continue;
        // U: an open ball around a seeded center, proper by construction
        const int c = rng.index(s.n());
        const double rho = rng.uniform(0.2, 0.8) * s.diameter();
        auto U = s.ball_members(c, rho);
        if (static_cast<int>(U.size()) == s.n()) continue;
        std::vector<char> in_u(s.n(), 0);
        for (int x : U) in_u[x] = 1;
        std::vector<int> comp;
        for (int x = 0; x < s.n(); ++x) {
            if (!in_u[x]) comp.push_back(x);
        }
        const double R = 1.01 * std::max(s.set_diameter(U), [&] {
            double m = 0.0;
            for (int x : U) m = std::max(m, s.dist_to_set(x, comp));
            return m;
        }()) + 1e-6;
        const auto wc = whitney_cover(s, U, R);

        const auto counts = overlap_counts(s, wc.centers, wc.radii);
        const double bound = wc.overlap_bound;
        for (int x = 0; x < s.n(); ++x) {
            if (in_u[x]) {
                CHECK(counts[x] >= 1);
                CHECK(static_cast<double>(counts[x]) <= bound * (1.0 + 1e-9));
            } else {
                CHECK(counts[x] == 0);
            }
        }
        // disjoint third-balls
        for (std::size_t a = 0; a < wc.centers.size(); ++a) {
            const auto third_a = s.ball_members(wc.centers[a], wc.radii[a] / 3.0);
            for (std::size_t b = a + 1; b < wc.centers.size(); ++b) {
                for (int y : s.ball_members(wc.centers[b], wc.radii[b] / 3.0)) {
                    CHECK(!std::binary_search(third_a.begin(), third_a.end(), y));
                }
            }
        }
        // escape just above kappa = 2, radii in (0, R/2]
        for (std::size_t i = 0; i < wc.centers.size(); ++i) {
            CHECK(wc.radii[i] > 0.0);
            CHECK(wc.radii[i] <= R / 2.0);
            bool escapes = false;
            for (int y : comp) {
                if (s.dist(wc.centers[i], y) < kappa * wc.radii[i]) {
                    escapes = true;
                    break;
                }
            }
            CHECK(escapes);
        }
        ++done;
    }
}
