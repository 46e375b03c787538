#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "czkit/rng.hpp"
#include "czkit/space.hpp"
#include "testutil.hpp"

using namespace czkit;

TEST_CASE("build_space accepts the smallest nontrivial metric") {
    const auto s = MetricMeasureSpace::build({{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0});
    CHECK(s.n() == 2);
    CHECK(s.dist(0, 1) == 1.0);
    CHECK(s.total_mass() == 2.0);
}

TEST_CASE("build_space rejects invalid inputs") {
    CHECK_THROWS_WITH_AS(MetricMeasureSpace::build({{0.0, 1.0}, {2.0, 0.0}}, {1.0, 1.0}),
                         doctest::Contains("asymmetric"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        MetricMeasureSpace::build({{0.0, 1.0, 3.0}, {1.0, 0.0, 1.0}, {3.0, 1.0, 0.0}},
                                  {1.0, 1.0, 1.0}),
        doctest::Contains("triangle violation at (0,2) via 1"), std::invalid_argument);
    CHECK_THROWS_AS(MetricMeasureSpace::build({{0.0, 1.0}, {1.0, 0.0}}, {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MetricMeasureSpace::build({{0.5, 1.0}, {1.0, 0.0}}, {1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("ball queries on the 5-point line") {
    const auto s = make_line(5);
    CHECK(s.ball_members(2, 1.0) == std::vector<int>{2});
    CHECK(s.ball_members(2, 1.5) == std::vector<int>{1, 2, 3});
    CHECK(s.ball_members(1, s.diameter() + 1.0) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(s.ball_measure(2, 0.5) == 1.0);
    CHECK(s.ball_measure(2, 1.5) == 3.0);
    CHECK_THROWS_AS(s.ball_measure(0, 0.0), std::invalid_argument);
}

TEST_CASE("ball_measure with nonunit weights") {
    const auto s = MetricMeasureSpace::build({{0.0, 1.0}, {1.0, 0.0}}, {2.0, 3.0});
    CHECK(s.ball_measure(0, 1.5) == 5.0);
    CHECK(s.ball_measure(0, 1.0) == 2.0);
}

TEST_CASE("doubling constants on reference spaces") {
    const auto two = MetricMeasureSpace::build({{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0});
    CHECK(doubling_constant(two, 1.0) == 2.0);
    CHECK(doubling_constant(two, 0.5) == 1.0);

    const auto line = make_line(5);
    CHECK(doubling_constant(line, 1.0) == 3.0);

    const auto point = MetricMeasureSpace::build(std::vector<double>{0.0}, {1.0});
    CHECK(doubling_constant(point, 5.0) == 1.0);
}

TEST_CASE("doubling profile matches the examples") {
    const auto two = MetricMeasureSpace::build({{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0});
    const auto prof = doubling_profile(two, 2.0);
    CHECK(prof.breakpoints == std::vector<double>{0.5});
    CHECK(prof.values == std::vector<double>{1.0, 2.0});
    CHECK(prof.exact);
    CHECK(prof.at(0.5) == 1.0);
    CHECK(prof.at(0.6) == 2.0);

    const auto point = MetricMeasureSpace::build(std::vector<double>{0.0}, {1.0});
    const auto pp = doubling_profile(point, 3.0);
    CHECK(pp.values == std::vector<double>{1.0});
    CHECK(pp.breakpoints.empty());
}

TEST_CASE("profile is monotone and consistent with doubling_constant") {
    Rng rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const auto s = testutil::random_space(rng, 40);
        const double r_max = s.n() > 1 ? s.diameter() + 1.0 : 1.0;
        const auto prof = doubling_profile(s, r_max);
        for (std::size_t i = 1; i < prof.values.size(); ++i) {
            CHECK(prof.values[i] >= prof.values[i - 1]);
        }
        for (int k = 0; k < 8; ++k) {
            const double R = rng.uniform(1e-3, r_max);
            CAPTURE(R);
            CHECK(doubling_constant(s, R) == prof.at(R));
        }
    }
}

TEST_CASE("critical-radius enumeration agrees with the dense-grid oracle") {
    Rng rng(1234);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = testutil::random_space(rng, 16);
        const double R = rng.uniform(0.2, s.n() > 1 ? 1.5 * s.diameter() : 1.0);
        CAPTURE(rep);
        CHECK(doubling_constant(s, R) == testutil::oracle_doubling_grid(s, R));
    }
}

TEST_CASE("separated nets") {
    const auto line = make_line(5);
    CHECK(separated_net(line, 2.0).members == std::vector<int>{0, 2, 4});
    CHECK(separated_net(line, 1.0).members == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(separated_net(line, 10.0).members == std::vector<int>{0});
}

TEST_CASE("separated nets: separation and maximality") {
    Rng rng(99);
    for (int rep = 0; rep < 100; ++rep) {
        const auto s = testutil::random_space(rng, 60);
        const double delta = rng.uniform(0.05, s.n() > 1 ? s.diameter() * 1.2 : 1.0);
        const auto net = separated_net(s, delta);
        REQUIRE(!net.members.empty());
        for (std::size_t a = 0; a < net.members.size(); ++a) {
            for (std::size_t b = a + 1; b < net.members.size(); ++b) {
                CHECK(s.dist(net.members[a], net.members[b]) >= delta);
            }
        }
        for (int x = 0; x < s.n(); ++x) {
            CHECK(s.dist_to_set(x, net.members) < delta);
        }
    }
}

TEST_CASE("generators build valid spaces with exact metric axioms") {
    // build_space walks every triple; constructing these without an exception
    // is the assertion
    (void)make_line(5);
    (void)make_grid(7, 9);
    (void)make_dyadic(6);
    (void)make_random_points(120, 2, 5);
    (void)make_random_points(80, 3, 17);
    Rng rng(5);
    for (int rep = 0; rep < 30; ++rep) (void)testutil::random_space(rng, 80);
}

TEST_CASE("snowflake transforms distances and keeps the metric") {
    const auto s = make_snowflake(make_line(5), 0.5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            CHECK(s.dist(i, j) == std::sqrt(make_line(5).dist(i, j)));
        }
    }
    CHECK_THROWS_AS(make_snowflake(make_line(3), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_snowflake(make_line(3), 0.0), std::invalid_argument);
}

TEST_CASE("graph generator rejects disconnected graphs") {
    CHECK_THROWS_WITH_AS(make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}),
                         doctest::Contains("infinite distances"), std::invalid_argument);
    const auto s = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}});
    CHECK(s.dist(0, 2) == 2.0);  // shortest path beats the direct edge
}

TEST_CASE("ball measure is monotone and bounded by total mass") {
    Rng rng(3);
    for (int rep = 0; rep < 40; ++rep) {
        const auto s = testutil::random_space(rng, 50);
        const int x = rng.index(s.n());
        double prev = 0.0;
        for (double r = 0.1; r < s.diameter() + 1.0; r += 0.3) {
            const double m = s.ball_measure(x, r);
            CHECK(m >= prev);
            CHECK(m > 0.0);
            CHECK(m <= s.total_mass());
            prev = m;
        }
    }
}

TEST_CASE("open_neighborhood is the union of point balls") {
    const auto s = make_line(6);
    CHECK(open_neighborhood(s, {2, 3}, 1.5) == std::vector<int>{1, 2, 3, 4});
    CHECK(open_neighborhood(s, {0}, 1.0) == std::vector<int>{0});
}
