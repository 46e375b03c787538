#pragma once

#include <vector>

#include "czkit/function.hpp"
#include "czkit/report.hpp"
#include "czkit/space.hpp"

namespace czkit {

// Truncated centred maximal operator: (M~_R f)(x) = max over r in (0, R] of
// the weighted average of |f| over B(x, r).
std::vector<double> maximal_centred(const MetricMeasureSpace& s,
                                    const std::vector<double>& magnitudes, double R);
std::vector<double> maximal_centred(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                    double R);

// Truncated uncentred maximal operator: sup over balls B(y, r), r in (0, R],
// containing x.
std::vector<double> maximal_uncentred(const MetricMeasureSpace& s,
                                      const std::vector<double>& magnitudes, double R);
std::vector<double> maximal_uncentred(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                      double R);

// M~_R f <= M_R f (exact) and M_R f <= D_R * M~_{2R} f pointwise.
BoundReport check_comparison(const MetricMeasureSpace& s, const FunctionOnSpace& f, double R);

// mu{x in E : M_R f > lambda} <= D_{3R}^4 ||f||_1 / lambda for every lambda in
// the grid (defaults to the distinct positive values of M_R f on E, where the
// level-set measure jumps). Requires diam(E) < 6R.
BoundReport check_weak11(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                         const std::vector<int>& E, double R,
                         std::vector<double> lambda_grid = {});

// ||chi_E M_R f||_p <= 2 p'^(1/p) D_{3R}^(4/p) ||f||_p for p in (1, inf].
BoundReport check_lp_bound(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                           const std::vector<int>& E, double R, double p);

// ball averages at radii below the minimum positive distance equal f(x),
// coordinatewise and exactly
BoundReport check_lebesgue_points(const MetricMeasureSpace& s, const FunctionOnSpace& f);

}  // namespace czkit
