#pragma once

#include <vector>

#include "czkit/function.hpp"
#include "czkit/report.hpp"
#include "czkit/space.hpp"

namespace czkit {

// Local Calderon-Zygmund decomposition f = g + sum_x h_x at threshold alpha:
// bad set U_alpha = {M_{kappa R} f > alpha}, Whitney balls B(x, r(x)) covering
// it, partition weights eta_x = chi_B / overlap, localized mean-zero pieces
// h_x and the bounded remainder g.
struct CZDecomposition {
    double alpha = 0.0;
    double kappa = 0.0;
    double R = 0.0;
    std::vector<int> E;
    std::vector<int> bad_set;              // U_alpha, ascending
    std::vector<int> centers;              // N, selection order
    std::vector<double> radii;             // r: N -> (0, R]
    std::vector<std::vector<int>> members; // B(x, r(x)) per center, ascending
    std::vector<int> overlap;              // sum_x chi_B per point
    std::vector<std::vector<double>> ball_avg;  // dashint f eta_x per center, per coord
    FunctionOnSpace g;
    std::vector<FunctionOnSpace> h;        // aligned with centers
    double admissibility_threshold = 0.0;  // D_{3 kappa R}^4 ||f||_1 / mu(E)
};

// Smallest admissible threshold for (space, f, E, R, kappa).
double czd_admissibility_threshold(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                   const std::vector<int>& E, double R, double kappa);

// Requires mu(E) > 0, diam(E) < R, f concentrated in E, kappa in (2, 3], and
// alpha above the admissibility threshold.
CZDecomposition cz_decompose(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                             const std::vector<int>& E, double R, double kappa, double alpha);

// The seven conclusions, one report each:
//  (1) f = g + sum h_x           (residual <= 1e-10 relative)
//  (2) ||g||_inf <= D^2 alpha and supp g in B(E, R/2)
//  (3) ||g||_1 <= 3 ||f||_1
//  (4) supp h_x in B(x,r(x)) in B(E, R/2); sum mu(B) <= D^6 ||f||_1 / alpha
//  (5) mean-zero h_x             (<= 1e-10 relative)
//  (6) ||h_x||_inf <= 2 ||f||_inf; sum ||h_x||_1 <= 2 ||f||_1
//  (7) overlap <= D^5
// with D = D_{3 kappa R}.
std::vector<BoundReport> certify_czd(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                     const CZDecomposition& dec);

}  // namespace czkit
