#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "czkit/function.hpp"
#include "czkit/report.hpp"
#include "czkit/space.hpp"

namespace czkit {

// Scalar kernel matrix acting diagonally on vector coordinates:
// (T f)(x) = sum_y K(x,y) f(y) w(y) per coordinate.
struct ScalarKernelOperator {
    const MetricMeasureSpace* space = nullptr;
    std::vector<double> K;  // n*n row-major
    std::vector<int> E;
    std::vector<int> halo;  // B(E, R/2)
    double R = 0.0;
};

ScalarKernelOperator make_operator(const MetricMeasureSpace& s, std::vector<double> K,
                                   std::vector<int> E, double R);

FunctionOnSpace apply_operator(const MetricMeasureSpace& s, const std::vector<double>& K,
                               const FunctionOnSpace& f);

// Exact maximum over ordered pairs y != y' in B(E, R/2) with d(y,y') < R of
// sum over x in E \ B(y, 2 d(y,y')) of |K(x,y) - K(x,y')| w(x).
double hormander_constant(const MetricMeasureSpace& s, const std::vector<double>& K,
                          const std::vector<int>& E, double R);
// the primed (dual) variant: same scan on the transposed kernel
double hormander_constant_dual(const MetricMeasureSpace& s, const std::vector<double>& K,
                               const std::vector<int>& E, double R);

// Upper bound for the operator norm of f -> chi_rows T (chi_cols f) on
// L^r(mu): the largest singular value of the weighted block for r = 2,
// otherwise the Schur interpolation of the L^1 / L^inf row and column bounds.
double operator_norm_bound(const MetricMeasureSpace& s, const std::vector<double>& K,
                           const std::vector<int>& rows, const std::vector<int>& cols,
                           double r_exp);

// Verifies ||T f||_p <= 16 phi(r,p) (D_{3 kappa R}^9 A_R + C_R) ||f||_p over
// seeded random and adversarial f concentrated on E, one report per p.
// Entries with p > r_exp run the dual form (output restricted to E, constants
// from the transposed conditions). A_R may be overridden.
std::vector<BoundReport> check_czo_bound(const MetricMeasureSpace& s,
                                         const std::vector<double>& K,
                                         const std::vector<int>& E, double R, double kappa,
                                         double r_exp, const std::vector<double>& p_list,
                                         int trials, std::uint64_t seed,
                                         std::optional<double> A_override = std::nullopt);

// Patched global bound over the maximal (R/8)-separated net, with the extra
// D_R^{5/p} factor; requires supp K within {d(x,y) <= R/3}.
std::vector<BoundReport> check_patched_bound(const MetricMeasureSpace& s,
                                             const std::vector<double>& K, double R,
                                             double kappa, double r_exp,
                                             const std::vector<double>& p_list, int trials,
                                             std::uint64_t seed);

// Iterated mixed norm over axes Y_1, ..., Y_k, X (innermost first; the last
// axis is X and is contiguous in `values`).
struct MixedNormTensor {
    std::vector<int> axes;
    std::vector<std::vector<double>> weights;  // per axis
    std::vector<double> exponents;             // p_1..p_{k+1}, each in (1, inf)
    std::vector<double> values;                // row-major
};

double mixed_norm(const MixedNormTensor& t);

// Applies the centred maximal operator at truncation 2R along the X axis for
// every Y multi-index and verifies the mixed-norm bound with constant
// (1 + 16^{k+1}) D_R^{25+16k} p_1'^{1/p_1} prod_j phi(p_j, p_{j+1}).
BoundReport check_mixed_maximal(const MetricMeasureSpace& s, const MixedNormTensor& t,
                                double R);

// sup_x mu(B(x, 2R)) / V_{R/126}(x), the Schur row-sum of the coarse-scale
// comparison operator; bounded by D_R^8.
BoundReport check_schur_rowsum(const MetricMeasureSpace& s, double R);

}  // namespace czkit
