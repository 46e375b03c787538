#pragma once

#include <vector>

#include "czkit/function.hpp"
#include "czkit/report.hpp"
#include "czkit/space.hpp"

namespace czkit {

// C^1 cutoff h with chi_[0,1] <= h <= chi_[-1,eta]: h = 1 on [-1, 1], a cubic
// smoothstep descending to 0 on [1, eta], 0 beyond. eta in (1, 7/6].
struct BumpProfile {
    double eta = 7.0 / 6.0;

    static BumpProfile make(double eta);

    double operator()(double t) const {
        if (t <= 1.0) return 1.0;
        if (t >= eta) return 0.0;
        const double s = (t - 1.0) / (eta - 1.0);
        return 1.0 - s * s * (3.0 - 2.0 * s);
    }

    double lipschitz_bound() const { return 3.0 / (2.0 * (eta - 1.0)); }
};

// Smooth normalized kernel at scale r: symmetric, nonnegative, weighted row
// sums 1, supported within distance 2 eta r, with two-sided size bounds in
// terms of the ball volumes V_r.
struct SmoothKernel {
    int n = 0;
    double r = 0.0;
    double R = 0.0;
    double eta = 0.0;
    double d4r = 1.0;          // D_{4R}
    std::vector<double> S;     // n*n row-major
    std::vector<double> V;     // V_r(x) = mu(B(x, r))
    double empirical_c6 = 0.0; // measured constant of the Lipschitz-type bound

    double entry(int x, int y) const { return S[static_cast<std::size_t>(x) * n + y]; }
    const double* row(int x) const { return S.data() + static_cast<std::size_t>(x) * n; }
};

// (T_r f)(x) = sum_y h(d(x,y)/r) f(y) w(y)
FunctionOnSpace t_r_apply(const MetricMeasureSpace& s, const BumpProfile& h, double r,
                          const FunctionOnSpace& f);
std::vector<double> t_r_one(const MetricMeasureSpace& s, const BumpProfile& h, double r);

SmoothKernel build_kernel(const MetricMeasureSpace& s, const BumpProfile& h, double r, double R);

// Kernels at scales 2^-j R', j = 0..j_max. j_max < 0 selects the default:
// stop once 2^-j R' / 2 drops below the minimum positive distance.
std::vector<SmoothKernel> kernel_family(const MetricMeasureSpace& s, const BumpProfile& h,
                                        double r_prime, int j_max = -1);

// Certifies: support within 2 eta r, exact symmetry, unit weighted row sums,
// the near-diagonal lower bound 1/(D^5 min(V_r(x),V_r(y))), the upper bound
// 2 D^2/(V_r(x)+V_r(y)), entrywise nonnegativity, and reports the measured
// Lipschitz constant (no threshold asserted).
std::vector<BoundReport> certify_kernel(const MetricMeasureSpace& s, const SmoothKernel& k);

}  // namespace czkit
