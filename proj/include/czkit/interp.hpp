#pragma once

#include <utility>

namespace czkit {

// phi(r, p) = inf over q in (1, p) of (q' + 1/(r/q - 1))^((1/p - 1/r)/(1 - q/r))
// for p in (1, r], extended by phi(r, p) = phi(r', p') for p >= r. r may be
// infinity (represented by the IEEE infinity), where phi(inf, p) = p'^(1/p).
struct PhiQuery {
    enum class Method { closed_form, minimized, symmetry };
    double r = 0.0;
    double p = 0.0;
    double value = 0.0;
    double minimizer_q = 0.0;  // located q when minimized, 0 otherwise
    Method method = Method::closed_form;
};

PhiQuery phi_query(double r, double p);
double phi(double r, double p);

// The two closed-form upper bounds: first the sqrt(r)-regime bound
// ((sqrt r + 1)/(sqrt r - 1))^((1/p - 1/r)/(1 - 1/sqrt r)) valid for
// sqrt(r) <= p <= r, then (p' + 1/(r/p - 1))^(1/p) valid for p <= sqrt(r)
// (infinite at p = r). Requires p in (1, r], r finite.
std::pair<double, double> phi_upper_bounds(double r, double p);

// 2 phi(r,p) A^(r'(1/p - 1/r)) B^(r'/p') for A, B > 0 and p in (1, r].
double marcinkiewicz_constant(double A, double B, double r, double p);

// Sampled supremum of phi over r, p in [c1, inf] with
// p <= min(c2 r, r / (1 - c2/log r)_+), on a log-spaced grid with `grid`
// points per axis. Finite output certifies the boundedness claim empirically.
double phi_region_sup(double c1, double c2, int grid);

}  // namespace czkit
