#include "czkit/interp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace czkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate(double p) { return p / (p - 1.0); }

// log of the objective (q' + 1/(r/q - 1))^((1/p - 1/r)/(1 - q/r))
double log_objective(double r, double p, double q) {
    const double base = conjugate(q) + 1.0 / (r / q - 1.0);
    const double expo = (1.0 / p - 1.0 / r) / (1.0 - q / r);
    return expo * std::log(base);
}

void validate(double r, double p) {
    if (!(r > 1.0)) throw std::invalid_argument("phi: r must lie in (1, inf]");
    if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("phi: p must lie in (1, inf)");
}

}  // namespace

PhiQuery phi_query(double r, double p) {
    validate(r, p);
    PhiQuery q;
    q.r = r;
    q.p = p;
    if (p == r) {
        q.value = 1.0;  // zero exponent
        q.method = PhiQuery::Method::closed_form;
        return q;
    }
    if (p > r) {
        PhiQuery dual = phi_query(conjugate(r), conjugate(p));
        q.value = dual.value;
        q.minimizer_q = dual.minimizer_q;
        q.method = PhiQuery::Method::symmetry;
        return q;
    }
    if (std::isinf(r)) {
        q.value = std::pow(conjugate(p), 1.0 / p);
        q.method = PhiQuery::Method::closed_form;
        return q;
    }

    // The infimum may be approached at either end; clamp the domain slightly
    // inside (1, p), include the endpoints, and golden-section from a coarse
    // bracket (the objective need not be unimodal on all of (1, p)).
    const double lo = 1.0 + 1e-8;
    const double hi = p - 1e-8;
    q.method = PhiQuery::Method::minimized;
    if (hi <= lo) {
        const double mid = 0.5 * (1.0 + p);
        q.minimizer_q = mid;
        q.value = std::exp(log_objective(r, p, mid));
        return q;
    }

    constexpr int kScan = 256;
    double best_q = lo;
    double best_v = log_objective(r, p, lo);
    for (int i = 1; i <= kScan; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / kScan;
        const double v = log_objective(r, p, t);
        if (v < best_v) {
            best_v = v;
            best_q = t;
        }
    }
    double a = std::max(lo, best_q - (hi - lo) / kScan);
    double b = std::min(hi, best_q + (hi - lo) / kScan);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = log_objective(r, p, c);
    double fd = log_objective(r, p, d);
    while (b - a > 1e-12 * std::max(1.0, std::fabs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = log_objective(r, p, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = log_objective(r, p, d);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fm = log_objective(r, p, mid);
    if (fm < best_v) {
        best_v = fm;
        best_q = mid;
    }
    q.minimizer_q = best_q;
    q.value = std::exp(best_v);
    return q;
}

double phi(double r, double p) { return phi_query(r, p).value; }

std::pair<double, double> phi_upper_bounds(double r, double p) {
    validate(r, p);
    if (std::isinf(r) || p > r) {
        throw std::invalid_argument("phi_upper_bounds: requires p in (1, r], r finite");
    }
    const double sq = std::sqrt(r);
    const double sqrt_regime =
        std::pow((sq + 1.0) / (sq - 1.0), (1.0 / p - 1.0 / r) / (1.0 - 1.0 / sq));
    const double small_p =
        p == r ? kInf : std::pow(conjugate(p) + 1.0 / (r / p - 1.0), 1.0 / p);
    return {sqrt_regime, small_p};
}

double marcinkiewicz_constant(double A, double B, double r, double p) {
    validate(r, p);
    if (!(A > 0.0) || !(B > 0.0)) {
        throw std::invalid_argument("marcinkiewicz_constant: A, B must be positive");
    }
    if (p > r) throw std::invalid_argument("marcinkiewicz_constant: requires p <= r");
    const double r_conj = std::isinf(r) ? 1.0 : conjugate(r);
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    return 2.0 * phi(r, p) * std::pow(A, r_conj * (1.0 / p - inv_r)) *
           std::pow(B, r_conj * (1.0 - 1.0 / p));
}

double phi_region_sup(double c1, double c2, int grid) {
    if (!(c1 > 1.0) || !(c2 > 1.0)) {
        throw std::invalid_argument("phi_region_sup: c1, c2 must exceed 1");
    }
    if (grid < 1) throw std::invalid_argument("phi_region_sup: grid must be positive");

    constexpr double kCap = 1e6;  // finite stand-in for the unbounded axes
    std::vector<double> rs;
    if (grid == 1) {
        rs.push_back(c1);
    } else {
        const double step = std::log(kCap / c1) / (grid - 1);
        for (int i = 0; i < grid - 1; ++i) rs.push_back(c1 * std::exp(step * i));
        rs.push_back(kInf);
    }
    double sup = 0.0;
    for (double r : rs) {
        double p_max = kCap;
        if (!std::isinf(r)) {
            p_max = c2 * r;
            const double denom = 1.0 - c2 / std::log(r);
            if (denom > 0.0) p_max = std::min(p_max, r / denom);
        }
        for (int j = 0; j < grid; ++j) {
            const double t = grid == 1 ? 0.0 : static_cast<double>(j) / (grid - 1);
            const double p = c1 * std::pow(p_max / c1, t);
            if (!(p > 1.0) || std::isinf(p)) continue;
            sup = std::max(sup, phi(r, p));
        }
    }
    return sup;
}

}  // namespace czkit
