#include "czkit/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace czkit {
namespace {

void require_radius(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("maximal: R must be positive");
}

// Balls around y are prefixes of the distance-sorted row. Prefix [0..k] is an
// achievable ball for r in (0, R] iff it ends a tie group and sd[k] < R.
inline bool prefix_is_ball(const std::vector<double>& sd, int k, int n, double R) {
    return sd[k] < R && (k == n - 1 || sd[k + 1] > sd[k]);
}

}  // namespace

std::vector<double> maximal_centred(const MetricMeasureSpace& s,
                                    const std::vector<double>& magnitudes, double R) {
    require_radius(R);
    const int n = s.n();
    std::vector<double> out(n, 0.0);
    for (int x = 0; x < n; ++x) {
        const auto& ord = s.sorted_order(x);
        const auto& sd = s.sorted_dist(x);
        const auto& pw = s.prefix_weight(x);
        double best = magnitudes[x];  // singleton ball, exact
        double acc = s.weight(x) * magnitudes[x];
        for (int k = 1; k < n; ++k) {
            acc += s.weight(ord[k]) * magnitudes[ord[k]];
            if (prefix_is_ball(sd, k, n, R)) best = std::max(best, acc / pw[k]);
        }
        out[x] = best;
    }
    return out;
}

std::vector<double> maximal_centred(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                    double R) {
    return maximal_centred(s, f.magnitudes(), R);
}

std::vector<double> maximal_uncentred(const MetricMeasureSpace& s,
                                      const std::vector<double>& magnitudes, double R) {
    require_radius(R);
    const int n = s.n();
    std::vector<double> out(n, 0.0);
    std::vector<double> avg(n);
    for (int y = 0; y < n; ++y) {
        const auto& ord = s.sorted_order(y);
        const auto& sd = s.sorted_dist(y);
        const auto& pw = s.prefix_weight(y);
        avg[0] = prefix_is_ball(sd, 0, n, R) ? magnitudes[y]
                                             : -std::numeric_limits<double>::infinity();
        double acc = s.weight(y) * magnitudes[y];
        for (int k = 1; k < n; ++k) {
            acc += s.weight(ord[k]) * magnitudes[ord[k]];
            avg[k] = prefix_is_ball(sd, k, n, R)
                         ? acc / pw[k]
                         : -std::numeric_limits<double>::infinity();
        }
        // every member of prefix [0..k] sees all achievable balls ending at or
        // after position k
        double run = -std::numeric_limits<double>::infinity();
        for (int k = n - 1; k >= 0; --k) {
            run = std::max(run, avg[k]);
            const int z = ord[k];
            if (run > out[z]) out[z] = run;
        }
    }
    return out;
}

std::vector<double> maximal_uncentred(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                      double R) {
    return maximal_uncentred(s, f.magnitudes(), R);
}

BoundReport check_comparison(const MetricMeasureSpace& s, const FunctionOnSpace& f, double R) {
    const auto mags = f.magnitudes();
    const auto centred = maximal_centred(s, mags, R);
    const auto uncentred = maximal_uncentred(s, mags, R);
    const auto centred2 = maximal_centred(s, mags, 2.0 * R);
    const double D = doubling_constant(s, R);

    bool lower_ok = true;
    int lower_witness = -1;
    for (int x = 0; x < s.n(); ++x) {
        if (centred[x] > uncentred[x]) {
            lower_ok = false;
            lower_witness = x;
            break;
        }
    }
    double worst = 0.0;
    int witness = -1;
    for (int x = 0; x < s.n(); ++x) {
        if (centred2[x] > 0.0) {
            const double ratio = uncentred[x] / centred2[x];
            if (ratio > worst) {
                worst = ratio;
                witness = x;
            }
        } else if (uncentred[x] > 0.0) {
            worst = std::numeric_limits<double>::infinity();
            witness = x;
        }
    }
    BoundReport r = BoundReport::make("maximal comparison chain", D, worst, 1.0,
                                      witness >= 0 ? "x=" + std::to_string(witness) : "");
    if (!lower_ok) {
        r.pass = false;
        r.witness = "centred > uncentred at x=" + std::to_string(lower_witness);
    }
    return r;
}

BoundReport check_weak11(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                         const std::vector<int>& E, double R, std::vector<double> lambda_grid) {
    const double diam = s.set_diameter(E);
    if (!(diam < 6.0 * R)) throw std::invalid_argument("check_weak11: diam(E) must be < 6R");
    const auto mags = f.magnitudes();
    const auto m = maximal_uncentred(s, mags, R);
    const double l1 = lp_norm(s, mags, 1.0);

    if (lambda_grid.empty()) {
        for (int x : E) {
            if (m[x] > 0.0) lambda_grid.push_back(m[x]);
        }
        std::sort(lambda_grid.begin(), lambda_grid.end());
        lambda_grid.erase(std::unique(lambda_grid.begin(), lambda_grid.end()),
                          lambda_grid.end());
    }

    const double D4 = std::pow(doubling_constant(s, 3.0 * R), 4.0);
    double worst = 0.0;
    double worst_lambda = 0.0;
    for (double lambda : lambda_grid) {
        if (!(lambda > 0.0)) continue;
        double level = 0.0;
        for (int x : E) {
            if (m[x] > lambda) level += s.weight(x);
        }
        const double lhs = level * lambda;
        if (lhs > worst) {
            worst = lhs;
            worst_lambda = lambda;
        }
    }
    return BoundReport::make("maximal weak (1,1)", D4, worst, l1,
                             worst_lambda > 0.0 ? "lambda=" + std::to_string(worst_lambda) : "");
}

BoundReport check_lp_bound(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                           const std::vector<int>& E, double R, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("check_lp_bound: p must lie in (1, inf]");
    const double diam = s.set_diameter(E);
    if (!(diam < 6.0 * R)) throw std::invalid_argument("check_lp_bound: diam(E) must be < 6R");
    const auto mags = f.magnitudes();
    const auto m = maximal_uncentred(s, mags, R);

    std::vector<double> restricted(s.n(), 0.0);
    for (int x : E) restricted[x] = m[x];

    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double p_conj = std::isinf(p) ? 1.0 : p / (p - 1.0);
    const double claimed =
        2.0 * std::pow(p_conj, inv_p) * std::pow(doubling_constant(s, 3.0 * R), 4.0 * inv_p);
    return BoundReport::make("maximal L^p bound p=" + std::to_string(p), claimed,
                             lp_norm(s, restricted, p), lp_norm(s, mags, p));
}

BoundReport check_lebesgue_points(const MetricMeasureSpace& s, const FunctionOnSpace& f) {
    double worst = 0.0;
    int witness = -1;
    for (int x = 0; x < s.n(); ++x) {
        const double r = s.n() > 1 ? s.min_positive_distance(x) : 1.0;
        const auto avg = ball_average(s, f, x, r);
        for (int c = 0; c < f.coords(); ++c) {
            const double dev = std::fabs(avg[c] - f.value(x, c));
            if (dev > worst) {
                worst = dev;
                witness = x;
            }
        }
    }
    return BoundReport::make("lebesgue point equality", 0.0, worst, 0.0,
                             witness >= 0 ? "x=" + std::to_string(witness) : "");
}

}  // namespace czkit
