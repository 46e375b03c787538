#include "czkit/function.hpp"

#include <stdexcept>

namespace czkit {

double lp_norm(const MetricMeasureSpace& s, const std::vector<double>& magnitudes, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must lie in [1, inf]");
    const int n = s.n();
    if (std::isinf(p)) {
        double m = 0.0;
        for (int x = 0; x < n; ++x) m = std::max(m, magnitudes[x]);
        return m;
    }
    if (p == 1.0) {
        double acc = 0.0;
        for (int x = 0; x < n; ++x) acc += magnitudes[x] * s.weight(x);
        return acc;
    }
    if (p == 2.0) {
        double acc = 0.0;
        for (int x = 0; x < n; ++x) acc += magnitudes[x] * magnitudes[x] * s.weight(x);
        return std::sqrt(acc);
    }
    double acc = 0.0;
    for (int x = 0; x < n; ++x) acc += std::pow(magnitudes[x], p) * s.weight(x);
    return std::pow(acc, 1.0 / p);
}

double lp_norm(const MetricMeasureSpace& s, const FunctionOnSpace& f, double p) {
    return lp_norm(s, f.magnitudes(), p);
}

std::vector<double> ball_average(const MetricMeasureSpace& s, const FunctionOnSpace& f, int x,
                                 double r) {
    const int count = s.ball_count(x, r);
    const int m = f.coords();
    std::vector<double> avg(m, 0.0);
    if (count == 1) {
        const double* v = f.row(x);
        for (int c = 0; c < m; ++c) avg[c] = v[c];
        return avg;
    }
    const auto& ord = s.sorted_order(x);
    double mass = 0.0;
    for (int k = 0; k < count; ++k) {
        const int y = ord[k];
        const double w = s.weight(y);
        mass += w;
        const double* v = f.row(y);
        for (int c = 0; c < m; ++c) avg[c] += w * v[c];
    }
    for (int c = 0; c < m; ++c) avg[c] /= mass;
    return avg;
}

double ball_average(const MetricMeasureSpace& s, const std::vector<double>& magnitudes, int x,
                    double r) {
    const int count = s.ball_count(x, r);
    if (count == 1) return magnitudes[x];
    const auto& ord = s.sorted_order(x);
    double mass = 0.0;
    double acc = 0.0;
    for (int k = 0; k < count; ++k) {
        const int y = ord[k];
        const double w = s.weight(y);
        mass += w;
        acc += w * magnitudes[y];
    }
    return acc / mass;
}

}  // namespace czkit
