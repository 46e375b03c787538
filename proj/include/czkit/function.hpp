#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "czkit/space.hpp"

namespace czkit {

// Vector-valued function on a space: n x m values (point x coordinate) with a
// declared coordinate norm |f(x)| = l^q of the row (default l^2).
class FunctionOnSpace {
public:
    FunctionOnSpace() = default;
    FunctionOnSpace(int n, int m, double vec_norm_q = 2.0)
        : n_(n), m_(m), q_(vec_norm_q), values_(static_cast<std::size_t>(n) * m, 0.0) {}
    FunctionOnSpace(int n, int m, std::vector<double> values, double vec_norm_q = 2.0)
        : n_(n), m_(m), q_(vec_norm_q), values_(std::move(values)) {}

    int points() const { return n_; }
    int coords() const { return m_; }
    double vec_norm_q() const { return q_; }

    double value(int x, int c) const { return values_[static_cast<std::size_t>(x) * m_ + c]; }
    void set(int x, int c, double v) { values_[static_cast<std::size_t>(x) * m_ + c] = v; }
    const double* row(int x) const { return values_.data() + static_cast<std::size_t>(x) * m_; }
    double* row(int x) { return values_.data() + static_cast<std::size_t>(x) * m_; }
    const std::vector<double>& values() const { return values_; }

    // |f|(x)
    double magnitude(int x) const {
        const double* v = row(x);
        if (m_ == 1) return std::fabs(v[0]);
        if (std::isinf(q_)) {
            double m = 0.0;
            for (int c = 0; c < m_; ++c) m = std::max(m, std::fabs(v[c]));
            return m;
        }
        if (q_ == 2.0) {
            double acc = 0.0;
            for (int c = 0; c < m_; ++c) acc += v[c] * v[c];
            return std::sqrt(acc);
        }
        if (q_ == 1.0) {
            double acc = 0.0;
            for (int c = 0; c < m_; ++c) acc += std::fabs(v[c]);
            return acc;
        }
        double acc = 0.0;
        for (int c = 0; c < m_; ++c) acc += std::pow(std::fabs(v[c]), q_);
        return std::pow(acc, 1.0 / q_);
    }

    std::vector<double> magnitudes() const {
        std::vector<double> out(n_);
        for (int x = 0; x < n_; ++x) out[x] = magnitude(x);
        return out;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        for (int x = 0; x < n_; ++x) {
            const double* v = row(x);
            for (int c = 0; c < m_; ++c) {
                if (v[c] != 0.0) {
                    out.push_back(x);
                    break;
                }
            }
        }
        return out;
    }

private:
    int n_ = 0;
    int m_ = 0;
    double q_ = 2.0;
    std::vector<double> values_;
};

// (sum_x |f(x)|^p w(x))^(1/p) for finite p; max over x for p = infinity.
double lp_norm(const MetricMeasureSpace& s, const FunctionOnSpace& f, double p);
double lp_norm(const MetricMeasureSpace& s, const std::vector<double>& magnitudes, double p);

// weighted average of f over B(x, r), one value per coordinate; singleton
// balls return the point's row directly (the exact average)
std::vector<double> ball_average(const MetricMeasureSpace& s, const FunctionOnSpace& f, int x,
                                 double r);
// same for a scalar magnitude vector
double ball_average(const MetricMeasureSpace& s, const std::vector<double>& magnitudes, int x,
                    double r);

}  // namespace czkit
