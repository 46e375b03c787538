#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace czkit {

// Open ball: membership is d(center, y) < radius.
struct Ball {
    int center = 0;
    double radius = 0.0;
};

// Exact map R -> D_R as a piecewise-constant function. values[i] applies on
// the interval (breakpoints[i-1], breakpoints[i]], with breakpoints[-1] = 0
// and the last value extending to r_max (and beyond, when `exact`).
struct DoublingProfile {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double r_max = 0.0;
    bool exact = false;  // last value equals D_R for every R >= r_max

    double at(double R) const;
};

struct SeparatedNet {
    double delta = 0.0;
    std::vector<int> members;
};

// Finite metric measure space: point set {0..n-1}, symmetric distance matrix
// with zero diagonal and exact triangle inequality, strictly positive point
// weights. Immutable after build; safe to share across threads.
class MetricMeasureSpace {
public:
    static MetricMeasureSpace build(std::vector<double> dist_flat, std::vector<double> weight);
    static MetricMeasureSpace build(const std::vector<std::vector<double>>& dist,
                                    std::vector<double> weight);

    int n() const { return n_; }
    double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
    const double* dist_row(int i) const { return dist_.data() + static_cast<std::size_t>(i) * n_; }
    double weight(int i) const { return weight_[i]; }
    const std::vector<double>& weights() const { return weight_; }
    double total_mass() const { return total_mass_; }
    double diameter() const { return diameter_; }

    // sorted deduplicated positive entries of the distance matrix
    const std::vector<double>& critical_distances() const { return critical_; }

    // per-row caches: indices sorted by distance from x (ties by index),
    // the distances in that order, and prefix sums of weights in that order
    const std::vector<int>& sorted_order(int x) const { return order_[x]; }
    const std::vector<double>& sorted_dist(int x) const { return sdist_[x]; }
    const std::vector<double>& prefix_weight(int x) const { return pweight_[x]; }

    // number of points with dist(x, y) < r
    int ball_count(int x, double r) const;
    // members of B(x, r), ascending indices
    std::vector<int> ball_members(int x, double r) const;
    // mu(B(x, r)); canonical evaluation via the sorted-prefix sums
    double ball_measure(int x, double r) const;

    double min_positive_distance(int x) const;
    double min_positive_distance() const { return min_positive_; }

    // min over s in S of dist(x, s); S must be nonempty
    double dist_to_set(int x, const std::vector<int>& S) const;
    double set_diameter(const std::vector<int>& S) const;

private:
    MetricMeasureSpace() = default;
    void build_caches();

    int n_ = 0;
    std::vector<double> dist_;    // n*n row-major
    std::vector<double> weight_;  // n
    std::vector<double> critical_;
    std::vector<std::vector<int>> order_;
    std::vector<std::vector<double>> sdist_;
    std::vector<std::vector<double>> pweight_;
    double total_mass_ = 0.0;
    double diameter_ = 0.0;
    double min_positive_ = 0.0;
};

// Least D >= 1 with mu(B(x,2r)) <= D * mu(B(x,r)) for all x and r in (0, R].
// Exact: the supremum is enumerated over the per-row critical radii {d, d/2}.
double doubling_constant(const MetricMeasureSpace& s, double R);

DoublingProfile doubling_profile(const MetricMeasureSpace& s, double r_max);

// Greedy maximal delta-separated set, scanning points in index order.
SeparatedNet separated_net(const MetricMeasureSpace& s, double delta);

// B(S, rho) = {y : d(y, S) < rho}, ascending indices.
std::vector<int> open_neighborhood(const MetricMeasureSpace& s, const std::vector<int>& S,
                                   double rho);

// --- generators (deterministic given their arguments / seed) ---

MetricMeasureSpace make_line(int n, double spacing = 1.0);
MetricMeasureSpace make_grid(int nx, int ny);
// undirected weighted graph, shortest-path metric; throws if disconnected
MetricMeasureSpace make_graph(int n, const std::vector<std::array<double, 3>>& edges);
// 2^depth leaves of a binary tree, d(i,j) = scale * 2^(level of split - depth)
MetricMeasureSpace make_dyadic(int depth, double scale = 1.0);
// distances d^alpha, alpha in (0,1)
MetricMeasureSpace make_snowflake(const MetricMeasureSpace& inner, double alpha);
// n distinct points on the dyadic lattice (2^-20 grid) in [0,1]^dim, l^p metric
MetricMeasureSpace make_random_points(int n, int dim, std::uint64_t seed, double p = 2.0);
// same metric, new weights
MetricMeasureSpace with_weights(const MetricMeasureSpace& s, std::vector<double> weight);
// weights on the dyadic lattice in [0.5, 2]
MetricMeasureSpace with_random_weights(const MetricMeasureSpace& s, std::uint64_t seed);

}  // namespace czkit
