#include "czkit/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "czkit/rng.hpp"
#include "czkit/simd/kernels.hpp"

namespace czkit {

double DoublingProfile::at(double R) const {
    if (R <= 0.0) throw std::invalid_argument("DoublingProfile::at: R must be positive");
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), R);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

MetricMeasureSpace MetricMeasureSpace::build(std::vector<double> dist_flat,
                                             std::vector<double> weight) {
    const std::size_t n = weight.size();
    if (n == 0) throw std::invalid_argument("build_space: empty point set");
    if (dist_flat.size() != n * n) {
        throw std::invalid_argument("build_space: distance matrix is not n x n");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weight[i] > 0.0)) {
            throw std::invalid_argument("build_space: nonpositive weight at point " +
                                        std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_flat[i * n + i] != 0.0) {
            throw std::invalid_argument("build_space: nonzero diagonal at point " +
                                        std::to_string(i));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = dist_flat[i * n + j];
            if (dij != dist_flat[j * n + i]) {
                throw std::invalid_argument("build_space: asymmetric distances at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (!(dij > 0.0) || !std::isfinite(dij)) {
                throw std::invalid_argument("build_space: distance at (" + std::to_string(i) +
                                            "," + std::to_string(j) +
                                            ") is not positive and finite");
            }
        }
    }
    // d(i,k) <= d(i,j) + d(j,k) for all triples, exact comparison
    const auto& kern = simd::active();
    for (std::size_t i = 0; i < n; ++i) {
        const double* row_i = dist_flat.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double* row_j = dist_flat.data() + j * n;
            const std::size_t k = kern.triangle_violation(row_i, row_j, row_i[j], n);
            if (k != SIZE_MAX) {
                throw std::invalid_argument("build_space: triangle violation at (" +
                                            std::to_string(i) + "," + std::to_string(k) +
                                            ") via " + std::to_string(j));
            }
        }
    }

    MetricMeasureSpace s;
    s.n_ = static_cast<int>(n);
    s.dist_ = std::move(dist_flat);
    s.weight_ = std::move(weight);
    s.build_caches();
    return s;
}

MetricMeasureSpace MetricMeasureSpace::build(const std::vector<std::vector<double>>& dist,
                                             std::vector<double> weight) {
    const std::size_t n = dist.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : dist) {
        if (row.size() != n) throw std::invalid_argument("build_space: ragged distance matrix");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return build(std::move(flat), std::move(weight));
}

void MetricMeasureSpace::build_caches() {
    const int n = n_;
    total_mass_ = 0.0;
    for (double w : weight_) total_mass_ += w;

    order_.assign(n, {});
    sdist_.assign(n, {});
    pweight_.assign(n, {});
    critical_.clear();
    diameter_ = 0.0;
    min_positive_ = std::numeric_limits<double>::infinity();

    for (int x = 0; x < n; ++x) {
        auto& ord = order_[x];
        ord.resize(n);
        std::iota(ord.begin(), ord.end(), 0);
        const double* row = dist_row(x);
        std::stable_sort(ord.begin(), ord.end(),
                         [row](int a, int b) { return row[a] < row[b]; });
        auto& sd = sdist_[x];
        auto& pw = pweight_[x];
        sd.resize(n);
        pw.resize(n);
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            sd[k] = row[ord[k]];
            acc += weight_[ord[k]];
            pw[k] = acc;
        }
        if (n > 1) {
            diameter_ = std::max(diameter_, sd[n - 1]);
            min_positive_ = std::min(min_positive_, sd[1]);
        }
    }
    if (n == 1) min_positive_ = 0.0;

    critical_.assign(dist_.begin(), dist_.end());
    std::sort(critical_.begin(), critical_.end());
    critical_.erase(std::unique(critical_.begin(), critical_.end()), critical_.end());
    if (!critical_.empty() && critical_.front() == 0.0) critical_.erase(critical_.begin());
}

int MetricMeasureSpace::ball_count(int x, double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    const auto& sd = sdist_[x];
    return static_cast<int>(std::lower_bound(sd.begin(), sd.end(), r) - sd.begin());
}

std::vector<int> MetricMeasureSpace::ball_members(int x, double r) const {
    const int c = ball_count(x, r);
    std::vector<int> out(order_[x].begin(), order_[x].begin() + c);
    std::sort(out.begin(), out.end());
    return out;
}

double MetricMeasureSpace::ball_measure(int x, double r) const {
    const int c = ball_count(x, r);
    return c > 0 ? pweight_[x][c - 1] : 0.0;
}

double MetricMeasureSpace::min_positive_distance(int x) const {
    return n_ > 1 ? sdist_[x][1] : 0.0;
}

double MetricMeasureSpace::dist_to_set(int x, const std::vector<int>& S) const {
    if (S.empty()) throw std::invalid_argument("dist_to_set: empty set");
    double m = std::numeric_limits<double>::infinity();
    const double* row = dist_row(x);
    for (int s : S) m = std::min(m, row[s]);
    return m;
}

double MetricMeasureSpace::set_diameter(const std::vector<int>& S) const {
    double m = 0.0;
    for (std::size_t a = 0; a < S.size(); ++a) {
        const double* row = dist_row(S[a]);
        for (std::size_t b = a + 1; b < S.size(); ++b) m = std::max(m, row[S[b]]);
    }
    return m;
}

namespace {

// sup over r in (0, R] of mu(B(x,2r))/mu(B(x,r)) for one center. The ratio is
// piecewise constant with value changes only at the row's {d, d/2}; it is
// evaluated at each such candidate <= R (right endpoint of its interval) and
// at R itself.
double row_doubling_sup(const MetricMeasureSpace& s, int x, double R) {
    const auto& sd = s.sorted_dist(x);
    double best = 1.0;
    auto eval = [&](double r) {
        const double num = s.ball_measure(x, 2.0 * r);
        const double den = s.ball_measure(x, r);
        const double ratio = num / den;
        if (ratio > best) best = ratio;
    };
    for (std::size_t k = 1; k < sd.size(); ++k) {
        if (sd[k] == sd[k - 1]) continue;
        const double d = sd[k];
        if (d <= R) eval(d);
        if (d / 2.0 <= R) eval(d / 2.0);
    }
    eval(R);
    return best;
}

}  // namespace

double doubling_constant(const MetricMeasureSpace& s, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("doubling_constant: R must be positive");
    double best = 1.0;
    for (int x = 0; x < s.n(); ++x) best = std::max(best, row_doubling_sup(s, x, R));
    return best;
}

DoublingProfile doubling_profile(const MetricMeasureSpace& s, double r_max) {
    if (!(r_max > 0.0)) throw std::invalid_argument("doubling_profile: r_max must be positive");

    // events (a, G): some center's running sup becomes G for every R > a
    std::vector<std::pair<double, double>> events;
    for (int x = 0; x < s.n(); ++x) {
        const auto& sd = s.sorted_dist(x);
        std::vector<double> cands;
        cands.reserve(2 * sd.size());
        for (std::size_t k = 1; k < sd.size(); ++k) {
            if (sd[k] == sd[k - 1]) continue;
            cands.push_back(sd[k] / 2.0);
            cands.push_back(sd[k]);
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        double prev = 0.0;
        double running = 0.0;
        for (double c : cands) {
            const double ratio = s.ball_measure(x, 2.0 * c) / s.ball_measure(x, c);
            if (ratio > running) {
                running = ratio;
                events.emplace_back(prev, running);
            }
            prev = c;
        }
        if (running == 0.0) events.emplace_back(0.0, 1.0);
    }
    std::sort(events.begin(), events.end());

    DoublingProfile p;
    p.r_max = r_max;
    double current = 1.0;
    p.values.push_back(current);
    double beyond = current;
    for (const auto& [a, g] : events) {
        if (a >= r_max) {
            beyond = std::max(beyond, g);
            continue;
        }
        if (g > current) {
            if (a > 0.0) {
                p.breakpoints.push_back(a);
                p.values.push_back(g);
            } else {
                p.values.back() = g;
            }
            current = g;
        }
    }
    p.exact = beyond <= current;
    return p;
}

SeparatedNet separated_net(const MetricMeasureSpace& s, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("separated_net: delta must be positive");
    SeparatedNet net;
    net.delta = delta;
    for (int x = 0; x < s.n(); ++x) {
        bool ok = true;
        const double* row = s.dist_row(x);
        for (int m : net.members) {
            if (row[m] < delta) {
                ok = false;
                break;
            }
        }
        if (ok) net.members.push_back(x);
    }
    return net;
}

std::vector<int> open_neighborhood(const MetricMeasureSpace& s, const std::vector<int>& S,
                                   double rho) {
    std::vector<int> out;
    for (int y = 0; y < s.n(); ++y) {
        if (s.dist_to_set(y, S) < rho) out.push_back(y);
    }
    return out;
}

// --- generators ---

namespace {

MetricMeasureSpace from_flat(std::vector<double> flat, int n) {
    return MetricMeasureSpace::build(std::move(flat), std::vector<double>(n, 1.0));
}

}  // namespace

MetricMeasureSpace make_line(int n, double spacing) {
    if (n < 1 || !(spacing > 0.0)) throw std::invalid_argument("make_line: invalid parameters");
    std::vector<double> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            flat[static_cast<std::size_t>(i) * n + j] = std::abs(i - j) * spacing;
        }
    }
    return from_flat(std::move(flat), n);
}

MetricMeasureSpace make_grid(int nx, int ny) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("make_grid: invalid parameters");
    const int n = nx * ny;
    std::vector<double> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        const double ax = a % nx, ay = a / nx;
        for (int b = 0; b < n; ++b) {
            const double bx = b % nx, by = b / nx;
            flat[static_cast<std::size_t>(a) * n + b] = std::hypot(ax - bx, ay - by);
        }
    }
    return from_flat(std::move(flat), n);
}

MetricMeasureSpace make_graph(int n, const std::vector<std::array<double, 3>>& edges) {
    if (n < 1) throw std::invalid_argument("make_graph: invalid point count");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (const auto& e : edges) {
        const int i = static_cast<int>(e[0]);
        const int j = static_cast<int>(e[1]);
        const double w = e[2];
        if (i < 0 || i >= n || j < 0 || j >= n || i == j || !(w > 0.0)) {
            throw std::invalid_argument("make_graph: malformed edge");
        }
        auto& dij = d[static_cast<std::size_t>(i) * n + j];
        dij = std::min(dij, w);
        d[static_cast<std::size_t>(j) * n + i] = dij;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const double dik = d[static_cast<std::size_t>(i) * n + k];
            if (dik == inf) continue;
            for (int j = 0; j < n; ++j) {
                const double via = dik + d[static_cast<std::size_t>(k) * n + j];
                auto& dij = d[static_cast<std::size_t>(i) * n + j];
                if (via < dij) dij = via;
            }
        }
    }
    for (double v : d) {
        if (v == inf) {
            throw std::invalid_argument("make_graph: disconnected graph has infinite distances");
        }
    }
    return from_flat(std::move(d), n);
}

MetricMeasureSpace make_dyadic(int depth, double scale) {
    if (depth < 0 || depth > 20 || !(scale > 0.0)) {
        throw std::invalid_argument("make_dyadic: invalid parameters");
    }
    const int n = 1 << depth;
    std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const unsigned x = static_cast<unsigned>(i ^ j);
            const int level = std::bit_width(x);  // levels to ascend
            const double dij = scale * std::ldexp(1.0, level - depth);
            flat[static_cast<std::size_t>(i) * n + j] = dij;
            flat[static_cast<std::size_t>(j) * n + i] = dij;
        }
    }
    return from_flat(std::move(flat), n);
}

MetricMeasureSpace make_snowflake(const MetricMeasureSpace& inner, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("make_snowflake: alpha must lie in (0,1)");
    }
    const int n = inner.n();
    std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                flat[static_cast<std::size_t>(i) * n + j] = std::pow(inner.dist(i, j), alpha);
            }
        }
    }
    return MetricMeasureSpace::build(std::move(flat), inner.weights());
}

MetricMeasureSpace make_random_points(int n, int dim, std::uint64_t seed, double p) {
    if (n < 1 || dim < 1 || !(p >= 1.0)) {
        throw std::invalid_argument("make_random_points: invalid parameters");
    }
    Rng rng(seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(n);
    while (static_cast<int>(pts.size()) < n) {
        std::vector<double> q(dim);
        for (double& c : q) {
            c = static_cast<double>(rng.below(1u << 20)) * 0x1.0p-20;
        }
        bool dup = false;
        for (const auto& other : pts) {
            if (other == q) {
                dup = true;
                break;
            }
        }
        if (!dup) pts.push_back(std::move(q));
    }
    std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dij;
            if (std::isinf(p)) {
                dij = 0.0;
                for (int c = 0; c < dim; ++c) dij = std::max(dij, std::fabs(pts[i][c] - pts[j][c]));
            } else if (p == 2.0) {
                double acc = 0.0;
                for (int c = 0; c < dim; ++c) {
                    const double t = pts[i][c] - pts[j][c];
                    acc += t * t;
                }
                dij = std::sqrt(acc);
            } else {
                double acc = 0.0;
                for (int c = 0; c < dim; ++c) acc += std::pow(std::fabs(pts[i][c] - pts[j][c]), p);
                dij = std::pow(acc, 1.0 / p);
            }
            flat[static_cast<std::size_t>(i) * n + j] = dij;
            flat[static_cast<std::size_t>(j) * n + i] = dij;
        }
    }
    return from_flat(std::move(flat), n);
}

MetricMeasureSpace with_weights(const MetricMeasureSpace& s, std::vector<double> weight) {
    std::vector<double> flat(s.dist_row(0), s.dist_row(0) + static_cast<std::size_t>(s.n()) * s.n());
    return MetricMeasureSpace::build(std::move(flat), std::move(weight));
}

MetricMeasureSpace with_random_weights(const MetricMeasureSpace& s, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> w(s.n());
    for (double& v : w) v = rng.dyadic(0.5, 2.0, 10);
    return with_weights(s, std::move(w));
}

}  // namespace czkit
