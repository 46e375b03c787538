#include "czkit/bounds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "czkit/interp.hpp"
#include "czkit/maximal.hpp"
#include "czkit/rng.hpp"
#include "czkit/simd/kernels.hpp"

namespace czkit {
namespace {

std::vector<double> transpose(const std::vector<double>& K, int n) {
    std::vector<double> T(K.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            T[static_cast<std::size_t>(j) * n + i] = K[static_cast<std::size_t>(i) * n + j];
        }
    }
    return T;
}

double hormander_scan(const MetricMeasureSpace& s, const std::vector<double>& KT,
                      const std::vector<int>& E, const std::vector<int>& halo, double R) {
    const int n = s.n();
    std::vector<double> wE(n, 0.0);
    for (int x : E) wE[x] = s.weight(x);
    const auto& kern = simd::active();
    double best = 0.0;
    for (int y : halo) {
        const double* col_y = KT.data() + static_cast<std::size_t>(y) * n;
        const double* row_y = s.dist_row(y);
        for (int yp : halo) {
            if (yp == y) continue;
            const double d = row_y[yp];
            if (!(d > 0.0) || !(d < R)) continue;
            const double* col_yp = KT.data() + static_cast<std::size_t>(yp) * n;
            const double v = kern.l1_diff_masked(col_y, col_yp, wE.data(), row_y, 2.0 * d,
                                                 static_cast<std::size_t>(n));
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace

ScalarKernelOperator make_operator(const MetricMeasureSpace& s, std::vector<double> K,
                                   std::vector<int> E, double R) {
    if (K.size() != static_cast<std::size_t>(s.n()) * s.n()) {
        throw std::invalid_argument("make_operator: kernel matrix is not n x n");
    }
    if (!(R > 0.0)) throw std::invalid_argument("make_operator: R must be positive");
    if (!(s.set_diameter(E) < R)) {
        throw std::invalid_argument("make_operator: diam(E) must be < R");
    }
    ScalarKernelOperator op;
    op.space = &s;
    op.K = std::move(K);
    op.halo = open_neighborhood(s, E, R / 2.0);
    op.E = std::move(E);
    op.R = R;
    return op;
}

FunctionOnSpace apply_operator(const MetricMeasureSpace& s, const std::vector<double>& K,
                               const FunctionOnSpace& f) {
    const int n = s.n();
    const int m = f.coords();
    const auto& kern = simd::active();
    FunctionOnSpace out(n, m, f.vec_norm_q());
    std::vector<double> fw(n);
    for (int c = 0; c < m; ++c) {
        for (int y = 0; y < n; ++y) fw[y] = f.value(y, c) * s.weight(y);
        for (int x = 0; x < n; ++x) {
            out.set(x, c,
                    kern.dot(K.data() + static_cast<std::size_t>(x) * n, fw.data(),
                             static_cast<std::size_t>(n)));
        }
    }
    return out;
}

double hormander_constant(const MetricMeasureSpace& s, const std::vector<double>& K,
                          const std::vector<int>& E, double R) {
    if (!(s.set_diameter(E) < R)) {
        throw std::invalid_argument("hormander_constant: diam(E) must be < R");
    }
    const auto halo = open_neighborhood(s, E, R / 2.0);
    return hormander_scan(s, transpose(K, s.n()), E, halo, R);
}

double hormander_constant_dual(const MetricMeasureSpace& s, const std::vector<double>& K,
                               const std::vector<int>& E, double R) {
    if (!(s.set_diameter(E) < R)) {
        throw std::invalid_argument("hormander_constant: diam(E) must be < R");
    }
    const auto halo = open_neighborhood(s, E, R / 2.0);
    // (iii)': integrate over y in E, pairs x, x' in the halo; rows of K are
    // the transposed columns
    return hormander_scan(s, K, E, halo, R);
}

double operator_norm_bound(const MetricMeasureSpace& s, const std::vector<double>& K,
                           const std::vector<int>& rows, const std::vector<int>& cols,
                           double r_exp) {
    if (!(r_exp > 1.0) && r_exp != 1.0) {
        throw std::invalid_argument("operator_norm_bound: r must lie in [1, inf]");
    }
    const int n = s.n();
    if (rows.empty() || cols.empty()) return 0.0;

    if (r_exp == 2.0) {
        Eigen::MatrixXd M(rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a) {
            const double sa = std::sqrt(s.weight(rows[a]));
            const double* krow = K.data() + static_cast<std::size_t>(rows[a]) * n;
            for (std::size_t b = 0; b < cols.size(); ++b) {
                M(a, b) = sa * krow[cols[b]] * std::sqrt(s.weight(cols[b]));
            }
        }
        const Eigen::MatrixXd G = M.rows() <= M.cols()
                                      ? Eigen::MatrixXd(M * M.transpose())
                                      : Eigen::MatrixXd(M.transpose() * M);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
        const double top = es.eigenvalues().maxCoeff();
        return top > 0.0 ? std::sqrt(top) : 0.0;
    }

    // Schur: interpolate the exact L^1 (column) and L^inf (row) bounds
    double row_bound = 0.0;
    for (int x : rows) {
        double acc = 0.0;
        const double* krow = K.data() + static_cast<std::size_t>(x) * n;
        for (int y : cols) acc += std::fabs(krow[y]) * s.weight(y);
        row_bound = std::max(row_bound, acc);
    }
    if (std::isinf(r_exp)) return row_bound;
    double col_bound = 0.0;
    for (int y : cols) {
        double acc = 0.0;
        for (int x : rows) acc += std::fabs(K[static_cast<std::size_t>(x) * n + y]) * s.weight(x);
        col_bound = std::max(col_bound, acc);
    }
    if (r_exp == 1.0) return col_bound;
    return std::pow(col_bound, 1.0 / r_exp) * std::pow(row_bound, 1.0 - 1.0 / r_exp);
}

namespace {

// random + adversarial test functions concentrated on `supp`
std::vector<FunctionOnSpace> trial_functions(const MetricMeasureSpace& s,
                                             const std::vector<int>& supp, int trials,
                                             Rng& rng) {
    const int n = s.n();
    std::vector<FunctionOnSpace> out;
    out.reserve(trials);
    const int structured = std::min(trials / 2, 2 + static_cast<int>(supp.size()) / 4);
    int made = 0;
    // spikes
    for (int i = 0; made < trials && i < (structured + 1) / 2; ++i, ++made) {
        FunctionOnSpace f(n, 1);
        const int x = supp[rng.index(static_cast<int>(supp.size()))];
        f.set(x, 0, rng.coin() ? 1.0 : -1.0);
        out.push_back(std::move(f));
    }
    // mean-zero dipoles at varying separations
    for (int i = 0; made < trials && i < structured / 2 && supp.size() >= 2; ++i, ++made) {
        FunctionOnSpace f(n, 1);
        const int a = supp[rng.index(static_cast<int>(supp.size()))];
        int b = a;
        while (b == a) b = supp[rng.index(static_cast<int>(supp.size()))];
        f.set(a, 0, 1.0 / s.weight(a));
        f.set(b, 0, -1.0 / s.weight(b));
        out.push_back(std::move(f));
    }
    // dense and sparse random
    while (made < trials) {
        FunctionOnSpace f(n, 1);
        const bool sparse = rng.coin(0.3);
        for (int x : supp) {
            if (sparse && !rng.coin(0.2)) continue;
            f.set(x, 0, rng.uniform(-1.0, 1.0));
        }
        out.push_back(std::move(f));
        ++made;
    }
    return out;
}

BoundReport czo_report_for_p(const MetricMeasureSpace& s, const std::vector<double>& K,
                             const std::vector<int>& E, double p, double claimed,
                             const std::vector<FunctionOnSpace>& trials_f) {
    const int n = s.n();
    double worst = 0.0;
    int worst_idx = -1;
    for (std::size_t t = 0; t < trials_f.size(); ++t) {
        const auto& f = trials_f[t];
        const double fp = lp_norm(s, f, p);
        if (fp == 0.0) continue;
        const auto tf = apply_operator(s, K, f);
        std::vector<double> restricted(n, 0.0);
        const auto mags = tf.magnitudes();
        for (int x : E) restricted[x] = mags[x];
        const double ratio = lp_norm(s, restricted, p) / fp;
        if (ratio > worst) {
            worst = ratio;
            worst_idx = static_cast<int>(t);
        }
    }
    return BoundReport::make("czo bound p=" + std::to_string(p), claimed, worst, 1.0,
                             worst_idx >= 0 ? "trial " + std::to_string(worst_idx) : "");
}

}  // namespace

std::vector<BoundReport> check_czo_bound(const MetricMeasureSpace& s,
                                         const std::vector<double>& K,
                                         const std::vector<int>& E, double R, double kappa,
                                         double r_exp, const std::vector<double>& p_list,
                                         int trials, std::uint64_t seed,
                                         std::optional<double> A_override) {
    if (!(kappa > 2.0)) throw std::invalid_argument("check_czo_bound: kappa must exceed 2");
    const ScalarKernelOperator op = make_operator(s, K, E, R);
    const double d9 = std::pow(doubling_constant(s, 3.0 * kappa * R), 9.0);

    const double A_primal =
        A_override ? *A_override : operator_norm_bound(s, K, op.E, op.halo, r_exp);
    const double C_primal = hormander_constant(s, K, op.E, R);
    double A_dual = 0.0, C_dual = 0.0;
    bool have_dual = false;

    Rng rng(seed);
    const auto trials_f = trial_functions(s, op.E, trials, rng);

    std::vector<BoundReport> out;
    for (double p : p_list) {
        if (!(p > 1.0)) throw std::invalid_argument("check_czo_bound: p must exceed 1");
        const bool primal = p <= r_exp;
        if (!primal && std::isinf(p)) {
            throw std::invalid_argument("check_czo_bound: dual range needs p < inf");
        }
        if (!primal && !have_dual) {
            A_dual = A_override ? *A_override : operator_norm_bound(s, K, op.halo, op.E, r_exp);
            C_dual = hormander_constant_dual(s, K, op.E, R);
            have_dual = true;
        }
        const double A = primal ? A_primal : A_dual;
        const double C = primal ? C_primal : C_dual;
        const double claimed = 16.0 * phi(r_exp, p) * (d9 * A + C);
        BoundReport r = czo_report_for_p(s, op.K, op.E, p, claimed, trials_f);
        r.name = (primal ? "czo bound p=" : "czo dual bound p=") + std::to_string(p);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BoundReport> check_patched_bound(const MetricMeasureSpace& s,
                                             const std::vector<double>& K, double R,
                                             double kappa, double r_exp,
                                             const std::vector<double>& p_list, int trials,
                                             std::uint64_t seed) {
    if (!(kappa > 2.0)) throw std::invalid_argument("check_patched_bound: kappa must exceed 2");
    const int n = s.n();
    for (int x = 0; x < n; ++x) {
        const double* row = s.dist_row(x);
        for (int y = 0; y < n; ++y) {
            if (K[static_cast<std::size_t>(x) * n + y] != 0.0 && row[y] > R / 3.0) {
                throw std::invalid_argument(
                    "check_patched_bound: kernel support wider than R/3 at (" +
                    std::to_string(x) + "," + std::to_string(y) + ")");
            }
        }
    }

    const SeparatedNet net = separated_net(s, R / 8.0);
    const double patch_radius = R * (1.0 / 3.0 + 1.0 / 8.0);
    double A_primal = 0.0, C_primal = 0.0, A_dual = 0.0, C_dual = 0.0;
    std::vector<std::vector<int>> patches;
    for (int xj : net.members) {
        auto Ej = s.ball_members(xj, patch_radius);
        const auto halo = open_neighborhood(s, Ej, R / 2.0);
        A_primal = std::max(A_primal, operator_norm_bound(s, K, Ej, halo, r_exp));
        C_primal = std::max(C_primal, hormander_constant(s, K, Ej, R));
        A_dual = std::max(A_dual, operator_norm_bound(s, K, halo, Ej, r_exp));
        C_dual = std::max(C_dual, hormander_constant_dual(s, K, Ej, R));
        patches.push_back(std::move(Ej));
    }

    const double d9 = std::pow(doubling_constant(s, 3.0 * kappa * R), 9.0);
    const double d_r = doubling_constant(s, R);

    std::vector<int> all(n);
    for (int x = 0; x < n; ++x) all[x] = x;
    Rng rng(seed);
    const auto trials_f = trial_functions(s, all, trials, rng);

    std::vector<BoundReport> out;
    for (double p : p_list) {
        if (!(p > 1.0)) throw std::invalid_argument("check_patched_bound: p must exceed 1");
        const bool primal = p <= r_exp;
        const double A = primal ? A_primal : A_dual;
        const double C = primal ? C_primal : C_dual;
        const double claimed =
            16.0 * phi(r_exp, p) * std::pow(d_r, 5.0 / p) * (d9 * A + C);
        double worst = 0.0;
        int worst_idx = -1;
        for (std::size_t t = 0; t < trials_f.size(); ++t) {
            const double fp = lp_norm(s, trials_f[t], p);
            if (fp == 0.0) continue;
            const auto tf = apply_operator(s, K, trials_f[t]);
            const double ratio = lp_norm(s, tf, p) / fp;
            if (ratio > worst) {
                worst = ratio;
                worst_idx = static_cast<int>(t);
            }
        }
        BoundReport r =
            BoundReport::make((primal ? "patched bound p=" : "patched dual bound p=") +
                                  std::to_string(p),
                              claimed, worst, 1.0,
                              "patches=" + std::to_string(patches.size()) +
                                  (worst_idx >= 0 ? " trial " + std::to_string(worst_idx) : ""));
        out.push_back(std::move(r));
    }
    return out;
}

double mixed_norm(const MixedNormTensor& t) {
    const std::size_t naxes = t.axes.size();
    if (naxes == 0 || t.weights.size() != naxes || t.exponents.size() != naxes) {
        throw std::invalid_argument("mixed_norm: axes, weights, exponents must align");
    }
    std::size_t total = 1;
    for (std::size_t a = 0; a < naxes; ++a) {
        if (t.axes[a] <= 0 ||
            t.weights[a].size() != static_cast<std::size_t>(t.axes[a])) {
            throw std::invalid_argument("mixed_norm: axis/weight shape mismatch");
        }
        const double p = t.exponents[a];
        if (!(p > 1.0) || std::isinf(p)) {
            throw std::invalid_argument("mixed_norm: exponents must lie in (1, inf)");
        }
        total *= static_cast<std::size_t>(t.axes[a]);
    }
    if (t.values.size() != total) throw std::invalid_argument("mixed_norm: value count mismatch");

    std::vector<double> cur(t.values);
    // reduce the leading axis each round; the remainder stays contiguous
    for (std::size_t a = 0; a < naxes; ++a) {
        const std::size_t len = static_cast<std::size_t>(t.axes[a]);
        const std::size_t rest = cur.size() / len;
        const double p = t.exponents[a];
        std::vector<double> next(rest, 0.0);
        for (std::size_t i = 0; i < len; ++i) {
            const double w = t.weights[a][i];
            const double* block = cur.data() + i * rest;
            for (std::size_t j = 0; j < rest; ++j) {
                next[j] += std::pow(std::fabs(block[j]), p) * w;
            }
        }
        for (double& v : next) v = std::pow(v, 1.0 / p);
        cur = std::move(next);
    }
    return cur[0];
}

BoundReport check_mixed_maximal(const MetricMeasureSpace& s, const MixedNormTensor& t,
                                double R) {
    if (!(R > 0.0)) throw std::invalid_argument("check_mixed_maximal: R must be positive");
    if (t.axes.empty() || t.axes.back() != s.n()) {
        throw std::invalid_argument("check_mixed_maximal: last axis must index the space");
    }
    if (t.weights.back() != s.weights()) {
        throw std::invalid_argument("check_mixed_maximal: last-axis weights must match mu");
    }
    const int k = static_cast<int>(t.axes.size()) - 1;
    const int n = s.n();
    std::size_t slices = 1;
    for (int a = 0; a < k; ++a) slices *= static_cast<std::size_t>(t.axes[a]);

    MixedNormTensor maximal = t;
    std::vector<double> slice(n);
    for (std::size_t sl = 0; sl < slices; ++sl) {
        const double* in = t.values.data() + sl * n;
        for (int x = 0; x < n; ++x) slice[x] = std::fabs(in[x]);
        const auto mx = maximal_centred(s, slice, 2.0 * R);
        std::copy(mx.begin(), mx.end(), maximal.values.begin() + sl * n);
    }

    const double p1 = t.exponents.front();
    double claimed = (1.0 + std::pow(16.0, k + 1)) *
                     std::pow(doubling_constant(s, R), 25.0 + 16.0 * k) *
                     std::pow(p1 / (p1 - 1.0), 1.0 / p1);
    for (int j = 0; j + 1 <= k; ++j) claimed *= phi(t.exponents[j], t.exponents[j + 1]);

    return BoundReport::make("mixed maximal k=" + std::to_string(k), claimed,
                             mixed_norm(maximal), mixed_norm(t));
}

BoundReport check_schur_rowsum(const MetricMeasureSpace& s, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("check_schur_rowsum: R must be positive");
    double worst = 0.0;
    for (int x = 0; x < s.n(); ++x) {
        const double v = s.ball_measure(x, 2.0 * R) / s.ball_measure(x, R / 126.0);
        worst = std::max(worst, v);
    }
    return BoundReport::make("schur row sum", std::pow(doubling_constant(s, R), 8.0), worst,
                             1.0);
}

}  // namespace czkit
