#include "czkit/smoothing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "czkit/parallel.hpp"
#include "czkit/simd/kernels.hpp"

namespace czkit {

BumpProfile BumpProfile::make(double eta) {
    if (!(eta > 1.0) || !(eta <= 7.0 / 6.0)) {
        throw std::invalid_argument("BumpProfile: eta must lie in (1, 7/6]");
    }
    return BumpProfile{eta};
}

namespace {

// H(x, y) = h(d(x,y)/r), symmetric
std::vector<double> bump_matrix(const MetricMeasureSpace& s, const BumpProfile& h, double r) {
    const int n = s.n();
    std::vector<double> H(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        const double* row = s.dist_row(x);
        H[static_cast<std::size_t>(x) * n + x] = 1.0;
        for (int y = x + 1; y < n; ++y) {
            const double v = h(row[y] / r);
            H[static_cast<std::size_t>(x) * n + y] = v;
            H[static_cast<std::size_t>(y) * n + x] = v;
        }
    }
    return H;
}

}  // namespace

std::vector<double> t_r_one(const MetricMeasureSpace& s, const BumpProfile& h, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("t_r: r must be positive");
    const int n = s.n();
    const auto H = bump_matrix(s, h, r);
    const auto& kern = simd::active();
    std::vector<double> out(n);
    for (int x = 0; x < n; ++x) {
        out[x] = kern.dot(H.data() + static_cast<std::size_t>(x) * n, s.weights().data(),
                          static_cast<std::size_t>(n));
    }
    return out;
}

FunctionOnSpace t_r_apply(const MetricMeasureSpace& s, const BumpProfile& h, double r,
                          const FunctionOnSpace& f) {
    if (!(r > 0.0)) throw std::invalid_argument("t_r_apply: r must be positive");
    const int n = s.n();
    const int m = f.coords();
    const auto H = bump_matrix(s, h, r);
    const auto& kern = simd::active();
    FunctionOnSpace out(n, m, f.vec_norm_q());
    std::vector<double> fw(n);
    for (int c = 0; c < m; ++c) {
        for (int y = 0; y < n; ++y) fw[y] = f.value(y, c) * s.weight(y);
        for (int x = 0; x < n; ++x) {
            out.set(x, c,
                    kern.dot(H.data() + static_cast<std::size_t>(x) * n, fw.data(),
                             static_cast<std::size_t>(n)));
        }
    }
    return out;
}

SmoothKernel build_kernel(const MetricMeasureSpace& s, const BumpProfile& h, double r,
                          double R) {
    if (!(r > 0.0) || !(R > 0.0) || r > R) {
        throw std::invalid_argument("build_kernel: need 0 < r <= R");
    }
    const int n = s.n();
    const auto& kern = simd::active();
    const auto H = bump_matrix(s, h, r);

    SmoothKernel k;
    k.n = n;
    k.r = r;
    k.R = R;
    k.eta = h.eta;
    k.d4r = doubling_constant(s, 4.0 * R);
    k.V.resize(n);
    for (int x = 0; x < n; ++x) k.V[x] = s.ball_measure(x, r);

    std::vector<double> u(n);  // T_r 1
    for (int x = 0; x < n; ++x) {
        u[x] = kern.dot(H.data() + static_cast<std::size_t>(x) * n, s.weights().data(),
                        static_cast<std::size_t>(n));
    }
    std::vector<double> wv(n);  // w / u
    for (int y = 0; y < n; ++y) wv[y] = s.weight(y) / u[y];
    std::vector<double> scale(n);  // w(z) / (T_r (1/T_r 1))(z)
    for (int z = 0; z < n; ++z) {
        const double q = kern.dot(H.data() + static_cast<std::size_t>(z) * n, wv.data(),
                                  static_cast<std::size_t>(n));
        scale[z] = s.weight(z) / q;
    }

    k.S.assign(static_cast<std::size_t>(n) * n, 0.0);
    parallel_for(0, n, [&](int x) {
        const double* hx = H.data() + static_cast<std::size_t>(x) * n;
        for (int y = x; y < n; ++y) {
            const double* hy = H.data() + static_cast<std::size_t>(y) * n;
            const double p = kern.dot3(hx, hy, scale.data(), static_cast<std::size_t>(n));
            const double v = p / (u[x] * u[y]);
            k.S[static_cast<std::size_t>(x) * n + y] = v;
            k.S[static_cast<std::size_t>(y) * n + x] = v;
        }
    });

    // measured constant of the Lipschitz-type bound, over all (x, x', y)
    const double d8 = std::pow(k.d4r, 8.0);
    std::vector<double> pair_max(n, 0.0);
    parallel_for(0, n, [&](int x) {
        double best = 0.0;
        const double* sx = k.row(x);
        const double* row = s.dist_row(x);
        for (int xp = x + 1; xp < n; ++xp) {
            const double c = std::min(k.V[x], k.V[xp]);
            const double m = kern.max_absdiff_affine(sx, k.row(xp), k.V.data(), c,
                                                     static_cast<std::size_t>(n));
            const double val = m * r / (d8 * row[xp]);
            if (val > best) best = val;
        }
        pair_max[x] = best;
    });
    for (double v : pair_max) k.empirical_c6 = std::max(k.empirical_c6, v);
    return k;
}

std::vector<SmoothKernel> kernel_family(const MetricMeasureSpace& s, const BumpProfile& h,
                                        double r_prime, int j_max) {
    if (!(r_prime > 0.0)) throw std::invalid_argument("kernel_family: R' must be positive");
    if (j_max < 0) {
        const double dmin = s.min_positive_distance();
        j_max = 0;
        while (j_max < 62 && dmin > 0.0 && std::ldexp(r_prime, -j_max) / 2.0 >= dmin) {
            ++j_max;
        }
    }
    std::vector<SmoothKernel> out;
    out.reserve(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        out.push_back(build_kernel(s, h, std::ldexp(r_prime, -j), r_prime));
    }
    return out;
}

std::vector<BoundReport> certify_kernel(const MetricMeasureSpace& s, const SmoothKernel& k) {
    const int n = k.n;
    const double D = k.d4r;
    std::vector<BoundReport> out;

    {
        // support: exact zero beyond 2 eta r (mask padded past roundoff);
        // implies the coarser 3r statement since 2 eta <= 7/3 < 3
        const double cutoff = 2.0 * k.eta * k.r * (1.0 + 1e-9);
        double worst = 0.0;
        for (int x = 0; x < n; ++x) {
            const double* row = s.dist_row(x);
            for (int y = 0; y < n; ++y) {
                if (row[y] >= cutoff) worst = std::max(worst, std::fabs(k.entry(x, y)));
            }
        }
        out.push_back(BoundReport::make("kernel (1) support", 0.0, worst, 0.0));
    }
    {
        double worst = 0.0;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                worst = std::max(worst, std::fabs(k.entry(x, y) - k.entry(y, x)));
            }
        }
        out.push_back(BoundReport::make("kernel (2) symmetry", 0.0, worst, 0.0));
    }
    {
        double worst = 0.0;
        const auto& kern = simd::active();
        for (int x = 0; x < n; ++x) {
            const double sum = kern.dot(k.row(x), s.weights().data(), static_cast<std::size_t>(n));
            worst = std::max(worst, std::fabs(sum - 1.0));
        }
        out.push_back(BoundReport::make("kernel (3) unit row sums", 1e-12, worst, 1.0));
    }
    {
        double worst = 0.0;
        std::string witness;
        const double d5 = std::pow(D, 5.0);
        for (int x = 0; x < n; ++x) {
            const double* row = s.dist_row(x);
            for (int y = 0; y < n; ++y) {
                if (row[y] < k.r / 2.0) {
                    const double lower = 1.0 / (d5 * std::min(k.V[x], k.V[y]));
                    const double ratio = lower / k.entry(x, y);
                    if (ratio > worst) {
                        worst = ratio;
                        witness = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
                    }
                }
            }
        }
        out.push_back(BoundReport::make("kernel (4) lower bound", 1.0, worst, 1.0, witness));
    }
    {
        double worst = 0.0;
        std::string witness;
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                const double v = k.entry(x, y) * (k.V[x] + k.V[y]);
                if (v > worst) {
                    worst = v;
                    witness = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
                }
            }
        }
        out.push_back(BoundReport::make("kernel (5) upper bound", 2.0 * D * D, worst, 1.0,
                                        witness));
    }
    {
        double least = std::numeric_limits<double>::infinity();
        for (double v : k.S) least = std::min(least, v);
        BoundReport r = BoundReport::make("kernel positivity", 0.0, least < 0.0 ? -least : 0.0,
                                          0.0);
        out.push_back(r);
    }
    {
        BoundReport r;
        r.name = "kernel (6) lipschitz constant (reported)";
        r.claimed_constant = std::numeric_limits<double>::infinity();
        r.measured_lhs = k.empirical_c6;
        r.measured_rhs = 1.0;
        r.ratio = 0.0;
        r.pass = std::isfinite(k.empirical_c6);
        out.push_back(r);
    }
    return out;
}

}  // namespace czkit
