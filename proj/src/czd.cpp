#include "czkit/czd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "czkit/covering.hpp"
#include "czkit/maximal.hpp"

namespace czkit {

double czd_admissibility_threshold(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                   const std::vector<int>& E, double R, double kappa) {
    double mu_e = 0.0;
    for (int x : E) mu_e += s.weight(x);
    const double d = doubling_constant(s, 3.0 * kappa * R);
    return std::pow(d, 4.0) * lp_norm(s, f, 1.0) / mu_e;
}

CZDecomposition cz_decompose(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                             const std::vector<int>& E, double R, double kappa, double alpha) {
    if (E.empty()) throw std::invalid_argument("cz_decompose: E must have positive measure");
    if (!(R > 0.0)) throw std::invalid_argument("cz_decompose: R must be positive");
    if (!(kappa > 2.0) || !(kappa <= 3.0)) {
        throw std::invalid_argument("cz_decompose: kappa must lie in (2, 3]");
    }
    if (!(s.set_diameter(E) < R)) {
        throw std::invalid_argument("cz_decompose: diam(E) must be < R");
    }
    std::vector<char> in_e(s.n(), 0);
    for (int x : E) in_e[x] = 1;
    for (int x = 0; x < s.n(); ++x) {
        if (in_e[x]) continue;
        for (int c = 0; c < f.coords(); ++c) {
            if (f.value(x, c) != 0.0) {
                throw std::invalid_argument("cz_decompose: f not concentrated in E (point " +
                                            std::to_string(x) + ")");
            }
        }
    }
    const double threshold = czd_admissibility_threshold(s, f, E, R, kappa);
    if (!(alpha > threshold)) {
        throw std::invalid_argument("cz_decompose: alpha below the admissibility threshold " +
                                    std::to_string(threshold));
    }

    CZDecomposition dec;
    dec.alpha = alpha;
    dec.kappa = kappa;
    dec.R = R;
    dec.E = E;
    dec.admissibility_threshold = threshold;

    const auto mags = f.magnitudes();
    const auto m = maximal_uncentred(s, mags, kappa * R);
    for (int x = 0; x < s.n(); ++x) {
        if (m[x] > alpha) dec.bad_set.push_back(x);
    }

    if (dec.bad_set.empty()) {
        dec.g = f;
        return dec;
    }

    // guaranteed for admissible alpha; a violation is a bug, not bad input
    for (int x : dec.bad_set) {
        if (!(s.dist_to_set(x, E) < R / 2.0)) {
            throw std::logic_error("cz_decompose: bad set escaped B(E, R/2)");
        }
    }
    if (static_cast<int>(dec.bad_set.size()) == s.n()) {
        throw std::logic_error("cz_decompose: bad set is the whole space");
    }

    // diam(U) < 2R since U lies in B(E, R/2); radii land in (0, R]
    const WhitneyCover wc = whitney_cover(s, dec.bad_set, 2.0 * R);
    dec.centers = wc.centers;
    dec.radii = wc.radii;

    dec.overlap = overlap_counts(s, dec.centers, dec.radii);
    for (int x : dec.bad_set) {
        if (dec.overlap[x] == 0) {
            throw std::logic_error("cz_decompose: uncovered bad point " + std::to_string(x));
        }
    }

    const int n = s.n();
    const int mcoords = f.coords();
    dec.members.resize(dec.centers.size());
    dec.ball_avg.resize(dec.centers.size());
    dec.h.reserve(dec.centers.size());
    dec.g = FunctionOnSpace(n, mcoords, f.vec_norm_q());

    std::vector<char> in_u(n, 0);
    for (int x : dec.bad_set) in_u[x] = 1;
    for (int x = 0; x < n; ++x) {
        if (!in_u[x]) {
            for (int c = 0; c < mcoords; ++c) dec.g.set(x, c, f.value(x, c));
        }
    }

    for (std::size_t i = 0; i < dec.centers.size(); ++i) {
        const int x = dec.centers[i];
        const double r = dec.radii[i];
        auto ball = s.ball_members(x, r);
        std::vector<double> avg(mcoords, 0.0);
        if (ball.size() == 1) {
            // exact: eta-weighted average over a singleton is the value itself
            for (int c = 0; c < mcoords; ++c) {
                avg[c] = f.value(x, c) / static_cast<double>(dec.overlap[x]);
            }
        } else {
            double mass = 0.0;
            for (int y : ball) {
                const double w = s.weight(y);
                mass += w;
                const double inv_ov = 1.0 / static_cast<double>(dec.overlap[y]);
                for (int c = 0; c < mcoords; ++c) avg[c] += w * f.value(y, c) * inv_ov;
            }
            for (int c = 0; c < mcoords; ++c) avg[c] /= mass;
        }

        FunctionOnSpace hx(n, mcoords, f.vec_norm_q());
        for (int y : ball) {
            const double inv_ov = 1.0 / static_cast<double>(dec.overlap[y]);
            for (int c = 0; c < mcoords; ++c) {
                hx.set(y, c, f.value(y, c) * inv_ov - avg[c]);
            }
            for (int c = 0; c < mcoords; ++c) {
                dec.g.set(y, c, dec.g.value(y, c) + avg[c]);
            }
        }
        dec.members[i] = std::move(ball);
        dec.ball_avg[i] = std::move(avg);
        dec.h.push_back(std::move(hx));
    }
    return dec;
}

std::vector<BoundReport> certify_czd(const MetricMeasureSpace& s, const FunctionOnSpace& f,
                                     const CZDecomposition& dec) {
    const int n = s.n();
    const int mcoords = f.coords();
    const double D = doubling_constant(s, 3.0 * dec.kappa * dec.R);
    const auto f_mags = f.magnitudes();
    const double f1 = lp_norm(s, f_mags, 1.0);
    const double finf = lp_norm(s, f_mags, std::numeric_limits<double>::infinity());
    std::vector<BoundReport> out;

    // (1) reconstruction
    {
        double worst = 0.0;
        for (int x = 0; x < n; ++x) {
            for (int c = 0; c < mcoords; ++c) {
                double v = dec.g.value(x, c);
                for (const auto& hx : dec.h) v += hx.value(x, c);
                worst = std::max(worst, std::fabs(f.value(x, c) - v));
            }
        }
        out.push_back(BoundReport::make("czd (1) reconstruction", 1e-10, worst, 1.0 + finf));
    }

    const auto halo = open_neighborhood(s, dec.E, dec.R / 2.0);
    std::vector<char> in_halo(n, 0);
    for (int x : halo) in_halo[x] = 1;

    // (2) ||g||_inf <= D^2 alpha, supp g in B(E, R/2)
    {
        const auto g_mags = dec.g.magnitudes();
        BoundReport r = BoundReport::make("czd (2) g bounded", D * D * dec.alpha,
                                          lp_norm(s, g_mags, std::numeric_limits<double>::infinity()),
                                          1.0);
        for (int x = 0; x < n && r.pass; ++x) {
            if (!in_halo[x] && g_mags[x] != 0.0) {
                r.pass = false;
                r.witness = "supp g escapes B(E,R/2) at x=" + std::to_string(x);
            }
        }
        out.push_back(r);
    }

    // (3) ||g||_1 <= 3 ||f||_1
    out.push_back(BoundReport::make("czd (3) g integrable", 3.0, lp_norm(s, dec.g, 1.0), f1));

    // (4) supports and sum of ball measures
    {
        double total = 0.0;
        bool supp_ok = true;
        std::string witness;
        for (std::size_t i = 0; i < dec.centers.size(); ++i) {
            total += s.ball_measure(dec.centers[i], dec.radii[i]);
            for (int y : dec.members[i]) {
                if (!in_halo[y]) {
                    supp_ok = false;
                    witness = "ball of center " + std::to_string(dec.centers[i]) +
                              " escapes B(E,R/2)";
                }
            }
            for (int y = 0; y < n; ++y) {
                bool inside = std::binary_search(dec.members[i].begin(), dec.members[i].end(), y);
                if (!inside) {
                    for (int c = 0; c < mcoords; ++c) {
                        if (dec.h[i].value(y, c) != 0.0) {
                            supp_ok = false;
                            witness = "h escapes its ball at center " +
                                      std::to_string(dec.centers[i]);
                        }
                    }
                }
            }
        }
        BoundReport r =
            BoundReport::make("czd (4) ball mass", std::pow(D, 6.0), total * dec.alpha, f1);
        if (!supp_ok) {
            r.pass = false;
            r.witness = witness;
        }
        out.push_back(r);
    }

    // (5) mean zero
    {
        double worst = 0.0;
        std::string witness;
        for (std::size_t i = 0; i < dec.h.size(); ++i) {
            const double h1 = lp_norm(s, dec.h[i], 1.0);
            for (int c = 0; c < mcoords; ++c) {
                double mean = 0.0;
                for (int y : dec.members[i]) mean += dec.h[i].value(y, c) * s.weight(y);
                const double rel = h1 > 0.0 ? std::fabs(mean) / h1
                                            : (mean == 0.0 ? 0.0 : 1.0);
                if (rel > worst) {
                    worst = rel;
                    witness = "center " + std::to_string(dec.centers[i]);
                }
            }
        }
        out.push_back(BoundReport::make("czd (5) mean zero", 1e-10, worst, 1.0, witness));
    }

    // (6) ||h_x||_inf <= 2||f||_inf and sum ||h_x||_1 <= 2||f||_1
    {
        double worst_inf = 0.0;
        double total_l1 = 0.0;
        for (const auto& hx : dec.h) {
            worst_inf = std::max(
                worst_inf, lp_norm(s, hx, std::numeric_limits<double>::infinity()));
            total_l1 += lp_norm(s, hx, 1.0);
        }
        BoundReport r = BoundReport::make("czd (6) h bounded", 2.0, worst_inf, finf);
        const BoundReport r1 = BoundReport::make("", 2.0, total_l1, f1);
        if (!r1.pass) r.pass = false;
        r.witness = "sum ||h||_1 = " + std::to_string(total_l1) + " vs 2||f||_1 = " +
                    std::to_string(2.0 * f1);
        out.push_back(r);
    }

    // (7) bounded overlap
    {
        int worst = 0;
        for (int x : dec.bad_set) worst = std::max(worst, dec.overlap[x]);
        out.push_back(BoundReport::make("czd (7) bounded overlap", std::pow(D, 5.0),
                                        static_cast<double>(worst), 1.0));
    }
    return out;
}

}  // namespace czkit
