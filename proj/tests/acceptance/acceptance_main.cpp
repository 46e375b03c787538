// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "czkit/bounds.hpp"
#include "czkit/covering.hpp"
#include "czkit/czd.hpp"
#include "czkit/interp.hpp"
#include "czkit/maximal.hpp"
#include "czkit/rng.hpp"
#include "czkit/smoothing.hpp"
#include "czkit/suite.hpp"
#include "../testutil.hpp"

using namespace czkit;
namespace tu = czkit::testutil;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Criterion {
    std::string name;
    double budget_seconds;
    bool (*run)(std::string& detail);
};

int g_failures = 0;

// deterministic space stream for the acceptance corpus: lines, grids up to
// 20x20, dyadic ultrametrics, snowflakes, random point clouds, n <= 500
MetricMeasureSpace corpus_space(int i, Rng& rng, int size_cap) {
    static const int sizes[] = {20, 40, 80, 160, 320, 500};
    const int n = std::min(sizes[i % 6], size_cap);
    MetricMeasureSpace s = [&]() -> MetricMeasureSpace {
        switch (i % 5) {
            case 0:
                return make_line(n);
            case 1: {
                const int nx = std::min(20, 2 + static_cast<int>(std::sqrt(n)));
                const int ny = std::min(20, std::max(2, n / nx));
                return make_grid(nx, ny);
            }
            case 2: {
                int depth = 1;
                while ((2 << depth) <= std::min(n, 256) && depth < 8) ++depth;
                return make_dyadic(depth);
            }
            case 3: {
                const double alpha = 0.3 + 0.15 * (i % 4);
                if (i % 2) return make_snowflake(make_line(n), alpha);
                return make_snowflake(make_random_points(std::min(n, 200), 2, 1000 + i),
                                      alpha);
            }
            default:
                return make_random_points(n, 1 + i % 3, 2000 + i);
        }
    }();
    if (rng.coin()) return with_random_weights(s, rng.next_u64());
    return s;
}

bool criterion_covering(std::string& detail) {
    Rng rng(101);
    const double kappa_escape = 2.0 + std::ldexp(1.0, -20);
    int vitali_done = 0, whitney_done = 0;
    for (int i = 0; i < 300; ++i) {
        const auto s = corpus_space(i, rng, 500);

        // vitali instance
        std::vector<int> E;
        for (int x = 0; x < s.n(); ++x) {
            if (rng.coin(0.7)) E.push_back(x);
        }
        if (E.empty()) E.push_back(rng.index(s.n()));
        const double R = s.set_diameter(E) / 2.0 * 1.25 + 0.25;
        std::vector<double> radii(E.size());
        for (double& r : radii) r = rng.dyadic(0.05, 1.0, 10) * R;
        const auto vc = vitali_cover(s, E, radii, R);

        std::vector<char> taken(s.n(), 0);
        for (std::size_t a = 0; a < vc.centers.size(); ++a) {
            for (int y : s.ball_members(vc.centers[a], vc.radii[a])) {
                if (taken[y]) return false;  // disjointness is exact
                taken[y] = 1;
            }
        }
        for (int e : E) {
            bool covered = false;
            for (std::size_t a = 0; a < vc.centers.size() && !covered; ++a) {
                covered = s.dist(vc.centers[a], e) < 3.0 * vc.radii[a];
            }
            if (!covered) return false;
        }
        ++vitali_done;

        // whitney instance on an open ball, when proper and reachable
        const int c = rng.index(s.n());
        const double rho = rng.uniform(0.2, 0.8) * s.diameter();
        const auto U = s.ball_members(c, rho);
        if (static_cast<int>(U.size()) == s.n()) continue;
        std::vector<char> in_u(s.n(), 0);
        for (int x : U) in_u[x] = 1;
        std::vector<int> comp;
        for (int x = 0; x < s.n(); ++x) {
            if (!in_u[x]) comp.push_back(x);
        }
        double reach = 0.0;
        for (int x : U) reach = std::max(reach, s.dist_to_set(x, comp));
        const double Rw = 1.01 * std::max(s.set_diameter(U), reach) + 1e-6;
        const auto wc = whitney_cover(s, U, Rw);
        const double bound = wc.overlap_bound;
        const auto counts = overlap_counts(s, wc.centers, wc.radii);
        for (int x = 0; x < s.n(); ++x) {
            if (in_u[x]) {
                if (counts[x] < 1 || static_cast<double>(counts[x]) > bound) return false;
            } else if (counts[x] != 0) {
                return false;
            }
        }
        std::fill(taken.begin(), taken.end(), 0);
        for (std::size_t a = 0; a < wc.centers.size(); ++a) {
            if (wc.radii[a] <= 0.0 || wc.radii[a] > Rw / 2.0) return false;
            for (int y : s.ball_members(wc.centers[a], wc.radii[a] / 3.0)) {
                if (taken[y]) return false;
                taken[y] = 1;
            }
            bool escapes = false;
            for (int y : comp) {
                if (s.dist(wc.centers[a], y) < kappa_escape * wc.radii[a]) {
                    escapes = true;
                    break;
                }
            }
            if (!escapes) return false;
        }
        ++whitney_done;
    }
    detail = std::to_string(vitali_done) + " vitali + " + std::to_string(whitney_done) +
             " whitney instances";
    return true;
}

bool criterion_maximal(std::string& detail) {
    Rng rng(202);
    int oracle_checked = 0;
    for (int i = 0; i < 200; ++i) {
        const auto s = corpus_space(i, rng, i % 3 == 0 ? 40 : 120);
        const auto f = tu::random_function(s, rng, 1 + rng.index(2), rng.coin() ? 0.5 : 0.0);
        const double R = rng.uniform(0.15, 1.0) * s.diameter() + 0.05;

        if (!check_comparison(s, f, R).pass) return false;

        std::vector<int> E;
        for (int x = 0; x < s.n(); ++x) E.push_back(x);
        if (s.set_diameter(E) < 6.0 * R) {
            if (!check_weak11(s, f, E, R).pass) return false;
            for (double p : {1.5, 2.0, 4.0, kInf}) {
                if (!check_lp_bound(s, f, E, R, p).pass) return false;
            }
        } else {
            const int c = rng.index(s.n());
            const auto Eb = s.ball_members(c, 2.9 * R);
            if (!check_weak11(s, f, Eb, R).pass) return false;
            for (double p : {1.5, 2.0, 4.0, kInf}) {
                if (!check_lp_bound(s, f, Eb, R, p).pass) return false;
            }
        }

        if (s.n() <= 40) {
            const auto mags = f.magnitudes();
            const auto mc = maximal_centred(s, mags, R);
            const auto mu = maximal_uncentred(s, mags, R);
            const auto oc = tu::oracle_maximal(s, mags, R, true);
            const auto ou = tu::oracle_maximal(s, mags, R, false);
            for (int x = 0; x < s.n(); ++x) {
                const double scale = std::max({1.0, oc[x], ou[x]});
                if (std::fabs(mc[x] - oc[x]) > 1e-12 * scale) return false;
                if (std::fabs(mu[x] - ou[x]) > 1e-12 * scale) return false;
            }
            ++oracle_checked;
        }
    }
    detail = "200 instances, " + std::to_string(oracle_checked) + " oracle-checked";
    return true;
}

bool criterion_czd(std::string& detail) {
    // the 200-point spike trace, reproduced exactly
    {
        const int n = 200;
        const auto s = make_line(n);
        const int x0 = 100;
        const double height = 8.0;
        FunctionOnSpace f(n, 1);
        f.set(x0, 0, height);
        std::vector<int> E(n);
        for (int i = 0; i < n; ++i) E[i] = i;
        const auto dec = cz_decompose(s, f, E, 200.0, 2.5, height / 2.0);
        if (dec.bad_set != std::vector<int>{x0}) return false;
        if (dec.centers != std::vector<int>{x0}) return false;
        if (dec.radii != std::vector<double>{0.5}) return false;
        for (int x = 0; x < n; ++x) {
            if (dec.h[0].value(x, 0) != 0.0) return false;
        }
        if (dec.g.values() != f.values()) return false;
        for (const auto& r : certify_czd(s, f, dec)) {
            if (!r.pass) return false;
        }
    }

    Rng rng(303);
    int done = 0;
    while (done < 500) {
        const auto s = corpus_space(done, rng, 200);
        if (s.n() < 4) continue;
        const int c = rng.index(s.n());
        const auto E = s.ball_members(c, rng.uniform(0.15, 0.45) * s.diameter());
        FunctionOnSpace f(s.n(), rng.coin(0.2) ? 2 : 1);
        bool any = false;
        for (int x : E) {
            if (rng.coin(0.25)) continue;
            for (int cc = 0; cc < f.coords(); ++cc) {
                f.set(x, cc,
                      rng.coin(0.08) ? rng.uniform(-50.0, 50.0) : rng.uniform(-2.0, 2.0));
                any = true;
            }
        }
        if (!any) continue;
        const double R = s.set_diameter(E) * 1.25 + 0.5;
        const double kappa = 2.0 + 0.25 * (1 + done % 4);
        const double threshold = czd_admissibility_threshold(s, f, E, R, kappa);
        const double alpha = threshold * (1.05 + (done % 7));
        const auto dec = cz_decompose(s, f, E, R, kappa, alpha);

        const auto f_mags = f.magnitudes();
        const double finf = lp_norm(s, f_mags, kInf);
        // reconstruction residual, pinned at 1e-10 relative
        for (int x = 0; x < s.n(); ++x) {
            for (int cc = 0; cc < f.coords(); ++cc) {
                double v = dec.g.value(x, cc);
                for (const auto& hx : dec.h) v += hx.value(x, cc);
                if (std::fabs(f.value(x, cc) - v) > 1e-10 * (1.0 + finf)) return false;
            }
        }
        for (const auto& r : certify_czd(s, f, dec)) {
            if (!r.pass) {
                detail = "failed " + r.name + " at instance " + std::to_string(done);
                return false;
            }
        }
        ++done;
    }
    detail = "500 admissible instances + exact spike trace";
    return true;
}

bool criterion_phi(std::string& detail) {
    for (int i = 1; i <= 100; ++i) {
        const double p = 1.0 + 0.07 * i;
        const double expect = std::pow(p / (p - 1.0), 1.0 / p);
        if (std::fabs(phi(kInf, p) - expect) > 1e-12 * expect) return false;
        if (phi(1.0 + 0.3 * i, 1.0 + 0.3 * i) != 1.0) return false;
    }
    Rng rng(404);
    for (int i = 0; i < 1000; ++i) {
        const double r = 1.05 + std::exp(rng.uniform(-2.0, 4.0));
        const double p = 1.0 + (r - 1.0) * rng.uniform(0.02, 1.0);
        const double mine = phi(r, p);
        const double grid = tu::oracle_phi_grid(r, p);
        if (std::fabs(mine - grid) > 1e-9 * grid) {
            detail = "phi mismatch at r=" + std::to_string(r) + " p=" + std::to_string(p);
            return false;
        }
    }
    for (double r : {4.0, 9.0, 25.0, 100.0, 1000.0}) {
        const double sq = std::sqrt(r);
        for (double t : {0.0, 0.5, 1.0}) {
            const double p_hi = sq + (r - sq) * t;
            if (phi_upper_bounds(r, p_hi).first < phi(r, p_hi) * (1.0 - 1e-12)) return false;
            const double p_lo = 1.0 + (sq - 1.0) * std::max(t, 0.1);
            if (phi_upper_bounds(r, p_lo).second < phi(r, p_lo) * (1.0 - 1e-12)) return false;
        }
    }
    const double sup = phi_region_sup(2.0, 2.0, 64);
    if (!std::isfinite(sup)) return false;
    detail = "region sup = " + std::to_string(sup);
    return true;
}

bool criterion_kernel(std::string& detail) {
    Rng rng(505);
    const auto h = BumpProfile::make(7.0 / 6.0);
    double worst_c6 = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto s = corpus_space(i, rng, 100);
        const double R = s.diameter() * rng.uniform(0.3, 1.0) + 0.1;
        const double r = R * rng.uniform(0.1, 1.0);
        const auto k = build_kernel(s, h, r, R);
        for (const auto& rep : certify_kernel(s, k)) {
            if (!rep.pass) {
                detail = "failed " + rep.name + " at instance " + std::to_string(i);
                return false;
            }
        }
        // stability: rebuilding yields the identical kernel and constant
        if (i % 20 == 0) {
            const auto k2 = build_kernel(s, h, r, R);
            if (k2.S != k.S || k2.empirical_c6 != k.empirical_c6) return false;
        }
        const auto u = t_r_one(s, h, r);
        for (int x = 0; x < s.n(); ++x) {
            if (u[x] < s.ball_measure(x, r) * (1.0 - 1e-12)) return false;
            if (u[x] > s.ball_measure(x, h.eta * r) * (1.0 + 1e-12)) return false;
        }
        worst_c6 = std::max(worst_c6, k.empirical_c6);
    }
    detail = "200 kernels, max empirical lipschitz constant = " + std::to_string(worst_c6);
    return true;
}

bool criterion_operator(std::string& detail) {
    const auto h = BumpProfile::make(7.0 / 6.0);
    const std::vector<double> ps{1.5, 2.0, 4.0};

    // localized checks: S_r kernels on a line and a grid, both exponent
    // regimes, 200 seeded random + adversarial f per configuration
    {
        const auto s = make_line(100);
        const double R = 24.0;
        const auto k = build_kernel(s, h, R / 8.0, R);
        std::vector<int> E;
        for (int i = 40; i < 62; ++i) E.push_back(i);
        for (const auto& r : check_czo_bound(s, k.S, E, R, 2.5, kInf, ps, 200, 606)) {
            if (!r.pass) {
                detail = "line czo " + r.name;
                return false;
            }
        }
        for (const auto& r : check_czo_bound(s, k.S, E, R, 2.5, 2.0, ps, 200, 607)) {
            if (!r.pass) {
                detail = "line czo r=2 " + r.name;
                return false;
            }
        }
    }
    {
        const auto s = with_random_weights(make_grid(10, 10), 99);
        const double R = 6.0;
        const auto k = build_kernel(s, h, R / 8.0, R);
        const auto E = s.ball_members(45, 0.45 * R);
        for (const auto& r : check_czo_bound(s, k.S, E, R, 2.75, kInf, ps, 200, 608)) {
            if (!r.pass) {
                detail = "grid czo " + r.name;
                return false;
            }
        }
    }

    // patched global bound on a 200-point line
    {
        const auto s = make_line(200);
        const double R = 32.0;
        const auto k = build_kernel(s, h, R / 8.0, R);
        for (const auto& r : check_patched_bound(s, k.S, R, 2.5, kInf, ps, 200, 609)) {
            if (!r.pass) {
                detail = "patched " + r.name;
                return false;
            }
        }
    }

    // hormander constant matches the independent pair scan exactly, n <= 60
    Rng rng(610);
    for (int i = 0; i < 10; ++i) {
        const auto s = tu::random_space(rng, 60);
        const double R = s.diameter() * 0.8 + 0.2;
        const auto E = s.ball_members(rng.index(s.n()), 0.45 * R);
        if (s.set_diameter(E) >= R) continue;
        const auto k = build_kernel(s, h, R / 8.0, R);
        if (hormander_constant(s, k.S, E, R) != tu::oracle_hormander(s, k.S, E, R)) {
            detail = "hormander mismatch at instance " + std::to_string(i);
            return false;
        }
    }
    detail = "czo line/grid, dual branch, patched, hormander oracle";
    return true;
}

bool criterion_mixed(std::string& detail) {
    Rng rng(707);
    // mixed norms vs the nested-loop oracle
    for (int rep = 0; rep < 100; ++rep) {
        MixedNormTensor t;
        const int naxes = 1 + rng.index(3);
        std::size_t total = 1;
        for (int a = 0; a < naxes; ++a) {
            const int len = 1 + rng.index(5);
            t.axes.push_back(len);
            std::vector<double> w(len);
            for (double& v : w) v = rng.dyadic(0.25, 2.0, 6);
            t.weights.push_back(std::move(w));
            t.exponents.push_back(1.0 + rng.dyadic(0.25, 3.0, 4));
            total *= static_cast<std::size_t>(len);
        }
        t.values.resize(total);
        for (double& v : t.values) v = rng.uniform(-2.0, 2.0);
        const double mine = mixed_norm(t);
        const double oracle = tu::oracle_mixed_norm(t);
        if (std::fabs(mine - oracle) > 1e-12 * std::max(1.0, oracle)) return false;
    }

    const auto s = make_grid(7, 7);  // 49 points
    const auto s2 = with_random_weights(make_random_points(50, 2, 808), 809);
    for (const auto* sp : {&s, &s2}) {
        // k = 1, singleton Y: agrees with the scalar maximal route
        MixedNormTensor t1;
        t1.axes = {1, sp->n()};
        t1.weights = {{1.0}, sp->weights()};
        t1.exponents = {2.0, 2.5};
        t1.values.resize(sp->n());
        for (double& v : t1.values) v = rng.uniform(-1.0, 1.0);
        const double R = sp->diameter() / 5.0;
        const auto rep1 = check_mixed_maximal(*sp, t1, R);
        if (!rep1.pass) return false;
        std::vector<double> mags(sp->n());
        for (int i = 0; i < sp->n(); ++i) mags[i] = std::fabs(t1.values[i]);
        const auto m = maximal_centred(*sp, mags, 2.0 * R);
        if (std::fabs(rep1.measured_lhs - lp_norm(*sp, m, 2.5)) >
            1e-12 * std::max(1.0, rep1.measured_lhs)) {
            return false;
        }

        // k = 2
        MixedNormTensor t2;
        t2.axes = {3, 2, sp->n()};
        t2.weights = {{1.0, 0.5, 1.5}, {1.0, 2.0}, sp->weights()};
        t2.exponents = {2.0, 3.0, 2.0};
        t2.values.resize(static_cast<std::size_t>(6) * sp->n());
        for (double& v : t2.values) v = rng.uniform(-1.0, 1.0);
        const auto rep2 = check_mixed_maximal(*sp, t2, R);
        if (!rep2.pass) return false;
        if (!check_schur_rowsum(*sp, R).pass) return false;
    }
    detail = "oracle norms, k=1 reduction, k in {1,2} bounds";
    return true;
}

bool criterion_determinism(std::string& detail) {
    SuiteConfig config;
    config.seed = 90;
    config.spaces = nlohmann::json::array(
        {{{"generator", "line"}, {"n", 16}},
         {{"generator", "random_points"}, {"n", 24}, {"dim", 2}, {"weights", "random"}}});
    config.radii = {1.0, 2.5};
    config.exponents = {1.5, 2.0};
    config.trials = 20;
    config.checks = {"doubling", "covering", "maximal", "czd", "phi", "kernel", "czo",
                     "mixed"};
    const auto r1 = run_suite(config);
    const auto r2 = run_suite(config);
    if (!r1.all_pass) {
        detail = "suite reported failures";
        return false;
    }
    if (r1.body.dump() != r2.body.dump()) {
        detail = "report bodies differ between reruns";
        return false;
    }
    detail = "byte-identical report bodies across reruns";
    return true;
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"1 covering suite", 60.0, criterion_covering},
        {"2 maximal suite", 60.0, criterion_maximal},
        {"3 cz decomposition suite", 120.0, criterion_czd},
        {"4 phi suite", 30.0, criterion_phi},
        {"5 kernel suite", 60.0, criterion_kernel},
        {"6 operator suite", 180.0, criterion_operator},
        {"7 mixed-norm suite", 120.0, criterion_mixed},
        {"8 determinism", 60.0, criterion_determinism},
    };
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < c.budget_seconds;
        if (!in_budget) detail += (detail.empty() ? "" : "; ") + std::string("OVER BUDGET");
        std::printf("[%s] criterion %s (%.1fs/%.0fs)%s%s\n",
                    ok && in_budget ? "PASS" : "FAIL", c.name.c_str(), secs,
                    c.budget_seconds, detail.empty() ? "" : " - ", detail.c_str());
        if (!ok || !in_budget) ++g_failures;
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
