#include "czkit/covering.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace czkit {

VitaliCover vitali_cover(const MetricMeasureSpace& s, const std::vector<int>& E,
                         const std::vector<double>& radii, double R) {
    if (E.empty()) throw std::invalid_argument("vitali_cover: E must be nonempty");
    if (radii.size() != E.size()) {
        throw std::invalid_argument("vitali_cover: radii not aligned with E");
    }
    if (!(R > 0.0)) throw std::invalid_argument("vitali_cover: R must be positive");
    const double diam = s.set_diameter(E);
    if (!(diam < 2.0 * R)) {
        throw std::invalid_argument("vitali_cover: diam(E) = " + std::to_string(diam) +
                                    " must be < 2R");
    }
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (!(radii[i] > 0.0) || radii[i] > R) {
            throw std::invalid_argument("vitali_cover: r(" + std::to_string(E[i]) +
                                        ") outside (0, R]");
        }
    }

    VitaliCover cover;
    cover.target = E;

    // remaining E_j, tracked per point; scan in ascending point index so ties
    // go to the lowest index
    std::vector<char> remaining(s.n(), 0);
    std::vector<double> r_of(s.n(), 0.0);
    for (std::size_t i = 0; i < E.size(); ++i) {
        remaining[E[i]] = 1;
        r_of[E[i]] = radii[i];
    }
    int left = static_cast<int>(E.size());
    while (left > 0) {
        int pick = -1;
        double best = 0.0;
        for (int x = 0; x < s.n(); ++x) {
            if (remaining[x] && r_of[x] > best) {
                best = r_of[x];
                pick = x;
            }
        }
        cover.centers.push_back(pick);
        cover.radii.push_back(best);
        cover.step_sup.push_back(best);
        const double* row = s.dist_row(pick);
        for (int y = 0; y < s.n(); ++y) {
            if (remaining[y] && row[y] < 3.0 * best) {
                remaining[y] = 0;
                --left;
            }
        }
    }
    return cover;
}

WhitneyCover whitney_cover(const MetricMeasureSpace& s, const std::vector<int>& U, double R) {
    if (U.empty()) throw std::invalid_argument("whitney_cover: U must be nonempty");
    if (static_cast<int>(U.size()) >= s.n()) {
        throw std::invalid_argument("whitney_cover: U must be a proper subset");
    }
    if (!(R > 0.0)) throw std::invalid_argument("whitney_cover: R must be positive");
    const double diam = s.set_diameter(U);
    if (!(diam < R)) {
        throw std::invalid_argument("whitney_cover: diam(U) = " + std::to_string(diam) +
                                    " must be < R");
    }

    std::vector<char> in_u(s.n(), 0);
    for (int x : U) in_u[x] = 1;
    std::vector<int> complement;
    for (int x = 0; x < s.n(); ++x) {
        if (!in_u[x]) complement.push_back(x);
    }

    // r(x) = d(x, X\U)/2; halving is exact, so selection, removal and the
    // r(x)/3 disjointness radius are all evaluated on the same bit patterns.
    // This is the Vitali greedy on r'(x) = r(x)/3 with removal radius
    // 3 r'(x) = r(x).
    std::vector<double> r_of(s.n(), 0.0);
    for (int x : U) {
        const double d = s.dist_to_set(x, complement);
        if (!(d <= R)) {
            throw std::invalid_argument("whitney_cover: d(x, X\\U) > R at point " +
                                        std::to_string(x));
        }
        r_of[x] = d / 2.0;
    }

    WhitneyCover wc;
    wc.target = U;
    wc.R = R;
    std::vector<char> remaining(s.n(), 0);
    for (int x : U) remaining[x] = 1;
    int left = static_cast<int>(U.size());
    while (left > 0) {
        int pick = -1;
        double best = 0.0;
        for (int x = 0; x < s.n(); ++x) {
            if (remaining[x] && r_of[x] > best) {
                best = r_of[x];
                pick = x;
            }
        }
        wc.centers.push_back(pick);
        wc.radii.push_back(best);
        const double* row = s.dist_row(pick);
        for (int y = 0; y < s.n(); ++y) {
            if (remaining[y] && row[y] < best) {
                remaining[y] = 0;
                --left;
            }
        }
    }
    wc.overlap_bound = std::pow(doubling_constant(s, R), 5.0);
    return wc;
}

std::vector<int> overlap_counts(const MetricMeasureSpace& s, const std::vector<int>& centers,
                                const std::vector<double>& radii) {
    std::vector<int> counts(s.n(), 0);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double* row = s.dist_row(centers[i]);
        for (int z = 0; z < s.n(); ++z) {
            if (row[z] < radii[i]) ++counts[z];
        }
    }
    return counts;
}

}  // namespace czkit
