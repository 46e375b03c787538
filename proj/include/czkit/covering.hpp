#pragma once

#include <vector>

#include "czkit/space.hpp"

namespace czkit {

// Greedy disjoint subfamily whose 3r-dilations cover the target set E.
struct VitaliCover {
    std::vector<int> centers;      // selection order
    std::vector<double> radii;     // r(x) per center
    std::vector<double> step_sup;  // max of r over the set remaining at each step
    std::vector<int> target;       // E
};

// Balls filling the open set U with radii d(x, X\U)/2, bounded overlap, and
// dilations escaping U.
struct WhitneyCover {
    std::vector<int> centers;   // selection order
    std::vector<double> radii;  // r(x) = d(x, X\U)/2, in (0, R/2]
    double overlap_bound = 1.0; // D_R^5
    std::vector<int> target;    // U
    double R = 0.0;
};

// radii aligned with E; requires E nonempty, diam(E) < 2R, r(x) in (0, R].
// At each step the greedy picks a remaining point attaining the maximum of r
// (ties broken by lowest point index).
VitaliCover vitali_cover(const MetricMeasureSpace& s, const std::vector<int>& E,
                         const std::vector<double>& radii, double R);

// requires U nonempty and proper, diam(U) < R, and d(x, X\U) <= R on U.
WhitneyCover whitney_cover(const MetricMeasureSpace& s, const std::vector<int>& U, double R);

// sum_x chi_{B(centers[i], radii[i])}(z) for every point z
std::vector<int> overlap_counts(const MetricMeasureSpace& s, const std::vector<int>& centers,
                                const std::vector<double>& radii);

}  // namespace czkit
