#include "czkit/simd/kernels.hpp"

#include <cmath>
#include <cstdint>

// Reference backend. The 4-bin interleaved accumulation mirrors the lanes of
// the 256-bit vector backends exactly; see kernels.hpp.

namespace czkit::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        acc0 += a[i] * b[i];
        acc1 += a[i + 1] * b[i + 1];
        acc2 += a[i + 2] * b[i + 2];
        acc3 += a[i + 3] * b[i + 3];
    }
    double acc = (acc0 + acc1) + (acc2 + acc3);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        acc0 += a[i] * b[i] * c[i];
        acc1 += a[i + 1] * b[i + 1] * c[i + 1];
        acc2 += a[i + 2] * b[i + 2] * c[i + 2];
        acc3 += a[i + 3] * b[i + 3] * c[i + 3];
    }
    double acc = (acc0 + acc1) + (acc2 + acc3);
    for (; i < n; ++i) acc += a[i] * b[i] * c[i];
    return acc;
}

double l1_diff_masked_scalar(const double* a, const double* b, const double* w,
                             const double* d, double threshold, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        if (d[i] >= threshold) acc0 += std::fabs(a[i] - b[i]) * w[i];
        if (d[i + 1] >= threshold) acc1 += std::fabs(a[i + 1] - b[i + 1]) * w[i + 1];
        if (d[i + 2] >= threshold) acc2 += std::fabs(a[i + 2] - b[i + 2]) * w[i + 2];
        if (d[i + 3] >= threshold) acc3 += std::fabs(a[i + 3] - b[i + 3]) * w[i + 3];
    }
    double acc = (acc0 + acc1) + (acc2 + acc3);
    for (; i < n; ++i) {
        if (d[i] >= threshold) acc += std::fabs(a[i] - b[i]) * w[i];
    }
    return acc;
}

double max_absdiff_affine_scalar(const double* a, const double* b, const double* v,
                                 double c, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::fabs(a[i] - b[i]) * (c + v[i]);
        if (t > m) m = t;
    }
    return m;
}

std::size_t triangle_violation_scalar(const double* di, const double* dj,
                                      double dij, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (di[i] > dij + dj[i]) return i;
    }
    return SIZE_MAX;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{dot_scalar,
                           dot3_scalar,
                           l1_diff_masked_scalar,
                           max_absdiff_affine_scalar,
                           triangle_violation_scalar,
                           "scalar"};
    return k;
}

}  // namespace czkit::simd
