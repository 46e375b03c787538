#include "czkit/simd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

// Two float64x2 accumulators form the same four bins as the AVX2 lanes.

namespace czkit::simd {
namespace {

inline double combine(float64x2_t lo, float64x2_t hi) {
    const double b0 = vgetq_lane_f64(lo, 0);
    const double b1 = vgetq_lane_f64(lo, 1);
    const double b2 = vgetq_lane_f64(hi, 0);
    const double b3 = vgetq_lane_f64(hi, 1);
    return (b0 + b1) + (b2 + b3);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double s = combine(lo, hi);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_neon(const double* a, const double* b, const double* c, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)),
                                     vld1q_f64(c + i)));
        hi = vaddq_f64(hi, vmulq_f64(vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)),
                                     vld1q_f64(c + i + 2)));
    }
    double s = combine(lo, hi);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

inline float64x2_t masked_term(const double* a, const double* b, const double* w,
                               const double* d, float64x2_t vth) {
    const float64x2_t diff = vabdq_f64(vld1q_f64(a), vld1q_f64(b));
    const float64x2_t term = vmulq_f64(diff, vld1q_f64(w));
    const uint64x2_t mask = vcgeq_f64(vld1q_f64(d), vth);
    return vreinterpretq_f64_u64(
        vandq_u64(mask, vreinterpretq_u64_f64(term)));
}

double l1_diff_masked_neon(const double* a, const double* b, const double* w,
                           const double* d, double threshold, std::size_t n) {
    const float64x2_t vth = vdupq_n_f64(threshold);
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        lo = vaddq_f64(lo, masked_term(a + i, b + i, w + i, d + i, vth));
        hi = vaddq_f64(hi, masked_term(a + i + 2, b + i + 2, w + i + 2, d + i + 2, vth));
    }
    double s = combine(lo, hi);
    for (; i < n; ++i) {
        if (d[i] >= threshold) s += std::fabs(a[i] - b[i]) * w[i];
    }
    return s;
}

double max_absdiff_affine_neon(const double* a, const double* b, const double* v,
                               double c, std::size_t n) {
    const float64x2_t vc = vdupq_n_f64(c);
    float64x2_t mx = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n2 = n - (n % 2);
    for (; i < n2; i += 2) {
        const float64x2_t t = vmulq_f64(vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)),
                                        vaddq_f64(vc, vld1q_f64(v + i)));
        mx = vmaxq_f64(mx, t);
    }
    double m = vmaxvq_f64(mx);
    for (; i < n; ++i) {
        const double t = std::fabs(a[i] - b[i]) * (c + v[i]);
        if (t > m) m = t;
    }
    return m;
}

std::size_t triangle_violation_neon(const double* di, const double* dj,
                                    double dij, std::size_t n) {
    const float64x2_t vdij = vdupq_n_f64(dij);
    std::size_t i = 0;
    const std::size_t n2 = n - (n % 2);
    for (; i < n2; i += 2) {
        const float64x2_t bound = vaddq_f64(vdij, vld1q_f64(dj + i));
        const uint64x2_t viol = vcgtq_f64(vld1q_f64(di + i), bound);
        if (vgetq_lane_u64(viol, 0)) return i;
        if (vgetq_lane_u64(viol, 1)) return i + 1;
    }
    for (; i < n; ++i) {
        if (di[i] > dij + dj[i]) return i;
    }
    return SIZE_MAX;
}

}  // namespace

const Kernels& neon_kernels() {
    static const Kernels k{dot_neon,
                           dot3_neon,
                           l1_diff_masked_neon,
                           max_absdiff_affine_neon,
                           triangle_violation_neon,
                           "neon"};
    return k;
}

}  // namespace czkit::simd

#endif  // aarch64
