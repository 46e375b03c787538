#include "czkit/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace czkit::simd {
namespace {

// (b0+b1)+(b2+b3), matching the scalar bin combine.
inline double hsum4(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const double b0 = _mm_cvtsd_f64(lo);
    const double b1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    const double b2 = _mm_cvtsd_f64(hi);
    const double b3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
    return (b0 + b1) + (b2 + b3);
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double s = hsum4(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_avx2(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d vc = _mm256_loadu_pd(c + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(va, vb), vc));
    }
    double s = hsum4(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double l1_diff_masked_avx2(const double* a, const double* b, const double* w,
                           const double* d, double threshold, std::size_t n) {
    const __m256d vth = _mm256_set1_pd(threshold);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d vw = _mm256_loadu_pd(w + i);
        const __m256d vd = _mm256_loadu_pd(d + i);
        const __m256d mask = _mm256_cmp_pd(vd, vth, _CMP_GE_OQ);
        const __m256d term = _mm256_mul_pd(abs_pd(_mm256_sub_pd(va, vb)), vw);
        acc = _mm256_add_pd(acc, _mm256_and_pd(mask, term));
    }
    double s = hsum4(acc);
    for (; i < n; ++i) {
        if (d[i] >= threshold) s += std::fabs(a[i] - b[i]) * w[i];
    }
    return s;
}

double max_absdiff_affine_avx2(const double* a, const double* b, const double* v,
                               double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    __m256d mx = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d vv = _mm256_loadu_pd(v + i);
        const __m256d t = _mm256_mul_pd(abs_pd(_mm256_sub_pd(va, vb)),
                                        _mm256_add_pd(vc, vv));
        mx = _mm256_max_pd(mx, t);
    }
    const __m128d lo = _mm256_castpd256_pd128(mx);
    const __m128d hi = _mm256_extractf128_pd(mx, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; i < n; ++i) {
        const double t = std::fabs(a[i] - b[i]) * (c + v[i]);
        if (t > m) m = t;
    }
    return m;
}

std::size_t triangle_violation_avx2(const double* di, const double* dj,
                                    double dij, std::size_t n) {
    const __m256d vdij = _mm256_set1_pd(dij);
    std::size_t i = 0;
    const std::size_t n4 = n - (n % 4);
    for (; i < n4; i += 4) {
        const __m256d vdi = _mm256_loadu_pd(di + i);
        const __m256d vdj = _mm256_loadu_pd(dj + i);
        const __m256d bound = _mm256_add_pd(vdij, vdj);
        const __m256d viol = _mm256_cmp_pd(vdi, bound, _CMP_GT_OQ);
        const int bits = _mm256_movemask_pd(viol);
        if (bits != 0) return i + static_cast<std::size_t>(__builtin_ctz(bits));
    }
    for (; i < n; ++i) {
        if (di[i] > dij + dj[i]) return i;
    }
    return SIZE_MAX;
}

}  // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{dot_avx2,
                           dot3_avx2,
                           l1_diff_masked_avx2,
                           max_absdiff_affine_avx2,
                           triangle_violation_avx2,
                           "avx2"};
    return k;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace czkit::simd

#endif  // x86-64
