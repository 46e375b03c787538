#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace czkit::simd {

// Double-precision reduction kernels used by the hot loops (kernel assembly,
// operator application, Hörmander scans, metric validation).
//
// Every backend accumulates in four interleaved bins over the blocked prefix
// (element i goes to bin i mod 4), combines them as (b0+b1)+(b2+b3), and then
// folds the tail elements in order. This is the project-wide fixed reduction
// order: all backends produce bitwise identical results, which the
// equivalence tests assert exactly.
struct Kernels {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]*b[i]*c[i]
    double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
    // sum_i |a[i]-b[i]|*w[i] over indices with d[i] >= threshold
    double (*l1_diff_masked)(const double* a, const double* b, const double* w,
                             const double* d, double threshold, std::size_t n);
    // max_i |a[i]-b[i]|*(c + v[i]); returns 0 for n == 0
    double (*max_absdiff_affine)(const double* a, const double* b, const double* v,
                                 double c, std::size_t n);
    // first k with di[k] > dij + dj[k], or SIZE_MAX if none (exact compares)
    std::size_t (*triangle_violation)(const double* di, const double* dj,
                                      double dij, std::size_t n);
    const char* name;
};

// Backend selected at startup: AVX2 on x86-64 when the CPU supports it,
// NEON on aarch64, scalar otherwise. CZKIT_SIMD=scalar|avx2|neon|auto
// overrides the choice (unsupported requests fall back to scalar).
const Kernels& active();

const Kernels& scalar_kernels();

#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
bool avx2_supported();
#endif

#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

// For tests: force a backend by name ("scalar", "avx2", "neon", "auto").
// Returns false if the backend is unavailable on this machine.
bool force_backend(const std::string& name);

}  // namespace czkit::simd
