#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "czkit/rng.hpp"
#include "czkit/simd/kernels.hpp"

using czkit::Rng;
namespace simd = czkit::simd;

namespace {

struct Arrays {
    std::vector<double> a, b, c, w, d;
};

Arrays random_arrays(Rng& rng, std::size_t n) {
    Arrays r;
    r.a.resize(n);
    r.b.resize(n);
    r.c.resize(n);
    r.w.resize(n);
    r.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.a[i] = rng.uniform(-3.0, 3.0);
        r.b[i] = rng.uniform(-3.0, 3.0);
        r.c[i] = rng.uniform(-1.0, 1.0);
        r.w[i] = rng.uniform(0.0, 2.0);
        r.d[i] = rng.uniform(0.0, 4.0);
    }
    return r;
}

std::vector<const simd::Kernels*> backends() {
    std::vector<const simd::Kernels*> out{&simd::scalar_kernels()};
#if defined(__x86_64__) || defined(_M_X64)
    if (simd::avx2_supported()) out.push_back(&simd::avx2_kernels());
#endif
#if defined(__aarch64__)
    out.push_back(&simd::neon_kernels());
#endif
    return out;
}

}  // namespace

TEST_CASE("backends agree bitwise on every kernel") {
    Rng rng(20240811);
    const auto bs = backends();
    REQUIRE(!bs.empty());
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 64u, 257u, 1001u}) {
        const Arrays ar = random_arrays(rng, n);
        const auto& ref = *bs.front();
        const double dot0 = ref.dot(ar.a.data(), ar.b.data(), n);
        const double dot30 = ref.dot3(ar.a.data(), ar.b.data(), ar.c.data(), n);
        const double l10 =
            ref.l1_diff_masked(ar.a.data(), ar.b.data(), ar.w.data(), ar.d.data(), 2.0, n);
        const double mx0 =
            ref.max_absdiff_affine(ar.a.data(), ar.b.data(), ar.w.data(), 0.5, n);
        const std::size_t tv0 = ref.triangle_violation(ar.a.data(), ar.b.data(), 0.25, n);
        for (const auto* k : bs) {
            CAPTURE(k->name);
            CAPTURE(n);
            CHECK(k->dot(ar.a.data(), ar.b.data(), n) == dot0);
            CHECK(k->dot3(ar.a.data(), ar.b.data(), ar.c.data(), n) == dot30);
            CHECK(k->l1_diff_masked(ar.a.data(), ar.b.data(), ar.w.data(), ar.d.data(), 2.0,
                                    n) == l10);
            CHECK(k->max_absdiff_affine(ar.a.data(), ar.b.data(), ar.w.data(), 0.5, n) == mx0);
            CHECK(k->triangle_violation(ar.a.data(), ar.b.data(), 0.25, n) == tv0);
        }
    }
}

TEST_CASE("kernels compute the right values") {
    Rng rng(7);
    const auto& k = simd::active();
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rng.index(300);
        const Arrays ar = random_arrays(rng, n);

        long double dot = 0.0L, dot3 = 0.0L, l1 = 0.0L;
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += static_cast<long double>(ar.a[i]) * ar.b[i];
            dot3 += static_cast<long double>(ar.a[i]) * ar.b[i] * ar.c[i];
            if (ar.d[i] >= 2.0) l1 += std::fabs(static_cast<long double>(ar.a[i]) - ar.b[i]) * ar.w[i];
            mx = std::max(mx, std::fabs(ar.a[i] - ar.b[i]) * (0.5 + ar.w[i]));
        }
        CHECK(k.dot(ar.a.data(), ar.b.data(), n) ==
              doctest::Approx(static_cast<double>(dot)).epsilon(1e-12));
        CHECK(k.dot3(ar.a.data(), ar.b.data(), ar.c.data(), n) ==
              doctest::Approx(static_cast<double>(dot3)).epsilon(1e-12));
        CHECK(k.l1_diff_masked(ar.a.data(), ar.b.data(), ar.w.data(), ar.d.data(), 2.0, n) ==
              doctest::Approx(static_cast<double>(l1)).epsilon(1e-12));
        CHECK(k.max_absdiff_affine(ar.a.data(), ar.b.data(), ar.w.data(), 0.5, n) == mx);
    }
}

TEST_CASE("triangle_violation finds the first offending index") {
    const auto& k = simd::active();
    std::vector<double> di{1.0, 2.0, 9.0, 3.0, 9.5, 1.0};
    std::vector<double> dj{0.5, 1.0, 0.5, 2.0, 0.25, 0.5};
    // bound is dij + dj[i] with dij = 2: violations at 2 (9 > 2.5) and 4
    CHECK(k.triangle_violation(di.data(), dj.data(), 2.0, di.size()) == 2);
    di[2] = 2.0;
    CHECK(k.triangle_violation(di.data(), dj.data(), 2.0, di.size()) == 4);
    di[4] = 1.0;
    CHECK(k.triangle_violation(di.data(), dj.data(), 2.0, di.size()) == SIZE_MAX);
    CHECK(k.triangle_violation(di.data(), dj.data(), 2.0, 0) == SIZE_MAX);
}

TEST_CASE("force_backend selects and falls back") {
    CHECK(simd::force_backend("scalar"));
    CHECK(std::string(simd::active().name) == "scalar");
    CHECK_FALSE(simd::force_backend("no-such-backend"));
    CHECK(simd::force_backend("auto"));
}
