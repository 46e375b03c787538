#include "czkit/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace czkit::simd {
namespace {

const Kernels* pick(const std::string& name) {
    if (name == "scalar") return &scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") return avx2_supported() ? &avx2_kernels() : nullptr;
#endif
#if defined(__aarch64__)
    if (name == "neon") return &neon_kernels();
#endif
    if (name == "auto") {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_supported()) return &avx2_kernels();
#endif
#if defined(__aarch64__)
        return &neon_kernels();
#endif
        return &scalar_kernels();
    }
    return nullptr;
}

std::atomic<const Kernels*> g_active{nullptr};

const Kernels* init_from_env() {
    const char* env = std::getenv("CZKIT_SIMD");
    const Kernels* k = env ? pick(env) : nullptr;
    if (!k) k = pick("auto");
    return k;
}

}  // namespace

const Kernels& active() {
    const Kernels* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        k = init_from_env();
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

bool force_backend(const std::string& name) {
    const Kernels* k = pick(name);
    if (!k) return false;
    g_active.store(k, std::memory_order_release);
    return true;
}

}  // namespace czkit::simd
