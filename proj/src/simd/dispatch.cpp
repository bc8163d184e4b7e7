#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "batchcode/simd/kernels.hpp"

namespace batchcode::simd {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* choose_default() {
    if (const char* env = std::getenv("BATCHCODE_SIMD")) {
        const std::string name(env);
        if (name == "scalar") return &scalar_kernels();
        if (name == "avx2") return &kernels_for(Level::Avx2);
        throw std::invalid_argument("BATCHCODE_SIMD=" + name + " is not a known level");
    }
    if (level_available(Level::Avx2)) return &kernels_for(Level::Avx2);
    return &scalar_kernels();
}

}  // namespace

std::string_view level_name(Level level) {
    switch (level) {
        case Level::Scalar: return "scalar";
        case Level::Avx2: return "avx2";
    }
    return "unknown";
}

bool level_available(Level level) {
    switch (level) {
        case Level::Scalar: return true;
        case Level::Avx2:
#if defined(BATCHCODE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Level level) {
    if (!level_available(level))
        throw std::invalid_argument(std::string("SIMD level ") + std::string(level_name(level)) + " unavailable");
#if defined(BATCHCODE_HAVE_AVX2)
    if (level == Level::Avx2) return detail::avx2_kernels();
#endif
    return scalar_kernels();
}

const KernelTable& kernels() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = choose_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void force_level(Level level) { g_active.store(&kernels_for(level), std::memory_order_release); }

}  // namespace batchcode::simd
