// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "batchcode/simd/kernels.hpp"

namespace batchcode::simd::detail {
namespace {

inline __m256i load_set(const ColumnSet& s) {
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(s.data()));
}

std::size_t count_intersecting_avx2(std::span<const ColumnSet> sets, const ColumnSet& probe) {
    const __m256i p = load_set(probe);
    std::size_t n = 0;
    std::size_t i = 0;
    // Two sets per iteration keeps both load ports busy.
    for (; i + 1 < sets.size(); i += 2) {
        n += _mm256_testz_si256(load_set(sets[i]), p) ? 0 : 1;
        n += _mm256_testz_si256(load_set(sets[i + 1]), p) ? 0 : 1;
    }
    for (; i < sets.size(); ++i) n += _mm256_testz_si256(load_set(sets[i]), p) ? 0 : 1;
    return n;
}

std::size_t find_disjoint_avx2(std::span<const ColumnSet> sets, const ColumnSet& used, std::size_t start) {
    const __m256i u = load_set(used);
    for (std::size_t i = start; i < sets.size(); ++i)
        if (_mm256_testz_si256(load_set(sets[i]), u)) return i;
    return sets.size();
}

void xor_words_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
    }
    for (; i < dst.size(); ++i) dst[i] ^= src[i];
}

// Barrett reduction of eight 32-bit lanes, x < 2^32, q < 2^16.
// magic = floor(2^32 / q) underestimates x / q by less than one, so a single
// conditional subtraction finishes the reduction.
inline __m256i reduce_mod(__m256i x, __m256i magic, __m256i q, __m256i q_minus_1) {
    const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, magic), 32);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), magic);
    const __m256i quot = _mm256_blend_epi32(even, odd, 0xAA);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(quot, q));
    const __m256i over = _mm256_cmpgt_epi32(r, q_minus_1);
    return _mm256_sub_epi32(r, _mm256_and_si256(over, q));
}

void axpy_mod_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t coeff,
                   std::uint32_t q) {
    const auto magic_scalar = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / q);
    const __m256i magic = _mm256_set1_epi32(static_cast<int>(magic_scalar));
    const __m256i vq = _mm256_set1_epi32(static_cast<int>(q));
    const __m256i vq1 = _mm256_set1_epi32(static_cast<int>(q - 1));
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(coeff));
    std::size_t i = 0;
    for (; i + 8 <= dst.size(); i += 8) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        const __m256i x = _mm256_add_epi32(_mm256_loadu_si256(d), _mm256_mullo_epi32(_mm256_loadu_si256(s), vc));
        _mm256_storeu_si256(d, reduce_mod(x, magic, vq, vq1));
    }
    for (; i < dst.size(); ++i) {
        const std::uint64_t v = std::uint64_t{dst[i]} + std::uint64_t{coeff} * src[i];
        dst[i] = static_cast<std::uint32_t>(v % q);
    }
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{Level::Avx2, count_intersecting_avx2, find_disjoint_avx2, xor_words_avx2,
                                   axpy_mod_avx2};
    return table;
}

}  // namespace batchcode::simd::detail
