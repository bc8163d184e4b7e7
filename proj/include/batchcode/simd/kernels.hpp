#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "batchcode/column_set.hpp"

namespace batchcode::simd {

enum class Level { Scalar, Avx2 };

std::string_view level_name(Level level);

// Inner loops shared by the checkers. Every level computes identical results;
// the scalar table is the reference the others are tested against.
struct KernelTable {
    Level level;

    // Number of sets in `sets` sharing at least one column with `probe`.
    std::size_t (*count_intersecting)(std::span<const ColumnSet> sets, const ColumnSet& probe);

    // Index of the first set at or after `start` that is disjoint from `used`,
    // or sets.size() when there is none.
    std::size_t (*find_disjoint)(std::span<const ColumnSet> sets, const ColumnSet& used, std::size_t start);

    // dst ^= src over `dst.size()` words.
    void (*xor_words)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

    // dst[j] = (dst[j] + coeff * src[j]) mod q, with all inputs reduced and q < 2^16.
    void (*axpy_mod)(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t coeff,
                     std::uint32_t q);
};

const KernelTable& scalar_kernels();

// True when this build carries the level and the running CPU supports it.
bool level_available(Level level);

// Table for an explicit level; throws std::invalid_argument when unavailable.
const KernelTable& kernels_for(Level level);

// Table chosen at first use: the best available level, unless the
// BATCHCODE_SIMD environment variable names one ("scalar" or "avx2").
const KernelTable& kernels();

// Overrides the runtime choice (tests and benchmarks).
void force_level(Level level);

namespace detail {
#if defined(BATCHCODE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
}  // namespace detail

}  // namespace batchcode::simd
