#include "batchcode/simd/kernels.hpp"

namespace batchcode::simd {
namespace {

std::size_t count_intersecting_scalar(std::span<const ColumnSet> sets, const ColumnSet& probe) {
    std::size_t n = 0;
    for (const auto& s : sets) n += s.intersects(probe) ? 1 : 0;
    return n;
}

std::size_t find_disjoint_scalar(std::span<const ColumnSet> sets, const ColumnSet& used, std::size_t start) {
    for (std::size_t i = start; i < sets.size(); ++i)
        if (!sets[i].intersects(used)) return i;
    return sets.size();
}

void xor_words_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

void axpy_mod_scalar(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t coeff,
                     std::uint32_t q) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const std::uint64_t v = std::uint64_t{dst[i]} + std::uint64_t{coeff} * src[i];
        dst[i] = static_cast<std::uint32_t>(v % q);
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Level::Scalar, count_intersecting_scalar, find_disjoint_scalar, xor_words_scalar,
                                   axpy_mod_scalar};
    return table;
}

}  // namespace batchcode::simd
