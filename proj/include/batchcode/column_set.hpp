#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace batchcode {

// Fixed-capacity set of column indices (0-based) packed into 256 bits.
// The 32-byte alignment lets SIMD kernels load a whole set as one register.
class alignas(32) ColumnSet {
public:
    static constexpr std::size_t kWords = 4;
    static constexpr std::size_t kCapacity = kWords * 64;

    constexpr ColumnSet() = default;

    ColumnSet(std::initializer_list<int> columns) {
        for (int c : columns) insert(c);
    }

    static ColumnSet from_indices(const std::vector<int>& columns) {
        ColumnSet s;
        for (int c : columns) s.insert(c);
        return s;
    }

    // Builds a set from 1-based column numbers, as written in the text formats.
    static ColumnSet from_one_based(std::initializer_list<int> columns) {
        ColumnSet s;
        for (int c : columns) s.insert(c - 1);
        return s;
    }

    static ColumnSet single(int column) {
        ColumnSet s;
        s.insert(column);
        return s;
    }

    void insert(int column) {
        check(column);
        words_[column >> 6] |= std::uint64_t{1} << (column & 63);
    }

    void erase(int column) {
        check(column);
        words_[column >> 6] &= ~(std::uint64_t{1} << (column & 63));
    }

    bool contains(int column) const {
        if (column < 0 || static_cast<std::size_t>(column) >= kCapacity) return false;
        return (words_[column >> 6] >> (column & 63)) & 1U;
    }

    bool empty() const {
        return (words_[0] | words_[1] | words_[2] | words_[3]) == 0;
    }

    int size() const {
        int n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }

    bool intersects(const ColumnSet& other) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < kWords; ++i) acc |= words_[i] & other.words_[i];
        return acc != 0;
    }

    bool is_subset_of(const ColumnSet& other) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    ColumnSet& operator|=(const ColumnSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ColumnSet& operator&=(const ColumnSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    ColumnSet& operator-=(const ColumnSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    ColumnSet& operator^=(const ColumnSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    friend ColumnSet operator|(ColumnSet a, const ColumnSet& b) { return a |= b; }
    friend ColumnSet operator&(ColumnSet a, const ColumnSet& b) { return a &= b; }
    friend ColumnSet operator-(ColumnSet a, const ColumnSet& b) { return a -= b; }

    friend bool operator==(const ColumnSet&, const ColumnSet&) = default;

    // Orders by the sorted element list, lexicographically ({1} < {1,2} < {2}).
    friend std::strong_ordering operator<=>(const ColumnSet& a, const ColumnSet& b) {
        const auto ea = a.elements();
        const auto eb = b.elements();
        return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int c) { out.push_back(c); });
        return out;
    }

    // Largest element, or -1 when empty.
    int max_element() const {
        for (std::size_t w = kWords; w-- > 0;)
            if (words_[w]) return static_cast<int>(w * 64 + 63 - std::countl_zero(words_[w]));
        return -1;
    }

    const std::array<std::uint64_t, kWords>& words() const { return words_; }
    const std::uint64_t* data() const { return words_.data(); }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    // "{1,2,3}" with 1-based indices.
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for_each([&](int c) {
            if (!first) s += ',';
            s += std::to_string(c + 1);
            first = false;
        });
        s += '}';
        return s;
    }

private:
    static void check(int column) {
        if (column < 0 || static_cast<std::size_t>(column) >= kCapacity)
            throw std::out_of_range("column index " + std::to_string(column) + " outside ColumnSet capacity");
    }

    std::array<std::uint64_t, kWords> words_{};
};

struct ColumnSetHash {
    std::size_t operator()(const ColumnSet& s) const { return s.hash(); }
};

// All columns 0..n-1.
inline ColumnSet full_column_set(int n) {
    ColumnSet s;
    for (int c = 0; c < n; ++c) s.insert(c);
    return s;
}

}  // namespace batchcode
