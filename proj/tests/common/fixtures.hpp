#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "batchcode/batch.hpp"
#include "batchcode/gf.hpp"
#include "batchcode/recovery.hpp"
#include "batchcode/strong.hpp"

namespace fixtures {

using namespace batchcode;

#ifndef BATCHCODE_DATA_DIR
#define BATCHCODE_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) { return std::string(BATCHCODE_DATA_DIR) + "/" + name; }

inline GFMatrix simplex73() { return GFMatrix::from_strings(2, {"1010101", "0110011", "0001111"}); }
inline GFMatrix code32() { return GFMatrix::from_strings(2, {"101", "011"}); }
inline GFMatrix code38() { return GFMatrix::from_strings(2, {"10101011", "01100111", "00011111"}); }

inline Service svc(int request, std::initializer_list<int> one_based) {
    return {request - 1, ColumnSet::from_one_based(one_based)};
}

// The 12-set collection of the 3x8 code.
inline StrongCollection code38_collection() {
    return StrongCollection(3, {svc(1, {1}), svc(1, {2, 3}), svc(1, {6, 7}), svc(1, {6, 8}), svc(2, {2}), svc(2, {4, 6}),
                                svc(2, {5, 7}), svc(2, {5, 8}), svc(3, {4}), svc(3, {1, 5}), svc(3, {3, 7}),
                                svc(3, {3, 8})});
}

inline GFMatrix random_matrix(std::mt19937_64& rng, std::uint32_t q, int k, int n) {
    GFMatrix g(q, k, n);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) g.set(r, c, static_cast<std::uint32_t>(rng() % q));
    return g;
}

// Naive oracle: every subset of [n] recovering i with no recovering proper subset.
inline std::vector<ColumnSet> naive_minimal(const GFMatrix& g, int i) {
    const int n = g.cols();
    const auto target = GFVector::unit(g.modulus(), static_cast<std::size_t>(g.rows()), static_cast<std::size_t>(i));
    auto recovers = [&](unsigned mask) {
        ColumnSet s;
        for (int c = 0; c < n; ++c)
            if (mask >> c & 1) s.insert(c);
        return span_contains(select_columns(g, s), target);
    };
    std::vector<ColumnSet> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!recovers(mask)) continue;
        bool minimal = true;
        for (int c = 0; c < n && minimal; ++c)
            if ((mask >> c & 1) && recovers(mask & ~(1u << c))) minimal = false;
        if (!minimal) continue;
        ColumnSet s;
        for (int c = 0; c < n; ++c)
            if (mask >> c & 1) s.insert(c);
        out.push_back(s);
    }
    return out;
}

// Naive oracle: some tuple of pairwise disjoint recovery sets (any subsets of
// [n], minimal or not) serves the batch.
inline bool naive_servable(const GFMatrix& g, const std::vector<int>& batch) {
    const int n = g.cols();
    std::vector<std::vector<unsigned>> recovering(static_cast<std::size_t>(g.rows()));
    for (int i = 0; i < g.rows(); ++i) {
        const auto target = GFVector::unit(g.modulus(), static_cast<std::size_t>(g.rows()), static_cast<std::size_t>(i));
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            ColumnSet s;
            for (int c = 0; c < n; ++c)
                if (mask >> c & 1) s.insert(c);
            if (span_contains(select_columns(g, s), target)) recovering[static_cast<std::size_t>(i)].push_back(mask);
        }
    }
    std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t j, unsigned used) {
        if (j == batch.size()) return true;
        for (unsigned m : recovering[static_cast<std::size_t>(batch[j])])
            if (!(m & used) && rec(j + 1, used | m)) return true;
        return false;
    };
    return rec(0, 0);
}

}  // namespace fixtures
