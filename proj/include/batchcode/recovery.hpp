#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "batchcode/column_set.hpp"
#include "batchcode/gf.hpp"

namespace batchcode {

// A column set R recovering information position `request`, with the
// coefficients lambda_r (one per column, ascending column order) such that
// sum lambda_r g_r = e_request. Positions and columns are 0-based.
struct RecoverySet {
    int request = 0;
    ColumnSet columns;
    std::vector<std::uint32_t> coefficients;

    int size() const { return columns.size(); }

    // "i: c1,c2,...,cm" with 1-based indices.
    std::string to_string() const;

    friend bool operator==(const RecoverySet& a, const RecoverySet& b) {
        return a.request == b.request && a.columns == b.columns;
    }
};

// Generator matrix of the form [I_k | M].
class SystematicCode {
public:
    // Throws std::invalid_argument when the left k x k block is not the identity.
    explicit SystematicCode(GFMatrix g);

    const GFMatrix& matrix() const { return g_; }
    int k() const { return g_.rows(); }
    int n() const { return g_.cols(); }
    int parity_count() const { return g_.cols() - g_.rows(); }
    bool is_parity_column(int c) const { return c >= k(); }
    ColumnSet parity_columns() const;

private:
    GFMatrix g_;
};

bool is_systematic(const GFMatrix& g);

// Size guard shared by everything that stores column sets.
void require_column_capacity(const GFMatrix& g);

// e_i lies in the span of the columns R.
bool is_recovery_set(const GFMatrix& g, int i, const ColumnSet& r);

// No proper subset of R recovers i. Throws std::invalid_argument when R is not
// a recovery set for i.
bool is_minimal(const GFMatrix& g, int i, const ColumnSet& r);

// Fills in coefficients for a recovery set; throws when R does not recover i.
RecoverySet make_recovery_set(const GFMatrix& g, int i, const ColumnSet& r);

// All minimal recovery sets for position i, sorted by (size, columns).
// Minimal sets are exactly the independent column sets whose unique
// expression of e_i uses every column, so a depth-first search over
// independent sets in increasing column order, stopping as soon as e_i enters
// the span, visits each of them once.
std::vector<RecoverySet> enumerate_minimal(const GFMatrix& g, int i);

// Exactly one column of R lies in the parity block.
bool is_simple(const SystematicCode& code, const RecoverySet& rs);

// Minimal recovery sets for every position of a code, with a packed copy of
// the column sets per position for the SIMD kernels.
class RecoveryTable {
public:
    // Enumerates all positions; `jobs` > 1 spreads positions over threads.
    explicit RecoveryTable(const GFMatrix& g, int jobs = 1);

    const GFMatrix& matrix() const { return *g_; }
    int k() const { return static_cast<int>(sets_.size()); }
    int n() const { return g_->cols(); }

    const std::vector<RecoverySet>& sets(int i) const { return sets_.at(i); }
    std::span<const ColumnSet> masks(int i) const { return masks_.at(i); }

    // Distinct column sets that are minimal recovery sets for some position,
    // sorted by (size, columns).
    const std::vector<ColumnSet>& universe() const { return universe_; }

    // True when `cols` is a minimal recovery set for position i.
    bool is_minimal_for(int i, const ColumnSet& cols) const;

private:
    const GFMatrix* g_;
    std::vector<std::vector<RecoverySet>> sets_;
    std::vector<std::vector<ColumnSet>> masks_;
    std::vector<ColumnSet> universe_;
};

// Sort key used throughout: smaller sets first, then lexicographic.
inline bool size_then_lex(const ColumnSet& a, const ColumnSet& b) {
    const int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a < b;
}

}  // namespace batchcode
