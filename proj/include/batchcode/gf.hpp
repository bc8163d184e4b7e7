#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "batchcode/column_set.hpp"

namespace batchcode {

// Prime field GF(q), q < 2^16. Composite or out-of-range moduli throw.
class PrimeField {
public:
    static constexpr std::uint32_t kMaxModulus = 65535;

    explicit PrimeField(std::uint32_t q);

    std::uint32_t modulus() const { return q_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
    std::uint32_t neg(std::uint32_t a) const { return (q_ - a) % q_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % q_);
    }
    // Multiplicative inverse by Fermat; a must be nonzero.
    std::uint32_t inv(std::uint32_t a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t q_;
};

bool is_prime(std::uint32_t n);

struct FieldElement {
    std::uint32_t value;
    std::uint32_t modulus;

    FieldElement(std::uint32_t v, std::uint32_t q);

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class GFVector {
public:
    GFVector(std::uint32_t q, std::vector<std::uint32_t> entries);
    static GFVector zeros(std::uint32_t q, std::size_t length);
    // Unit vector with a one at 0-based position `index`.
    static GFVector unit(std::uint32_t q, std::size_t length, std::size_t index);

    std::uint32_t modulus() const { return q_; }
    std::size_t size() const { return entries_.size(); }
    std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
    FieldElement at(std::size_t i) const { return {entries_.at(i), q_}; }
    std::span<const std::uint32_t> entries() const { return entries_; }
    bool is_zero() const;

    friend bool operator==(const GFVector&, const GFVector&) = default;

private:
    std::uint32_t q_;
    std::vector<std::uint32_t> entries_;
};

// Dense k x n matrix over GF(q), row-major. Indices are 0-based here; the text
// formats and CLI present them 1-based.
class GFMatrix {
public:
    GFMatrix(std::uint32_t q, int rows, int cols);
    GFMatrix(std::uint32_t q, const std::vector<std::vector<std::uint32_t>>& rows);
    static GFMatrix identity(std::uint32_t q, int k);
    // Parses rows such as "1010101" (one digit per entry, q <= 10).
    static GFMatrix from_strings(std::uint32_t q, const std::vector<std::string>& rows);

    std::uint32_t modulus() const { return q_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint32_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, std::uint32_t v);

    GFVector column(int c) const;
    std::vector<GFVector> columns() const;
    std::span<const std::uint32_t> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    // Horizontal concatenation [this | other].
    GFMatrix concat(const GFMatrix& other) const;

    friend bool operator==(const GFMatrix&, const GFMatrix&) = default;

private:
    std::uint32_t q_;
    int rows_;
    int cols_;
    std::vector<std::uint32_t> data_;
};

int rank(const GFMatrix& m);

// Coefficients lambda with sum lambda_r * columns[r] == target, or nullopt when
// the target lies outside the span. Free variables are set to zero.
std::optional<std::vector<std::uint32_t>> solve_in_span(std::span<const GFVector> columns, const GFVector& target);

bool span_contains(std::span<const GFVector> columns, const GFVector& target);

// Column selection helper: the listed columns of m.
std::vector<GFVector> select_columns(const GFMatrix& m, const ColumnSet& cols);

// Incrementally built span of matrix columns, used by the recovery-set search.
// Tracks, for each reduced basis vector, the combination of source columns
// that produced it, so membership queries can also report coefficients.
class ColumnSpan {
public:
    explicit ColumnSpan(const GFMatrix& m);

    // Adds column c; returns false (and leaves the span unchanged) when c is
    // already in the span.
    bool try_add(int c);

    // Removes the most recently added column.
    void pop();

    // True when the unit vector e_row lies in the span.
    bool contains_unit(int row) const;

    // Coefficients (source column, lambda) expressing e_row; requires contains_unit(row).
    std::vector<std::pair<int, std::uint32_t>> unit_coefficients(int row) const;

    const ColumnSet& members() const { return members_; }
    int dimension() const { return dim_; }

private:
    const GFMatrix* m_;
    PrimeField field_;
    bool packed_;
    int dim_ = 0;
    ColumnSet members_;
    std::vector<int> sources_;  // source column per slot in combination vectors

    // Packed GF(2) path (rows <= 64): vectors are bitmasks over rows.
    std::vector<std::uint64_t> packed_vec_;
    std::vector<int> packed_pivot_;
    std::vector<ColumnSet> packed_combo_;
    std::vector<int> packed_sources_;

    // General path: reduced vectors, pivots, and combination coefficients
    // indexed by slot in sources_.
    std::vector<std::vector<std::uint32_t>> vec_;
    std::vector<int> pivot_;
    std::vector<std::vector<std::uint32_t>> combo_;

    std::uint64_t packed_column(int c) const;
};

}  // namespace batchcode
