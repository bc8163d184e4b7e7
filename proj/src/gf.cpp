#include "batchcode/gf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "batchcode/simd/kernels.hpp"

namespace batchcode {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (q > kMaxModulus) throw std::invalid_argument("field modulus " + std::to_string(q) + " exceeds 65535");
    if (!is_prime(q)) throw std::invalid_argument("field modulus " + std::to_string(q) + " is not prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % q_ == 0) throw std::domain_error("inverse of zero");
    std::uint64_t result = 1, base = a % q_;
    for (std::uint32_t e = q_ - 2; e > 0; e >>= 1) {
        if (e & 1U) result = result * base % q_;
        base = base * base % q_;
    }
    return static_cast<std::uint32_t>(result);
}

FieldElement::FieldElement(std::uint32_t v, std::uint32_t q) : value(v), modulus(q) {
    PrimeField{q};
    if (v >= q) throw std::invalid_argument("field element " + std::to_string(v) + " not reduced mod " + std::to_string(q));
}

// --- GFVector ---------------------------------------------------------------

GFVector::GFVector(std::uint32_t q, std::vector<std::uint32_t> entries) : q_(q), entries_(std::move(entries)) {
    PrimeField{q};
    for (auto e : entries_)
        if (e >= q) throw std::invalid_argument("vector entry not reduced mod q");
}

GFVector GFVector::zeros(std::uint32_t q, std::size_t length) {
    return GFVector(q, std::vector<std::uint32_t>(length, 0));
}

GFVector GFVector::unit(std::uint32_t q, std::size_t length, std::size_t index) {
    if (index >= length) throw std::out_of_range("unit vector index out of range");
    std::vector<std::uint32_t> e(length, 0);
    e[index] = 1;
    return GFVector(q, std::move(e));
}

bool GFVector::is_zero() const {
    for (auto e : entries_)
        if (e != 0) return false;
    return true;
}

// --- GFMatrix ---------------------------------------------------------------

GFMatrix::GFMatrix(std::uint32_t q, int rows, int cols) : q_(q), rows_(rows), cols_(cols) {
    PrimeField{q};
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

GFMatrix::GFMatrix(std::uint32_t q, const std::vector<std::vector<std::uint32_t>>& rows)
    : GFMatrix(q, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows.front().size())) {
    for (int r = 0; r < rows_; ++r) {
        if (static_cast<int>(rows[r].size()) != cols_) throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols_; ++c) set(r, c, rows[r][c]);
    }
}

GFMatrix GFMatrix::identity(std::uint32_t q, int k) {
    GFMatrix m(q, k, k);
    for (int i = 0; i < k; ++i) m.set(i, i, 1);
    return m;
}

GFMatrix GFMatrix::from_strings(std::uint32_t q, const std::vector<std::string>& rows) {
    std::vector<std::vector<std::uint32_t>> v;
    for (const auto& s : rows) {
        std::vector<std::uint32_t> row;
        for (char ch : s) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("non-digit in matrix row string");
            row.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
        v.push_back(std::move(row));
    }
    return GFMatrix(q, v);
}

void GFMatrix::set(int r, int c, std::uint32_t v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
    if (v >= q_) throw std::invalid_argument("matrix entry not reduced mod q");
    data_[static_cast<std::size_t>(r) * cols_ + c] = v;
}

GFVector GFMatrix::column(int c) const {
    if (c < 0 || c >= cols_) throw std::out_of_range("column index out of range");
    std::vector<std::uint32_t> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return GFVector(q_, std::move(v));
}

std::vector<GFVector> GFMatrix::columns() const {
    std::vector<GFVector> out;
    out.reserve(cols_);
    for (int c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

GFMatrix GFMatrix::concat(const GFMatrix& other) const {
    if (other.q_ != q_ || other.rows_ != rows_) throw std::invalid_argument("concat: shape or field mismatch");
    GFMatrix out(q_, rows_, cols_ + other.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c));
        for (int c = 0; c < other.cols_; ++c) out.set(r, cols_ + c, other(r, c));
    }
    return out;
}

// --- rank / span ------------------------------------------------------------

namespace {

int rank_binary(const GFMatrix& m) {
    const auto& k = simd::kernels();
    const std::size_t words = (static_cast<std::size_t>(m.cols()) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c)) rows[r][c >> 6] |= std::uint64_t{1} << (c & 63);

    int rank = 0;
    for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        int pivot = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (rows[r][w] & bit) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m.rows(); ++r)
            if (r != rank && (rows[r][w] & bit)) k.xor_words(rows[r], rows[rank]);
        ++rank;
    }
    return rank;
}

// Reduces `rows` (each of equal length) to reduced row echelon form over the
// first `pivot_cols` columns and returns the pivot column of each pivot row.
std::vector<int> row_reduce(const PrimeField& f, std::vector<std::vector<std::uint32_t>>& rows, int pivot_cols) {
    const auto& k = simd::kernels();
    std::vector<int> pivots;
    int rank = 0;
    const int nrows = static_cast<int>(rows.size());
    for (int c = 0; c < pivot_cols && rank < nrows; ++c) {
        int pivot = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint32_t s = f.inv(rows[rank][c]);
        for (auto& v : rows[rank]) v = f.mul(v, s);
        for (int r = 0; r < nrows; ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            k.axpy_mod(rows[r], rows[rank], f.neg(rows[r][c]), f.modulus());
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

}  // namespace

int rank(const GFMatrix& m) {
    if (m.modulus() == 2) return rank_binary(m);
    PrimeField f(m.modulus());
    std::vector<std::vector<std::uint32_t>> rows;
    for (int r = 0; r < m.rows(); ++r) rows.emplace_back(m.row(r).begin(), m.row(r).end());
    return static_cast<int>(row_reduce(f, rows, m.cols()).size());
}

std::optional<std::vector<std::uint32_t>> solve_in_span(std::span<const GFVector> columns, const GFVector& target) {
    const std::uint32_t q = target.modulus();
    const std::size_t k = target.size();
    for (const auto& c : columns)
        if (c.modulus() != q || c.size() != k) throw std::invalid_argument("solve_in_span: dimension mismatch");
    PrimeField f(q);
    const int m = static_cast<int>(columns.size());
    if (m == 0) {
        if (target.is_zero()) return std::vector<std::uint32_t>{};
        return std::nullopt;
    }
    // Augmented system [columns | target], one row per coordinate.
    std::vector<std::vector<std::uint32_t>> rows(k, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t r = 0; r < k; ++r) {
        for (int c = 0; c < m; ++c) rows[r][c] = columns[c][r];
        rows[r][m] = target[r];
    }
    const auto pivots = row_reduce(f, rows, m);
    for (std::size_t r = pivots.size(); r < k; ++r)
        if (rows[r][m] != 0) return std::nullopt;
    std::vector<std::uint32_t> lambda(m, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) lambda[pivots[r]] = rows[r][m];
    return lambda;
}

bool span_contains(std::span<const GFVector> columns, const GFVector& target) {
    return solve_in_span(columns, target).has_value();
}

std::vector<GFVector> select_columns(const GFMatrix& m, const ColumnSet& cols) {
    std::vector<GFVector> out;
    cols.for_each([&](int c) { out.push_back(m.column(c)); });
    return out;
}

// --- ColumnSpan ---------------------------------------------------------------

ColumnSpan::ColumnSpan(const GFMatrix& m)
    : m_(&m), field_(m.modulus()), packed_(m.modulus() == 2 && m.rows() <= 64) {}

std::uint64_t ColumnSpan::packed_column(int c) const {
    std::uint64_t v = 0;
    for (int r = 0; r < m_->rows(); ++r)
        if ((*m_)(r, c)) v |= std::uint64_t{1} << r;
    return v;
}

bool ColumnSpan::try_add(int c) {
    if (packed_) {
        std::uint64_t v = packed_column(c);
        ColumnSet combo = ColumnSet::single(c);
        for (std::size_t j = 0; j < packed_vec_.size(); ++j) {
            if ((v >> packed_pivot_[j]) & 1U) {
                v ^= packed_vec_[j];
                combo ^= packed_combo_[j];
            }
        }
        if (v == 0) return false;
        packed_vec_.push_back(v);
        packed_pivot_.push_back(std::countr_zero(v));
        packed_combo_.push_back(combo);
        packed_sources_.push_back(c);
        members_.insert(c);
        ++dim_;
        return true;
    }

    const auto& k = simd::kernels();
    const std::uint32_t q = field_.modulus();
    const std::size_t slot = sources_.size();
    std::vector<std::uint32_t> v(m_->rows());
    for (int r = 0; r < m_->rows(); ++r) v[r] = (*m_)(r, c);
    std::vector<std::uint32_t> combo(slot + 1, 0);
    combo[slot] = 1;
    for (std::size_t j = 0; j < vec_.size(); ++j) {
        const std::uint32_t f = v[pivot_[j]];
        if (f == 0) continue;
        const std::uint32_t nf = field_.neg(f);
        k.axpy_mod(v, vec_[j], nf, q);
        k.axpy_mod(std::span<std::uint32_t>(combo.data(), combo_[j].size()), combo_[j], nf, q);
    }
    int p = -1;
    for (int r = 0; r < m_->rows(); ++r)
        if (v[r] != 0) {
            p = r;
            break;
        }
    if (p < 0) return false;
    const std::uint32_t s = field_.inv(v[p]);
    for (auto& x : v) x = field_.mul(x, s);
    for (auto& x : combo) x = field_.mul(x, s);
    sources_.push_back(c);
    vec_.push_back(std::move(v));
    pivot_.push_back(p);
    combo_.push_back(std::move(combo));
    members_.insert(c);
    ++dim_;
    return true;
}

void ColumnSpan::pop() {
    if (dim_ == 0) throw std::logic_error("pop on empty span");
    if (packed_) {
        members_.erase(packed_sources_.back());
        packed_vec_.pop_back();
        packed_pivot_.pop_back();
        packed_combo_.pop_back();
        packed_sources_.pop_back();
    } else {
        members_.erase(sources_.back());
        sources_.pop_back();
        vec_.pop_back();
        pivot_.pop_back();
        combo_.pop_back();
    }
    --dim_;
}

bool ColumnSpan::contains_unit(int row) const {
    if (packed_) {
        std::uint64_t t = std::uint64_t{1} << row;
        for (std::size_t j = 0; j < packed_vec_.size(); ++j)
            if ((t >> packed_pivot_[j]) & 1U) t ^= packed_vec_[j];
        return t == 0;
    }
    const auto& k = simd::kernels();
    std::vector<std::uint32_t> t(m_->rows(), 0);
    t[row] = 1;
    for (std::size_t j = 0; j < vec_.size(); ++j) {
        const std::uint32_t f = t[pivot_[j]];
        if (f != 0) k.axpy_mod(t, vec_[j], field_.neg(f), field_.modulus());
    }
    for (auto x : t)
        if (x != 0) return false;
    return true;
}

std::vector<std::pair<int, std::uint32_t>> ColumnSpan::unit_coefficients(int row) const {
    if (packed_) {
        std::vector<std::pair<int, std::uint32_t>> out;
        std::uint64_t t = std::uint64_t{1} << row;
        ColumnSet combo;
        for (std::size_t j = 0; j < packed_vec_.size(); ++j)
            if ((t >> packed_pivot_[j]) & 1U) {
                t ^= packed_vec_[j];
                combo ^= packed_combo_[j];
            }
        if (t != 0) throw std::logic_error("unit vector not in span");
        combo.for_each([&](int c) { out.emplace_back(c, 1U); });
        return out;
    }
    const auto& k = simd::kernels();
    const std::uint32_t q = field_.modulus();
    std::vector<std::uint32_t> t(m_->rows(), 0);
    t[row] = 1;
    std::vector<std::uint32_t> coeff(sources_.size(), 0);
    for (std::size_t j = 0; j < vec_.size(); ++j) {
        const std::uint32_t f = t[pivot_[j]];
        if (f == 0) continue;
        k.axpy_mod(t, vec_[j], field_.neg(f), q);
        k.axpy_mod(std::span<std::uint32_t>(coeff.data(), combo_[j].size()), combo_[j], f, q);
    }
    for (auto x : t)
        if (x != 0) throw std::logic_error("unit vector not in span");
    std::vector<std::pair<int, std::uint32_t>> tmp;
    for (std::size_t s = 0; s < sources_.size(); ++s)
        if (coeff[s] != 0) tmp.emplace_back(sources_[s], coeff[s]);
    std::sort(tmp.begin(), tmp.end());
    return tmp;
}

}  // namespace batchcode
