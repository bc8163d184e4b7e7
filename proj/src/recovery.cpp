#include "batchcode/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace batchcode {

std::string RecoverySet::to_string() const {
    std::string s = std::to_string(request + 1) + ":";
    bool first = true;
    columns.for_each([&](int c) {
        s += first ? " " : ",";
        s += std::to_string(c + 1);
        first = false;
    });
    return s;
}

bool is_systematic(const GFMatrix& g) {
    if (g.cols() < g.rows()) return false;
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.rows(); ++c)
            if (g(r, c) != (r == c ? 1U : 0U)) return false;
    return true;
}

SystematicCode::SystematicCode(GFMatrix g) : g_(std::move(g)) {
    if (!is_systematic(g_)) throw std::invalid_argument("matrix is not of the form [I | M]");
}

ColumnSet SystematicCode::parity_columns() const {
    ColumnSet s;
    for (int c = k(); c < n(); ++c) s.insert(c);
    return s;
}

void require_column_capacity(const GFMatrix& g) {
    if (static_cast<std::size_t>(g.cols()) > ColumnSet::kCapacity)
        throw std::invalid_argument("code has " + std::to_string(g.cols()) + " columns; at most " +
                                    std::to_string(ColumnSet::kCapacity) + " supported");
}

namespace {

void check_position(const GFMatrix& g, int i) {
    if (i < 0 || i >= g.rows()) throw std::out_of_range("request position " + std::to_string(i + 1) + " out of range");
}

void check_columns(const GFMatrix& g, const ColumnSet& r) {
    if (r.max_element() >= g.cols()) throw std::out_of_range("recovery set column out of range");
}

}  // namespace

bool is_recovery_set(const GFMatrix& g, int i, const ColumnSet& r) {
    check_position(g, i);
    check_columns(g, r);
    const auto cols = select_columns(g, r);
    return span_contains(cols, GFVector::unit(g.modulus(), g.rows(), i));
}

bool is_minimal(const GFMatrix& g, int i, const ColumnSet& r) {
    if (!is_recovery_set(g, i, r)) throw std::invalid_argument("not a recovery set for position " + std::to_string(i + 1));
    // Supersets of recovery sets recover too, so dropping single columns suffices.
    bool minimal = true;
    r.for_each([&](int c) {
        if (!minimal) return;
        ColumnSet smaller = r;
        smaller.erase(c);
        if (is_recovery_set(g, i, smaller)) minimal = false;
    });
    return minimal;
}

RecoverySet make_recovery_set(const GFMatrix& g, int i, const ColumnSet& r) {
    check_position(g, i);
    check_columns(g, r);
    const auto cols = select_columns(g, r);
    auto lambda = solve_in_span(cols, GFVector::unit(g.modulus(), g.rows(), i));
    if (!lambda) throw std::invalid_argument(r.to_string() + " does not recover position " + std::to_string(i + 1));
    return RecoverySet{i, r, std::move(*lambda)};
}

namespace {

class MinimalSetSearch {
public:
    MinimalSetSearch(const GFMatrix& g, int i, int max_size) : g_(g), span_(g), i_(i), max_size_(max_size) {}

    std::vector<RecoverySet> run() {
        dfs(0);
        std::sort(found_.begin(), found_.end(),
                  [](const RecoverySet& a, const RecoverySet& b) { return size_then_lex(a.columns, b.columns); });
        return std::move(found_);
    }

private:
    void dfs(int start) {
        for (int c = start; c < g_.cols(); ++c) {
            if (!span_.try_add(c)) continue;
            if (span_.contains_unit(i_)) {
                // e_i was not in the span before c, so c carries a nonzero
                // coefficient; the set is minimal iff every other column does too.
                auto coeffs = span_.unit_coefficients(i_);
                if (static_cast<int>(coeffs.size()) == span_.dimension()) {
                    RecoverySet rs{i_, span_.members(), {}};
                    for (const auto& [col, lambda] : coeffs) rs.coefficients.push_back(lambda);
                    found_.push_back(std::move(rs));
                }
            } else if (span_.dimension() < max_size_) {
                dfs(c + 1);
            }
            span_.pop();
        }
    }

    const GFMatrix& g_;
    ColumnSpan span_;
    int i_;
    int max_size_;
    std::vector<RecoverySet> found_;
};

}  // namespace

std::vector<RecoverySet> enumerate_minimal(const GFMatrix& g, int i) {
    check_position(g, i);
    require_column_capacity(g);
    return MinimalSetSearch(g, i, rank(g)).run();
}

bool is_simple(const SystematicCode& code, const RecoverySet& rs) {
    return (rs.columns & code.parity_columns()).size() == 1;
}

RecoveryTable::RecoveryTable(const GFMatrix& g, int jobs) : g_(&g) {
    require_column_capacity(g);
    const int k = g.rows();
    sets_.resize(k);
    const int workers = std::max(1, std::min(jobs, k));
    if (workers == 1) {
        for (int i = 0; i < k; ++i) sets_[i] = enumerate_minimal(g, i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < k; i = next++) sets_[i] = enumerate_minimal(g, i);
            });
        for (auto& t : pool) t.join();
    }
    masks_.resize(k);
    for (int i = 0; i < k; ++i)
        for (const auto& rs : sets_[i]) {
            masks_[i].push_back(rs.columns);
            universe_.push_back(rs.columns);
        }
    std::sort(universe_.begin(), universe_.end(), size_then_lex);
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

bool RecoveryTable::is_minimal_for(int i, const ColumnSet& cols) const {
    const auto& m = masks_.at(i);
    return std::find(m.begin(), m.end(), cols) != m.end();
}

}  // namespace batchcode
