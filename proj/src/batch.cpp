#include "batchcode/batch.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "batchcode/simd/kernels.hpp"

namespace batchcode {

std::string RequestBatch::to_string() const {
    std::string s = "{{";
    for (std::size_t j = 0; j < items.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(items[j] + 1);
    }
    return s + "}}";
}

std::string Assignment::to_string() const {
    std::string s;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        if (j) s += "; ";
        s += sets[j].to_string();
    }
    return s;
}

bool validate_assignment(const GFMatrix& g, const RequestBatch& batch, const Assignment& a) {
    if (a.sets.size() != batch.size()) return false;
    std::vector<int> want = batch.items, got;
    for (const auto& rs : a.sets) got.push_back(rs.request);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) return false;
    ColumnSet used;
    for (const auto& rs : a.sets) {
        if (rs.columns.empty() || rs.columns.intersects(used)) return false;
        if (!is_recovery_set(g, rs.request, rs.columns)) return false;
        used |= rs.columns;
    }
    return true;
}

namespace {

class BatchServer {
public:
    BatchServer(const RecoveryTable& table, const RequestBatch& batch) : table_(table), kern_(simd::kernels()) {
        for (int i : batch.items)
            if (i < 0 || i >= table.k()) throw std::out_of_range("batch position " + std::to_string(i + 1) + " out of range");
        order_ = batch.items;
        // Most constrained first; equal requests stay adjacent for symmetry breaking.
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto ca = table.masks(a).size(), cb = table.masks(b).size();
            return ca != cb ? ca < cb : a < b;
        });
        choice_.assign(order_.size(), 0);
    }

    std::optional<Assignment> run() {
        if (!place(0, ColumnSet{})) return std::nullopt;
        Assignment a;
        for (std::size_t j = 0; j < order_.size(); ++j) a.sets.push_back(table_.sets(order_[j])[choice_[j]]);
        return a;
    }

private:
    bool place(std::size_t j, const ColumnSet& used) {
        if (j == order_.size()) return true;
        const int req = order_[j];
        const auto masks = table_.masks(req);
        // Sets for a repeated request are interchangeable; take them in increasing index.
        std::size_t start = (j > 0 && order_[j - 1] == req) ? choice_[j - 1] + 1 : 0;
        for (std::size_t c = kern_.find_disjoint(masks, used, start); c < masks.size();
             c = kern_.find_disjoint(masks, used, c + 1)) {
            choice_[j] = c;
            if (place(j + 1, used | masks[c])) return true;
        }
        return false;
    }

    const RecoveryTable& table_;
    const simd::KernelTable& kern_;
    std::vector<int> order_;
    std::vector<std::size_t> choice_;
};

}  // namespace

std::optional<Assignment> serve_batch(const RecoveryTable& table, const RequestBatch& batch) {
    if (batch.items.empty()) throw std::invalid_argument("empty batch");
    return BatchServer(table, batch).run();
}

std::optional<Assignment> serve_batch(const GFMatrix& g, const RequestBatch& batch) {
    RecoveryTable table(g);
    return serve_batch(table, batch);
}

void for_each_multiset(int k, int t, const std::function<bool(const std::vector<int>&)>& f) {
    if (t <= 0 || k <= 0) return;
    std::vector<int> cur(t, 0);
    while (true) {
        if (!f(cur)) return;
        int j = t - 1;
        while (j >= 0 && cur[j] == k - 1) --j;
        if (j < 0) return;
        ++cur[j];
        for (int l = j + 1; l < t; ++l) cur[l] = cur[j];
    }
}

BatchVerdict check_batch(const RecoveryTable& table, int t, int jobs) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    std::vector<std::vector<int>> all;
    for_each_multiset(table.k(), t, [&](const std::vector<int>& m) {
        all.push_back(m);
        return true;
    });

    // Index of the first failing batch; workers skip anything past it.
    std::atomic<std::size_t> first_fail{all.size()};
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> checked{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < all.size(); idx = next++) {
            if (idx > first_fail.load()) continue;
            ++checked;
            if (!serve_batch(table, RequestBatch{all[idx]})) {
                std::size_t cur = first_fail.load();
                while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
                }
            }
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(all.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    BatchVerdict v;
    v.t = t;
    v.batches_checked = checked.load();
    if (first_fail.load() < all.size()) {
        v.holds = false;
        v.counterexample = RequestBatch{all[first_fail.load()]};
    }
    return v;
}

BatchVerdict check_batch(const GFMatrix& g, int t, int jobs) {
    RecoveryTable table(g, jobs);
    return check_batch(table, t, jobs);
}

int max_batch_t(const RecoveryTable& table, int limit, int jobs) {
    int best = 0;
    for (int t = 1; t <= limit; ++t) {
        if (!check_batch(table, t, jobs).holds) break;
        best = t;
    }
    return best;
}

}  // namespace batchcode
