#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "batchcode/recovery.hpp"

namespace batchcode {

// Multiset of requested positions (0-based); repeats allowed.
struct RequestBatch {
    std::vector<int> items;

    std::size_t size() const { return items.size(); }
    // "{{1,2,1,1}}" with 1-based positions.
    std::string to_string() const;
};

// One recovery set per batch item, pairwise disjoint.
struct Assignment {
    std::vector<RecoverySet> sets;

    std::string to_string() const;
};

// Independent re-check of an assignment against the matrix: one set per item
// (as a multiset), each recovering its request, pairwise disjoint.
bool validate_assignment(const GFMatrix& g, const RequestBatch& batch, const Assignment& a);

// Disjoint minimal recovery sets for every item, or nullopt when none exist.
// Backtracks over items ordered by ascending number of candidate sets.
std::optional<Assignment> serve_batch(const RecoveryTable& table, const RequestBatch& batch);
std::optional<Assignment> serve_batch(const GFMatrix& g, const RequestBatch& batch);

struct BatchVerdict {
    bool holds = true;
    int t = 0;
    std::optional<RequestBatch> counterexample;  // first failing batch in canonical order
    std::size_t batches_checked = 0;
};

// Calls f for every multiset of size t over [k], as a non-decreasing sequence,
// in lexicographic order. Stops early when f returns false.
void for_each_multiset(int k, int t, const std::function<bool(const std::vector<int>&)>& f);

// Every multiset of exactly t positions is servable. Smaller batches follow
// by padding with repeats. `jobs` > 1 partitions the multisets over threads.
BatchVerdict check_batch(const RecoveryTable& table, int t, int jobs = 1);
BatchVerdict check_batch(const GFMatrix& g, int t, int jobs = 1);

// Largest t <= limit for which check_batch holds (0 if even t = 1 fails).
int max_batch_t(const RecoveryTable& table, int limit, int jobs = 1);

}  // namespace batchcode
