#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "batchcode/history.hpp"
#include "batchcode/recovery.hpp"

namespace batchcode {

// A pair (request, recovery set). Requests are 0-based.
struct Service {
    int request = 0;
    ColumnSet columns;

    // "i: c1,c2" with 1-based indices.
    std::string to_string() const;

    friend bool operator==(const Service&, const Service&) = default;
    friend std::strong_ordering operator<=>(const Service& a, const Service& b) {
        if (auto c = a.request <=> b.request; c != 0) return c;
        if (a.columns.size() != b.columns.size()) return a.columns.size() <=> b.columns.size();
        return a.columns <=> b.columns;
    }
};

// Deduplicated services sorted by (request, size, columns).
class ServiceCollection {
public:
    ServiceCollection() = default;
    ServiceCollection(int k, std::vector<Service> services);

    int k() const { return k_; }
    std::size_t size() const { return services_.size(); }
    bool empty() const { return services_.empty(); }
    const std::vector<Service>& services() const { return services_; }
    const Service& operator[](std::size_t j) const { return services_[j]; }
    std::size_t count_for(int request) const;
    bool contains(const Service& s) const;

    // All minimal recovery sets of the code as services.
    static ServiceCollection all_minimal(const RecoveryTable& table);

    friend bool operator==(const ServiceCollection&, const ServiceCollection&) = default;

private:
    int k_ = 0;
    std::vector<Service> services_;
};

// A strong collection is a service collection read as a set family: a member
// serves every request it is a minimal recovery set for.
using StrongCollection = ServiceCollection;

// Index of the first service whose set does not recover its request (or is
// not minimal, when `require_minimal`), or nullopt.
std::optional<std::size_t> first_invalid_service(const GFMatrix& g, const ServiceCollection& s, bool require_minimal);

// Distinct column sets of a collection, sorted by (size, columns).
std::vector<ColumnSet> member_sets(const StrongCollection& r);

struct StrongVerdict {
    bool holds = true;
    int t = 0;
    std::vector<ColumnSet> blocking;  // disjoint members leaving `request` unservable
    int request = -1;
    std::size_t families_checked = 0;
};

// Every family of fewer than t pairwise disjoint members and every request i
// leave some member for i disjoint from the family.
StrongVerdict check_strongly_async(const RecoveryTable& table, const StrongCollection& r, int t);

// Services for j whose set meets the set of `service` (itself included when
// j is its own request).
int exclusion_count(const ServiceCollection& s, const Service& service, int j);

struct MLVerdict {
    bool holds = true;
    int m = 0;
    int L = 0;
    // Failure: a request with fewer than m services...
    int short_request = -1;
    std::size_t short_count = 0;
    // ...or a service excluding more than L services for `excluded_request`.
    std::optional<Service> excluder;
    int excluded_request = -1;
    int exclusion = 0;
    int max_exclusion = 0;  // over all (service, j)
};

MLVerdict check_mL_strong(const ServiceCollection& s, int m, int L);

// ceil(m / L).
int derive_t(int m, int L);

struct MLSearchLimits {
    int max_k = 4;
    int max_n = 10;
};

struct MLSearchResult {
    int t = 0;  // best ceil(m/L) achieved
    int m = 0;
    int L = 0;
    ServiceCollection witness;
    // False when no collection reaches m >= 2L+1, i.e. the best t is at most 2.
    bool reaches_2L_plus_1 = false;
    std::size_t nodes = 0;
};

// Exhaustive search over service collections built from minimal recovery
// sets. For each t (descending) and L it asks for exactly m = (t-1)L + 1
// services per request, which suffices because dropping services never raises
// an exclusion count. Throws std::invalid_argument beyond the limits.
MLSearchResult search_best_mL(const RecoveryTable& table, const MLSearchLimits& limits = {});

// Feasibility of one (m, L): a collection with exactly m services per request
// and all exclusion counts at most L, or nullopt.
std::optional<ServiceCollection> find_mL_collection(const RecoveryTable& table, int m, int L, std::size_t* nodes = nullptr);

// H(R) (all sequences of disjoint members, length <= t) and its set-mode
// counterpart.
HistoryCollection sequence_histories(const StrongCollection& r, int t);
HistoryCollection set_histories(const StrongCollection& r, int t);

// Extendability of H(R) equals extendability of its set-mode counterpart.
bool strong_equivalence_selftest(const RecoveryTable& table, const StrongCollection& r, int t);

struct StrongSearchResult {
    bool found = false;
    StrongCollection collection;
    std::size_t nodes = 0;
};

// Some collection of minimal recovery sets makes the code t-strongly
// asynchronous. Complete search: a violated (family, request) forces one of
// the missing disjoint candidates into every valid superset, so branching on
// those candidates from the empty collection reaches every valid collection.
StrongSearchResult search_strong_collection(const RecoveryTable& table, int t, std::size_t max_nodes = 2000000);

}  // namespace batchcode
