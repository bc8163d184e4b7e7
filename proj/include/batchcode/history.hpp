#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "batchcode/recovery.hpp"

namespace batchcode {

// A recovery history: pairwise disjoint column sets. In sequence mode the
// order is the serving order; in set mode members are kept canonically sorted.
using History = std::vector<ColumnSet>;

enum class HistoryMode { Sequence, Set };

struct HistoryHash {
    std::size_t operator()(const History& h) const;
};

std::string history_to_string(const History& h);

// Canonical (sorted) form of a set-mode history.
History canonical(History h);

class HistoryCollection {
public:
    // Horizon t bounds member length; t <= kMaxHorizon.
    static constexpr int kMaxHorizon = 8;

    HistoryCollection(HistoryMode mode, int horizon);

    HistoryMode mode() const { return mode_; }
    int horizon() const { return horizon_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    // Throws std::invalid_argument for members that are too long or not
    // pairwise disjoint. Set-mode members are canonicalized.
    void insert(History h);
    bool contains(const History& h) const;

    // Members in a deterministic order (by length, then lexicographic).
    std::vector<History> sorted_members() const;

    const std::unordered_set<History, HistoryHash>& members() const { return members_; }

    friend bool operator==(const HistoryCollection& a, const HistoryCollection& b) {
        return a.mode_ == b.mode_ && a.horizon_ == b.horizon_ && a.members_ == b.members_;
    }

private:
    HistoryMode mode_;
    int horizon_;
    std::unordered_set<History, HistoryHash> members_;
};

// True when every set of every member is a minimal recovery set for some position.
bool members_are_minimal(const HistoryCollection& h, const RecoveryTable& table);

// Every prefix (including the empty one) of every member is a member.
// Throws std::invalid_argument on a set-mode collection.
bool is_prefix_closed(const HistoryCollection& h);

// Every subset of every member is a member. Throws on a sequence-mode collection.
bool is_subset_closed(const HistoryCollection& h);

// Prefix-closure (sequence mode) or subset-closure (set mode). The closure of
// an empty collection is empty; otherwise it contains the empty history.
HistoryCollection closure(const HistoryCollection& h);

struct ExtensionVerdict {
    bool holds = true;
    std::optional<History> member;  // incomplete member that cannot be extended
    int request = -1;               // ...for this request
};

// Every member shorter than the horizon extends, for every request i, by some
// minimal recovery set for i to another member.
ExtensionVerdict has_extension_property(const HistoryCollection& h, const RecoveryTable& table);

struct ExchangeVerdict {
    bool holds = true;
    std::optional<History> member;
    int slot = -1;
    int request = -1;
};

// Every complete member, slot j and request i admit a minimal recovery set R
// for i such that replacing slot j by R gives a member. Throws when a member is
// incomplete.
ExchangeVerdict has_exchange_property(const HistoryCollection& complete, const RecoveryTable& table);

// exchange(H*) == extension(closure(H*)) for a set-mode collection of
// complete histories. Always true; kept as a self-test.
bool check_exchange_extension_equivalence(const HistoryCollection& complete, const RecoveryTable& table);

// ---------------------------------------------------------------------------
// Online property: two-player game on (used columns, requests served).

struct OnlineOptions {
    bool reverse_candidates = false;       // explore recovery sets in reverse order
    bool build_witness = true;             // emit a prefix-closed t-extendable collection
    std::size_t max_witness_members = 200000;
    std::size_t max_prefix_sequences = 100000;  // bound on the fixed-prefix scan
};

class OnlineGame {
public:
    OnlineGame(const RecoveryTable& table, int t, bool reverse_candidates = false);

    int horizon() const { return t_; }

    // The server can answer every adaptive request sequence from this state
    // until `t` requests have been served.
    bool wins(const ColumnSet& used, int served);

    // Index (into table.sets(request)) of a recovery set that keeps the
    // server winning, or nullopt.
    std::optional<std::size_t> winning_choice(const ColumnSet& used, int served, int request);

    std::size_t states() const { return memo_.size(); }

private:
    struct Key {
        ColumnSet used;
        int served;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.used.hash() * 31 + static_cast<std::size_t>(k.served); }
    };

    bool can_continue(const ColumnSet& used, int served, int request);

    const RecoveryTable& table_;
    int t_;
    bool reverse_;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

struct OnlineVerdict {
    bool online = true;
    int t = 0;
    // Shortest request sequences (0-based) such that every way of serving
    // them leaves some next request with no disjoint recovery set.
    std::vector<std::vector<int>> fixed_losing_prefixes;
    // First request of a winning adversary strategy from the empty state.
    int adversary_first_request = -1;
    std::optional<HistoryCollection> witness;  // when online and small enough
    std::size_t states_explored = 0;
};

OnlineVerdict check_online(const RecoveryTable& table, int t, const OnlineOptions& opts = {});

// Brute-force re-check of a fixed losing prefix: every serving of `prefix`
// by pairwise disjoint minimal recovery sets leaves some request unservable.
bool verify_losing_prefix(const RecoveryTable& table, const std::vector<int>& prefix);

// Server answers along which every request of `requests` is a winning move
// for the adversary in the online game with horizon t: answers[j] serves
// requests[j] and after answers[0..j-1] the request requests[j] leaves the
// server without a winning choice. Returns the first |requests|-1 answers,
// or nullopt when no such line exists.
std::optional<std::vector<ColumnSet>> adversary_line(const RecoveryTable& table, int t, const std::vector<int>& requests);

// Largest t <= limit with check_online holding.
int max_online_t(const RecoveryTable& table, int limit);

// ---------------------------------------------------------------------------
// Asynchronous property: greatest subset-closed t-extendable collection.

struct AsyncOptions {
    bool build_witness = true;
    std::size_t max_histories = 3000000;
};

struct AsyncVerdict {
    bool asynchronous = true;
    int t = 0;
    std::size_t histories_total = 0;
    std::size_t histories_surviving = 0;
    // First history removed for failing extension, and the request it failed.
    std::optional<History> first_pruned;
    int first_pruned_request = -1;
    std::optional<HistoryCollection> witness;  // surviving collection (set mode)
};

AsyncVerdict check_asynchronous(const RecoveryTable& table, int t, const AsyncOptions& opts = {});

int max_async_t(const RecoveryTable& table, int limit);

}  // namespace batchcode
