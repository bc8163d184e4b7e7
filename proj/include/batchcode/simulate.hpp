#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "batchcode/history.hpp"
#include "batchcode/recovery.hpp"
#include "batchcode/strong.hpp"

namespace batchcode {

// What a policy sees: the columns in use, how many sets are active, and the
// request to serve.
struct PolicyState {
    const RecoveryTable& table;
    ColumnSet used;
    int active = 0;
    int request = 0;
};

// Returns a minimal recovery set for the request disjoint from `used`, or
// nullopt to refuse.
using PolicyFn = std::function<std::optional<ColumnSet>(const PolicyState&)>;

struct Policy {
    std::string name;
    PolicyFn choose;
};

// Smallest available set (ties lexicographic).
Policy singleton_first_policy();
// Lexicographically smallest available set regardless of size.
Policy lexicographic_policy();
// Available set leaving the most disjoint options summed over all requests.
Policy largest_remaining_policy();
// Follows a winning strategy of the online game with horizon t when one
// exists; otherwise the smallest available set.
Policy game_optimal_policy(const RecoveryTable& table, int t);
// Smallest available member of a fixed collection.
Policy restricted_policy(const StrongCollection& r);

// Built-in policy by name: singleton-first, lexicographic, largest-remaining,
// game-optimal (needs t). Throws std::invalid_argument on unknown names.
Policy policy_by_name(const std::string& name, const RecoveryTable& table, int t);
std::vector<std::string> policy_names();

struct OnlineStep {
    int request = 0;
    std::optional<ColumnSet> chosen;
};

struct OnlineTrace {
    bool success = true;
    int failed_at = -1;  // index into the request sequence
    std::vector<OnlineStep> steps;
};

// Serves the requests left to right. Throws std::invalid_argument when more
// than t requests are given and std::logic_error when the policy returns an
// invalid set.
OnlineTrace simulate_online(const RecoveryTable& table, const Policy& policy, const std::vector<int>& requests, int t);

struct Event {
    enum class Kind { Arrive, Complete };
    Kind kind = Kind::Arrive;
    int request = 0;
    ColumnSet columns;  // completion only

    friend bool operator==(const Event&, const Event&) = default;
};

enum class Outcome { Served, Rejected, Completed, Deadlock };
std::string outcome_name(Outcome o);

struct TraceEntry {
    Event event;
    Outcome outcome = Outcome::Served;
    ColumnSet chosen;  // for Served
};

struct AsyncTrace {
    bool deadlock = false;
    std::size_t deadlock_event = 0;
    int deadlock_request = -1;
    std::vector<Service> active_at_deadlock;
    std::size_t rejected = 0;
    std::size_t max_active = 0;
    std::optional<std::uint64_t> seed;
    std::vector<TraceEntry> entries;
};

// Processes arrivals and completions with at most t active sets. Arrivals
// while t sets are active are rejected with a flag; an arrival that cannot be
// served with fewer than t active is a deadlock and stops the run. Throws
// std::invalid_argument when a completion names no active set.
AsyncTrace simulate_async(const RecoveryTable& table, const Policy& policy, const std::vector<Event>& events, int t);

// Random stream driven by a seeded generator: arrivals of uniform requests
// while fewer than t are active, completions of uniform active sets.
AsyncTrace simulate_random(const RecoveryTable& table, const Policy& policy, int t, std::size_t steps, std::uint64_t seed);

// First request sequence (length <= t, depth-first in lexicographic order)
// the policy fails on, or nullopt.
std::optional<std::vector<int>> adversarial_search(const RecoveryTable& table, const Policy& policy, int t);

}  // namespace batchcode
