#include "batchcode/simulate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "batchcode/simd/kernels.hpp"

namespace batchcode {

namespace {

std::optional<ColumnSet> first_available(const PolicyState& s) {
    const auto masks = s.table.masks(s.request);
    const std::size_t c = simd::kernels().find_disjoint(masks, s.used, 0);
    if (c == masks.size()) return std::nullopt;
    return masks[c];
}

}  // namespace

Policy singleton_first_policy() {
    // Table order is (size, lexicographic), so the first disjoint set is the smallest.
    return {"singleton-first", first_available};
}

Policy lexicographic_policy() {
    return {"lexicographic", [](const PolicyState& s) -> std::optional<ColumnSet> {
                std::optional<ColumnSet> best;
                for (const auto& m : s.table.masks(s.request))
                    if (!m.intersects(s.used) && (!best || m < *best)) best = m;
                return best;
            }};
}

Policy largest_remaining_policy() {
    return {"largest-remaining", [](const PolicyState& s) -> std::optional<ColumnSet> {
                const auto& kern = simd::kernels();
                std::optional<ColumnSet> best;
                long best_score = -1;
                for (const auto& m : s.table.masks(s.request)) {
                    if (m.intersects(s.used)) continue;
                    const ColumnSet after = s.used | m;
                    long score = 0;
                    for (int j = 0; j < s.table.k(); ++j) {
                        const auto mj = s.table.masks(j);
                        score += static_cast<long>(mj.size() - kern.count_intersecting(mj, after));
                    }
                    if (score > best_score) {
                        best_score = score;
                        best = m;
                    }
                }
                return best;
            }};
}

Policy game_optimal_policy(const RecoveryTable& table, int t) {
    auto game = std::make_shared<OnlineGame>(table, t);
    return {"game-optimal", [game](const PolicyState& s) -> std::optional<ColumnSet> {
                if (s.active < game->horizon())
                    if (auto c = game->winning_choice(s.used, s.active, s.request)) return s.table.masks(s.request)[*c];
                return first_available(s);
            }};
}

Policy restricted_policy(const StrongCollection& r) {
    auto sets = std::make_shared<std::vector<ColumnSet>>(member_sets(r));
    return {"restricted", [sets](const PolicyState& s) -> std::optional<ColumnSet> {
                for (const auto& m : *sets)
                    if (!m.intersects(s.used) && s.table.is_minimal_for(s.request, m)) return m;
                return std::nullopt;
            }};
}

std::vector<std::string> policy_names() {
    return {"singleton-first", "lexicographic", "largest-remaining", "game-optimal"};
}

Policy policy_by_name(const std::string& name, const RecoveryTable& table, int t) {
    if (name == "singleton-first") return singleton_first_policy();
    if (name == "lexicographic") return lexicographic_policy();
    if (name == "largest-remaining") return largest_remaining_policy();
    if (name == "game-optimal") return game_optimal_policy(table, t);
    throw std::invalid_argument("unknown policy '" + name + "'");
}

namespace {

std::optional<ColumnSet> ask(const RecoveryTable& table, const Policy& policy, const ColumnSet& used, int active,
                             int request) {
    if (request < 0 || request >= table.k()) throw std::invalid_argument("request out of range");
    auto c = policy.choose(PolicyState{table, used, active, request});
    if (c && (c->intersects(used) || !table.is_minimal_for(request, *c)))
        throw std::logic_error("policy " + policy.name + " returned an invalid set " + c->to_string());
    return c;
}

}  // namespace

OnlineTrace simulate_online(const RecoveryTable& table, const Policy& policy, const std::vector<int>& requests, int t) {
    if (static_cast<int>(requests.size()) > t) throw std::invalid_argument("more requests than the horizon");
    OnlineTrace trace;
    ColumnSet used;
    for (std::size_t j = 0; j < requests.size(); ++j) {
        auto c = ask(table, policy, used, static_cast<int>(j), requests[j]);
        trace.steps.push_back({requests[j], c});
        if (!c) {
            trace.success = false;
            trace.failed_at = static_cast<int>(j);
            break;
        }
        used |= *c;
    }
    return trace;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Served: return "served";
        case Outcome::Rejected: return "rejected";
        case Outcome::Completed: return "completed";
        case Outcome::Deadlock: return "deadlock";
    }
    return "?";
}

namespace {

class AsyncRun {
public:
    AsyncRun(const RecoveryTable& table, const Policy& policy, int t) : table_(table), policy_(policy), t_(t) {
        if (t < 1) throw std::invalid_argument("t must be at least 1");
    }

    // False once a deadlock stops the run.
    bool apply(const Event& e) {
        TraceEntry entry{e, Outcome::Served, {}};
        if (e.kind == Event::Kind::Complete) {
            const auto it = std::find(active_.begin(), active_.end(), Service{e.request, e.columns});
            if (it == active_.end())
                throw std::invalid_argument("completion " + Service{e.request, e.columns}.to_string() + " is not active");
            active_.erase(it);
            entry.outcome = Outcome::Completed;
        } else if (static_cast<int>(active_.size()) >= t_) {
            entry.outcome = Outcome::Rejected;
            ++trace.rejected;
        } else {
            ColumnSet used;
            for (const auto& a : active_) used |= a.columns;
            auto c = ask(table_, policy_, used, static_cast<int>(active_.size()), e.request);
            if (!c) {
                entry.outcome = Outcome::Deadlock;
                trace.deadlock = true;
                trace.deadlock_event = trace.entries.size();
                trace.deadlock_request = e.request;
                trace.active_at_deadlock = active_;
                trace.entries.push_back(entry);
                return false;
            }
            entry.chosen = *c;
            active_.push_back({e.request, *c});
            trace.max_active = std::max(trace.max_active, active_.size());
        }
        trace.entries.push_back(entry);
        return true;
    }

    const std::vector<Service>& active() const { return active_; }

    AsyncTrace trace;

private:
    const RecoveryTable& table_;
    const Policy& policy_;
    int t_;
    std::vector<Service> active_;
};

}  // namespace

AsyncTrace simulate_async(const RecoveryTable& table, const Policy& policy, const std::vector<Event>& events, int t) {
    AsyncRun run(table, policy, t);
    for (const auto& e : events) {
        if (e.kind == Event::Kind::Arrive && (e.request < 0 || e.request >= table.k()))
            throw std::invalid_argument("arrival request out of range");
        if (!run.apply(e)) break;
    }
    return std::move(run.trace);
}

AsyncTrace simulate_random(const RecoveryTable& table, const Policy& policy, int t, std::size_t steps, std::uint64_t seed) {
    AsyncRun run(table, policy, t);
    run.trace.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < steps; ++s) {
        const auto active = run.active().size();
        Event e;
        const bool arrive = active == 0 || (static_cast<int>(active) < t && rng() % 2 == 0);
        if (arrive) {
            e.kind = Event::Kind::Arrive;
            e.request = static_cast<int>(rng() % static_cast<std::uint64_t>(table.k()));
        } else {
            const auto& victim = run.active()[rng() % active];
            e = Event{Event::Kind::Complete, victim.request, victim.columns};
        }
        if (!run.apply(e)) break;
    }
    return std::move(run.trace);
}

std::optional<std::vector<int>> adversarial_search(const RecoveryTable& table, const Policy& policy, int t) {
    std::vector<int> seq;
    auto rec = [&](auto&& self, const ColumnSet& used) -> bool {
        if (static_cast<int>(seq.size()) >= t) return false;
        for (int i = 0; i < table.k(); ++i) {
            seq.push_back(i);
            auto c = ask(table, policy, used, static_cast<int>(seq.size()) - 1, i);
            if (!c || self(self, used | *c)) return true;
            seq.pop_back();
        }
        return false;
    };
    if (rec(rec, ColumnSet{})) return seq;
    return std::nullopt;
}

}  // namespace batchcode
