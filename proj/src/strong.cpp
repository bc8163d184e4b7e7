#include "batchcode/strong.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace batchcode {

std::string Service::to_string() const {
    return RecoverySet{request, columns, {}}.to_string();
}

ServiceCollection::ServiceCollection(int k, std::vector<Service> services) : k_(k), services_(std::move(services)) {
    for (const auto& s : services_)
        if (s.request < 0 || s.request >= k) throw std::out_of_range("service request " + std::to_string(s.request + 1) + " out of range");
    std::sort(services_.begin(), services_.end());
    services_.erase(std::unique(services_.begin(), services_.end()), services_.end());
}

std::size_t ServiceCollection::count_for(int request) const {
    return static_cast<std::size_t>(
        std::count_if(services_.begin(), services_.end(), [&](const Service& s) { return s.request == request; }));
}

bool ServiceCollection::contains(const Service& s) const {
    return std::binary_search(services_.begin(), services_.end(), s);
}

ServiceCollection ServiceCollection::all_minimal(const RecoveryTable& table) {
    std::vector<Service> out;
    for (int i = 0; i < table.k(); ++i)
        for (const auto& m : table.masks(i)) out.push_back({i, m});
    return ServiceCollection(table.k(), std::move(out));
}

std::optional<std::size_t> first_invalid_service(const GFMatrix& g, const ServiceCollection& s, bool require_minimal) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto& sv = s[j];
        if (sv.request >= g.rows() || sv.columns.empty() || sv.columns.max_element() >= g.cols()) return j;
        if (!is_recovery_set(g, sv.request, sv.columns)) return j;
        if (require_minimal && !is_minimal(g, sv.request, sv.columns)) return j;
    }
    return std::nullopt;
}

std::vector<ColumnSet> member_sets(const StrongCollection& r) {
    std::vector<ColumnSet> out;
    for (const auto& s : r.services()) out.push_back(s.columns);
    std::sort(out.begin(), out.end(), size_then_lex);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Members of `sets` that are minimal recovery sets for each request.
std::vector<std::vector<std::size_t>> serving_members(const RecoveryTable& table, const std::vector<ColumnSet>& sets) {
    std::vector<std::vector<std::size_t>> serve(table.k());
    for (int i = 0; i < table.k(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j)
            if (table.is_minimal_for(i, sets[j])) serve[i].push_back(j);
    return serve;
}

// Calls f(family, union) for every family of exactly `size` pairwise disjoint
// members, in lexicographic order of member indices; stops when f returns false.
template <typename F>
bool for_each_disjoint_family(const std::vector<ColumnSet>& sets, int size, F&& f) {
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start, const ColumnSet& used) -> bool {
        if (static_cast<int>(pick.size()) == size) return f(pick, used);
        for (std::size_t j = start; j < sets.size(); ++j) {
            if (sets[j].intersects(used)) continue;
            pick.push_back(j);
            const bool go_on = self(self, j + 1, used | sets[j]);
            pick.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec, 0, ColumnSet{});
}

struct Violation {
    std::vector<std::size_t> family;
    ColumnSet used;
    int request = -1;
};

std::optional<Violation> find_violation(const std::vector<ColumnSet>& sets,
                                        const std::vector<std::vector<std::size_t>>& serve, int t,
                                        std::size_t* families = nullptr) {
    std::optional<Violation> bad;
    for (int s = 0; s < t && !bad; ++s) {
        for_each_disjoint_family(sets, s, [&](const std::vector<std::size_t>& fam, const ColumnSet& used) {
            if (families) ++*families;
            for (std::size_t i = 0; i < serve.size(); ++i) {
                bool ok = false;
                for (std::size_t j : serve[i])
                    if (!sets[j].intersects(used)) {
                        ok = true;
                        break;
                    }
                if (!ok) {
                    bad = Violation{fam, used, static_cast<int>(i)};
                    return false;
                }
            }
            return true;
        });
    }
    return bad;
}

}  // namespace

StrongVerdict check_strongly_async(const RecoveryTable& table, const StrongCollection& r, int t) {
    if (t < 1 || t > HistoryCollection::kMaxHorizon)
        throw std::invalid_argument("strong horizon must lie in [1, " + std::to_string(HistoryCollection::kMaxHorizon) + "]");
    const auto sets = member_sets(r);
    const auto serve = serving_members(table, sets);
    StrongVerdict v;
    v.t = t;
    if (auto bad = find_violation(sets, serve, t, &v.families_checked)) {
        v.holds = false;
        for (std::size_t j : bad->family) v.blocking.push_back(sets[j]);
        v.request = bad->request;
    }
    return v;
}

int exclusion_count(const ServiceCollection& s, const Service& service, int j) {
    int n = 0;
    for (const auto& other : s.services())
        if (other.request == j && other.columns.intersects(service.columns)) ++n;
    return n;
}

MLVerdict check_mL_strong(const ServiceCollection& s, int m, int L) {
    if (m < 1 || L < 1) throw std::invalid_argument("m and L must be at least 1");
    MLVerdict v;
    v.m = m;
    v.L = L;
    for (int i = 0; i < s.k(); ++i) {
        const auto c = s.count_for(i);
        if (c < static_cast<std::size_t>(m) && v.holds) {
            v.holds = false;
            v.short_request = i;
            v.short_count = c;
        }
    }
    for (const auto& sv : s.services())
        for (int j = 0; j < s.k(); ++j) {
            const int c = exclusion_count(s, sv, j);
            v.max_exclusion = std::max(v.max_exclusion, c);
            if (c > L && v.holds) {
                v.holds = false;
                v.excluder = sv;
                v.excluded_request = j;
                v.exclusion = c;
            }
        }
    return v;
}

int derive_t(int m, int L) {
    if (m < 1 || L < 1) throw std::invalid_argument("m and L must be at least 1");
    return (m + L - 1) / L;
}

// --- (m, L) feasibility ------------------------------------------------------------

namespace {

class MLFeasibility {
public:
    MLFeasibility(const RecoveryTable& table, int m, int L) : m_(m), L_(L), k_(table.k()) {
        for (int i = 0; i < k_; ++i) {
            cand_.emplace_back();
            for (const auto& cols : table.masks(i)) {
                cand_[i].push_back(services_.size());
                services_.push_back({i, cols});
            }
        }
        const std::size_t s = services_.size();
        meets_.resize(s);
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t y = 0; y < s; ++y)
                if (services_[x].columns.intersects(services_[y].columns)) meets_[x].push_back(y);
        excl_.assign(s * k_, 0);
        chosen_.assign(s, 0);
        order_.resize(k_);
        for (int i = 0; i < k_; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return cand_[a].size() < cand_[b].size(); });
    }

    std::optional<ServiceCollection> run() {
        for (int i = 0; i < k_; ++i)
            if (cand_[i].size() < static_cast<std::size_t>(m_)) return std::nullopt;
        if (!pick(0, 0, 0)) return std::nullopt;
        std::vector<Service> out;
        for (std::size_t x = 0; x < services_.size(); ++x)
            if (chosen_[x]) out.push_back(services_[x]);
        return ServiceCollection(k_, std::move(out));
    }

    std::size_t nodes() const { return nodes_; }

private:
    int& excl(std::size_t x, int j) { return excl_[x * k_ + j]; }

    // x could still be chosen: its own counts leave room.
    bool viable(std::size_t x) {
        const int r = services_[x].request;
        for (int j = 0; j < k_; ++j)
            if (excl(x, j) + (j == r ? 1 : 0) > L_) return false;
        return true;
    }

    bool can_add(std::size_t x) {
        if (!viable(x)) return false;
        const int r = services_[x].request;
        for (std::size_t y : meets_[x])
            if (chosen_[y] && y != x && excl(y, r) + 1 > L_) return false;
        return true;
    }

    void add(std::size_t x, int delta) {
        const int r = services_[x].request;
        chosen_[x] = delta > 0;
        for (std::size_t y : meets_[x]) excl(y, r) += delta;
    }

    // Every request still to be filled keeps enough viable candidates.
    bool lookahead(int from_slot, std::size_t from_pos, int picked) {
        for (int slot = from_slot; slot < k_; ++slot) {
            const auto& c = cand_[order_[slot]];
            const std::size_t start = slot == from_slot ? from_pos : 0;
            const int need = m_ - (slot == from_slot ? picked : 0);
            int avail = 0;
            for (std::size_t p = start; p < c.size() && avail < need; ++p)
                if (!chosen_[c[p]] && viable(c[p])) ++avail;
            if (avail < need) return false;
        }
        return true;
    }

    // Choose the services of request order_[slot] as an increasing index run.
    bool pick(int slot, std::size_t pos, int picked) {
        ++nodes_;
        if (slot == k_) return true;
        if (picked == m_) return pick(slot + 1, 0, 0);
        const auto& c = cand_[order_[slot]];
        if (!lookahead(slot, pos, picked)) return false;
        for (std::size_t p = pos; p + (m_ - picked) <= c.size(); ++p) {
            const std::size_t x = c[p];
            if (!can_add(x)) continue;
            add(x, +1);
            if (pick(slot, p + 1, picked + 1)) return true;
            add(x, -1);
        }
        return false;
    }

    int m_, L_, k_;
    std::vector<Service> services_;
    std::vector<std::vector<std::size_t>> cand_;
    std::vector<std::vector<std::size_t>> meets_;
    std::vector<int> excl_;
    std::vector<char> chosen_;
    std::vector<int> order_;
    std::size_t nodes_ = 0;
};

}  // namespace

std::optional<ServiceCollection> find_mL_collection(const RecoveryTable& table, int m, int L, std::size_t* nodes) {
    if (m < 1 || L < 1) throw std::invalid_argument("m and L must be at least 1");
    MLFeasibility f(table, m, L);
    auto out = f.run();
    if (nodes) *nodes += f.nodes();
    return out;
}

MLSearchResult search_best_mL(const RecoveryTable& table, const MLSearchLimits& limits) {
    if (table.k() > limits.max_k || table.n() > limits.max_n)
        throw std::invalid_argument("(m,L) search needs k <= " + std::to_string(limits.max_k) + " and n <= " +
                                    std::to_string(limits.max_n));
    std::size_t d_min = static_cast<std::size_t>(-1);
    for (int i = 0; i < table.k(); ++i) d_min = std::min(d_min, table.masks(i).size());
    MLSearchResult best;
    if (table.k() == 0 || d_min == 0) return best;
    const int top = static_cast<int>(d_min);
    for (int t = top; t >= 1; --t) {
        for (int L = 1;; ++L) {
            const int m = (t - 1) * L + 1;
            if (m > top) break;
            if (auto s = find_mL_collection(table, m, L, &best.nodes)) {
                best.t = t;
                best.m = m;
                best.L = L;
                best.witness = std::move(*s);
                best.reaches_2L_plus_1 = t >= 3;
                return best;
            }
            if (t == 1) break;
        }
    }
    return best;
}

// --- history views of a strong collection ----------------------------------------------

HistoryCollection sequence_histories(const StrongCollection& r, int t) {
    const auto sets = member_sets(r);
    HistoryCollection out(HistoryMode::Sequence, t);
    History seq;
    auto rec = [&](auto&& self, const ColumnSet& used) -> void {
        out.insert(seq);
        if (static_cast<int>(seq.size()) >= t) return;
        for (const auto& s : sets) {
            if (s.intersects(used)) continue;
            seq.push_back(s);
            self(self, used | s);
            seq.pop_back();
        }
    };
    rec(rec, ColumnSet{});
    return out;
}

HistoryCollection set_histories(const StrongCollection& r, int t) {
    const auto sets = member_sets(r);
    HistoryCollection out(HistoryMode::Set, t);
    for (int s = 0; s <= t; ++s)
        for_each_disjoint_family(sets, s, [&](const std::vector<std::size_t>& fam, const ColumnSet&) {
            History h;
            for (std::size_t j : fam) h.push_back(sets[j]);
            out.insert(std::move(h));
            return true;
        });
    return out;
}

bool strong_equivalence_selftest(const RecoveryTable& table, const StrongCollection& r, int t) {
    const bool seq = has_extension_property(sequence_histories(r, t), table).holds;
    const bool set = has_extension_property(set_histories(r, t), table).holds;
    return seq == set;
}

// --- strong-collection search -------------------------------------------------------------

StrongSearchResult search_strong_collection(const RecoveryTable& table, int t, std::size_t max_nodes) {
    if (t < 1 || t > HistoryCollection::kMaxHorizon)
        throw std::invalid_argument("strong horizon must lie in [1, " + std::to_string(HistoryCollection::kMaxHorizon) + "]");
    const auto& universe = table.universe();
    const auto serve_all = serving_members(table, universe);
    StrongSearchResult res;
    std::set<std::vector<std::size_t>> seen;

    // Missing candidates (universe ids) for the violation with the fewest of
    // them; nullopt when the collection is valid.
    auto branch_set = [&](const std::vector<std::size_t>& ids) -> std::optional<std::vector<std::size_t>> {
        std::vector<ColumnSet> sets;
        for (std::size_t id : ids) sets.push_back(universe[id]);
        const auto serve = serving_members(table, sets);
        std::optional<std::vector<std::size_t>> best;
        for (int s = 0; s < t; ++s) {
            for_each_disjoint_family(sets, s, [&](const std::vector<std::size_t>&, const ColumnSet& used) {
                for (int i = 0; i < table.k(); ++i) {
                    bool ok = false;
                    for (std::size_t j : serve[i])
                        if (!sets[j].intersects(used)) {
                            ok = true;
                            break;
                        }
                    if (ok) continue;
                    std::vector<std::size_t> cand;
                    for (std::size_t id : serve_all[i])
                        if (!universe[id].intersects(used)) cand.push_back(id);
                    if (!best || cand.size() < best->size()) best = std::move(cand);
                    if (best->empty()) return false;
                }
                return true;
            });
            if (best && best->empty()) break;
        }
        return best;
    };

    auto rec = [&](auto&& self, std::vector<std::size_t> ids) -> bool {
        std::sort(ids.begin(), ids.end());
        if (!seen.insert(ids).second) return false;
        if (++res.nodes > max_nodes)
            throw std::invalid_argument("strong-collection search exceeded " + std::to_string(max_nodes) + " nodes");
        const auto cand = branch_set(ids);
        if (!cand) {
            std::vector<Service> out;
            for (std::size_t id : ids)
                for (int i = 0; i < table.k(); ++i)
                    if (table.is_minimal_for(i, universe[id])) out.push_back({i, universe[id]});
            res.found = true;
            res.collection = ServiceCollection(table.k(), std::move(out));
            return true;
        }
        for (std::size_t id : *cand) {
            auto next = ids;
            next.push_back(id);
            if (self(self, std::move(next))) return true;
        }
        return false;
    };
    rec(rec, {});
    return res;
}

}  // namespace batchcode
