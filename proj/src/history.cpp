#include "batchcode/history.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>

#include "batchcode/simd/kernels.hpp"

namespace batchcode {

std::size_t HistoryHash::operator()(const History& h) const {
    std::size_t seed = h.size();
    for (const auto& s : h) seed ^= s.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

std::string history_to_string(const History& h) {
    std::string s = "(";
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (j) s += ",";
        s += h[j].to_string();
    }
    return s + ")";
}

History canonical(History h) {
    std::sort(h.begin(), h.end(), size_then_lex);
    return h;
}

namespace {

ColumnSet union_of(const History& h) {
    ColumnSet u;
    for (const auto& s : h) u |= s;
    return u;
}

bool history_less(const History& a, const History& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == b[j]) continue;
        return size_then_lex(a[j], b[j]);
    }
    return false;
}

}  // namespace

HistoryCollection::HistoryCollection(HistoryMode mode, int horizon) : mode_(mode), horizon_(horizon) {
    if (horizon < 1 || horizon > kMaxHorizon)
        throw std::invalid_argument("history horizon must lie in [1, " + std::to_string(kMaxHorizon) + "]");
}

void HistoryCollection::insert(History h) {
    if (static_cast<int>(h.size()) > horizon_) throw std::invalid_argument("history longer than the horizon");
    ColumnSet used;
    for (const auto& s : h) {
        if (s.empty()) throw std::invalid_argument("empty recovery set in history");
        if (s.intersects(used)) throw std::invalid_argument("history sets are not pairwise disjoint");
        used |= s;
    }
    if (mode_ == HistoryMode::Set) h = canonical(std::move(h));
    members_.insert(std::move(h));
}

bool HistoryCollection::contains(const History& h) const {
    if (mode_ == HistoryMode::Set) return members_.count(canonical(h)) > 0;
    return members_.count(h) > 0;
}

std::vector<History> HistoryCollection::sorted_members() const {
    std::vector<History> out(members_.begin(), members_.end());
    std::sort(out.begin(), out.end(), history_less);
    return out;
}

bool members_are_minimal(const HistoryCollection& h, const RecoveryTable& table) {
    for (const auto& m : h.members())
        for (const auto& s : m) {
            bool ok = false;
            for (int i = 0; i < table.k() && !ok; ++i) ok = table.is_minimal_for(i, s);
            if (!ok) return false;
        }
    return true;
}

bool is_prefix_closed(const HistoryCollection& h) {
    if (h.mode() != HistoryMode::Sequence) throw std::invalid_argument("prefix-closure needs a sequence-mode collection");
    for (const auto& m : h.members())
        for (std::size_t len = 0; len < m.size(); ++len)
            if (!h.contains(History(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(len)))) return false;
    return true;
}

bool is_subset_closed(const HistoryCollection& h) {
    if (h.mode() != HistoryMode::Set) throw std::invalid_argument("subset-closure needs a set-mode collection");
    // Closure under dropping one set, checked on every member, covers all subsets.
    for (const auto& m : h.members())
        for (std::size_t j = 0; j < m.size(); ++j) {
            History smaller = m;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(j));
            if (!h.contains(smaller)) return false;
        }
    return true;
}

HistoryCollection closure(const HistoryCollection& h) {
    HistoryCollection out(h.mode(), h.horizon());
    for (const auto& m : h.members()) {
        if (h.mode() == HistoryMode::Sequence) {
            for (std::size_t len = 0; len <= m.size(); ++len)
                out.insert(History(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(len)));
        } else {
            const std::size_t n = m.size();
            for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
                History sub;
                for (std::size_t j = 0; j < n; ++j)
                    if (mask >> j & 1U) sub.push_back(m[j]);
                out.insert(std::move(sub));
            }
        }
    }
    return out;
}

ExtensionVerdict has_extension_property(const HistoryCollection& h, const RecoveryTable& table) {
    for (const auto& m : h.sorted_members()) {
        if (static_cast<int>(m.size()) >= h.horizon()) continue;
        const ColumnSet used = union_of(m);
        for (int i = 0; i < table.k(); ++i) {
            bool extended = false;
            for (const auto& cand : table.masks(i)) {
                if (cand.intersects(used)) continue;
                History next = m;
                next.push_back(cand);
                if (h.contains(next)) {
                    extended = true;
                    break;
                }
            }
            if (!extended) return {false, m, i};
        }
    }
    return {};
}

ExchangeVerdict has_exchange_property(const HistoryCollection& complete, const RecoveryTable& table) {
    for (const auto& m : complete.members())
        if (static_cast<int>(m.size()) != complete.horizon())
            throw std::invalid_argument("exchange property needs complete members only");
    for (const auto& m : complete.sorted_members()) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            ColumnSet others;
            for (std::size_t l = 0; l < m.size(); ++l)
                if (l != j) others |= m[l];
            for (int i = 0; i < table.k(); ++i) {
                bool exchanged = false;
                for (const auto& cand : table.masks(i)) {
                    if (cand.intersects(others)) continue;
                    History next = m;
                    next[j] = cand;
                    if (complete.contains(next)) {
                        exchanged = true;
                        break;
                    }
                }
                if (!exchanged) return {false, m, static_cast<int>(j), i};
            }
        }
    }
    return {};
}

bool check_exchange_extension_equivalence(const HistoryCollection& complete, const RecoveryTable& table) {
    if (complete.mode() != HistoryMode::Set) throw std::invalid_argument("equivalence check needs a set-mode collection");
    const bool exchange = has_exchange_property(complete, table).holds;
    const bool extension = has_extension_property(closure(complete), table).holds;
    return exchange == extension;
}

// --- online game --------------------------------------------------------------

OnlineGame::OnlineGame(const RecoveryTable& table, int t, bool reverse_candidates)
    : table_(table), t_(t), reverse_(reverse_candidates) {
    if (t < 1 || t > HistoryCollection::kMaxHorizon)
        throw std::invalid_argument("online horizon must lie in [1, " + std::to_string(HistoryCollection::kMaxHorizon) + "]");
}

bool OnlineGame::wins(const ColumnSet& used, int served) {
    if (served >= t_) return true;
    const Key key{used, served};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = true;
    for (int i = 0; i < table_.k() && result; ++i) result = can_continue(used, served, i);
    memo_.emplace(key, result);
    return result;
}

bool OnlineGame::can_continue(const ColumnSet& used, int served, int request) {
    return winning_choice(used, served, request).has_value();
}

std::optional<std::size_t> OnlineGame::winning_choice(const ColumnSet& used, int served, int request) {
    const auto masks = table_.masks(request);
    const std::size_t n = masks.size();
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t c = reverse_ ? n - 1 - step : step;
        if (masks[c].intersects(used)) continue;
        if (wins(used | masks[c], served + 1)) return c;
    }
    return std::nullopt;
}

namespace {

// Some serving of prefix[pos..] (from `used`) ends in a state where every
// request still has a disjoint minimal recovery set.
bool prefix_escapes(const RecoveryTable& table, const std::vector<int>& prefix, std::size_t pos, const ColumnSet& used) {
    const auto& kern = simd::kernels();
    if (pos == prefix.size()) {
        for (int i = 0; i < table.k(); ++i) {
            const auto masks = table.masks(i);
            if (kern.find_disjoint(masks, used, 0) == masks.size()) return false;
        }
        return true;
    }
    const auto masks = table.masks(prefix[pos]);
    for (std::size_t c = 0; c < masks.size(); ++c) {
        if (masks[c].intersects(used)) continue;
        if (prefix_escapes(table, prefix, pos + 1, used | masks[c])) return true;
    }
    return false;
}

void build_online_witness(OnlineGame& game, const RecoveryTable& table, HistoryCollection& out, History& seq,
                          const ColumnSet& used) {
    out.insert(seq);
    if (static_cast<int>(seq.size()) >= game.horizon()) return;
    for (int i = 0; i < table.k(); ++i) {
        const auto choice = game.winning_choice(used, static_cast<int>(seq.size()), i);
        if (!choice) throw std::logic_error("online witness: winning state without winning choice");
        const ColumnSet& cols = table.masks(i)[*choice];
        seq.push_back(cols);
        build_online_witness(game, table, out, seq, used | cols);
        seq.pop_back();
    }
}

}  // namespace

bool verify_losing_prefix(const RecoveryTable& table, const std::vector<int>& prefix) {
    for (int i : prefix)
        if (i < 0 || i >= table.k()) throw std::out_of_range("prefix request out of range");
    return !prefix_escapes(table, prefix, 0, ColumnSet{});
}

OnlineVerdict check_online(const RecoveryTable& table, int t, const OnlineOptions& opts) {
    OnlineGame game(table, t, opts.reverse_candidates);
    OnlineVerdict v;
    v.t = t;
    v.online = game.wins(ColumnSet{}, 0);

    if (v.online) {
        // Witness size is at most sum_{s<=t} k^s sequences.
        double bound = 0, layer = 1;
        for (int s = 0; s <= t; ++s, layer *= table.k()) bound += layer;
        if (opts.build_witness && bound <= static_cast<double>(opts.max_witness_members)) {
            HistoryCollection w(HistoryMode::Sequence, t);
            History seq;
            build_online_witness(game, table, w, seq, ColumnSet{});
            v.witness = std::move(w);
        }
    } else {
        for (int i = 0; i < table.k(); ++i)
            if (!game.winning_choice(ColumnSet{}, 0, i)) {
                v.adversary_first_request = i;
                break;
            }
        double count = 1;
        for (int s = 0; s < t && v.fixed_losing_prefixes.empty(); ++s, count *= table.k()) {
            if (count > static_cast<double>(opts.max_prefix_sequences)) break;
            std::vector<int> seq(s, 0);
            while (true) {
                if (verify_losing_prefix(table, seq)) v.fixed_losing_prefixes.push_back(seq);
                int j = s - 1;
                while (j >= 0 && seq[j] == table.k() - 1) seq[j--] = 0;
                if (j < 0) break;
                ++seq[j];
            }
        }
    }
    v.states_explored = game.states();
    return v;
}

std::optional<std::vector<ColumnSet>> adversary_line(const RecoveryTable& table, int t, const std::vector<int>& requests) {
    if (requests.empty() || static_cast<int>(requests.size()) > t) throw std::invalid_argument("line length must lie in [1, t]");
    for (int r : requests)
        if (r < 0 || r >= table.k()) throw std::invalid_argument("request out of range");
    OnlineGame game(table, t);
    std::vector<ColumnSet> answers;
    auto rec = [&](auto&& self, const ColumnSet& used) -> bool {
        const int depth = static_cast<int>(answers.size());
        const int request = requests[static_cast<std::size_t>(depth)];
        if (game.winning_choice(used, depth, request)) return false;
        if (depth + 1 == static_cast<int>(requests.size())) return true;
        for (const auto& rs : table.sets(request)) {
            if (rs.columns.intersects(used)) continue;
            answers.push_back(rs.columns);
            if (self(self, used | rs.columns)) return true;
            answers.pop_back();
        }
        return false;
    };
    if (rec(rec, ColumnSet{})) return answers;
    return std::nullopt;
}

int max_online_t(const RecoveryTable& table, int limit) {
    int best = 0;
    for (int t = 1; t <= std::min(limit, HistoryCollection::kMaxHorizon); ++t) {
        OnlineOptions o;
        o.build_witness = false;
        o.max_prefix_sequences = 0;
        if (!check_online(table, t, o).online) break;
        best = t;
    }
    return best;
}

// --- asynchronous fixed point ----------------------------------------------------

namespace {

using Key128 = unsigned __int128;

struct Key128Hash {
    std::size_t operator()(Key128 k) const {
        const auto lo = static_cast<std::uint64_t>(k);
        const auto hi = static_cast<std::uint64_t>(k >> 64);
        return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    }
};

struct HistoryNode {
    std::array<std::uint16_t, HistoryCollection::kMaxHorizon> ids{};
    int size = 0;
    ColumnSet used;
};

// Sorted ids packed 16 bits each, offset by one so the empty history is 0.
Key128 pack(const std::uint16_t* ids, int size) {
    Key128 k = 0;
    for (int j = 0; j < size; ++j) k |= static_cast<Key128>(ids[j] + 1U) << (16 * j);
    return k;
}

class AsyncFixedPoint {
public:
    AsyncFixedPoint(const RecoveryTable& table, int t, std::size_t cap) : table_(table), t_(t), cap_(cap) {
        const auto& u = table.universe();
        if (u.size() >= 65535) throw std::invalid_argument("too many distinct recovery sets");
        std::unordered_map<ColumnSet, std::uint16_t, ColumnSetHash> id_of;
        for (std::size_t j = 0; j < u.size(); ++j) id_of.emplace(u[j], static_cast<std::uint16_t>(j));
        cand_.resize(table.k());
        for (int i = 0; i < table.k(); ++i)
            for (const auto& m : table.masks(i)) cand_[i].push_back(id_of.at(m));
        HistoryNode root;
        generate(root, 0);
    }

    AsyncVerdict run(bool build_witness) {
        std::vector<char> alive(nodes_.size(), 1);
        AsyncVerdict v;
        v.t = t_;
        v.histories_total = nodes_.size();
        const auto& u = table_.universe();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t h = 0; h < nodes_.size(); ++h) {
                if (!alive[h]) continue;
                const auto& node = nodes_[h];
                if (!subsets_alive(node, alive) || failing_request(node, alive, u) >= 0) {
                    if (!v.first_pruned) {
                        const int req = failing_request(node, alive, u);
                        if (req >= 0) {
                            v.first_pruned = to_history(node);
                            v.first_pruned_request = req;
                        }
                    }
                    alive[h] = 0;
                    changed = true;
                }
            }
        }
        v.histories_surviving = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
        v.asynchronous = alive[0] != 0;  // node 0 is the empty history
        if (v.asynchronous && build_witness && v.histories_surviving <= 200000) {
            HistoryCollection w(HistoryMode::Set, t_);
            for (std::size_t h = 0; h < nodes_.size(); ++h)
                if (alive[h]) w.insert(to_history(nodes_[h]));
            v.witness = std::move(w);
        }
        return v;
    }

private:
    void generate(HistoryNode& node, std::size_t start) {
        if (nodes_.size() >= cap_)
            throw std::invalid_argument("asynchronous check: more than " + std::to_string(cap_) + " histories");
        index_.emplace(pack(node.ids.data(), node.size), nodes_.size());
        nodes_.push_back(node);
        if (node.size >= t_) return;
        const auto& u = table_.universe();
        for (std::size_t id = start; id < u.size(); ++id) {
            if (u[id].intersects(node.used)) continue;
            HistoryNode next = node;
            next.ids[next.size++] = static_cast<std::uint16_t>(id);
            next.used |= u[id];
            generate(next, id + 1);
        }
    }

    bool subsets_alive(const HistoryNode& node, const std::vector<char>& alive) const {
        std::array<std::uint16_t, HistoryCollection::kMaxHorizon> sub{};
        for (int drop = 0; drop < node.size; ++drop) {
            int n = 0;
            for (int j = 0; j < node.size; ++j)
                if (j != drop) sub[n++] = node.ids[j];
            if (!alive[index_.at(pack(sub.data(), n))]) return false;
        }
        return true;
    }

    // First request the history cannot be extended for within the alive set, or -1.
    int failing_request(const HistoryNode& node, const std::vector<char>& alive, const std::vector<ColumnSet>& u) const {
        if (node.size >= t_) return -1;
        std::array<std::uint16_t, HistoryCollection::kMaxHorizon> ext{};
        for (int i = 0; i < table_.k(); ++i) {
            bool ok = false;
            for (std::uint16_t id : cand_[i]) {
                if (u[id].intersects(node.used)) continue;
                int n = 0;
                bool placed = false;
                for (int j = 0; j < node.size; ++j) {
                    if (!placed && id < node.ids[j]) {
                        ext[n++] = id;
                        placed = true;
                    }
                    ext[n++] = node.ids[j];
                }
                if (!placed) ext[n++] = id;
                if (alive[index_.at(pack(ext.data(), n))]) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return i;
        }
        return -1;
    }

    History to_history(const HistoryNode& node) const {
        History h;
        for (int j = 0; j < node.size; ++j) h.push_back(table_.universe()[node.ids[j]]);
        return canonical(std::move(h));
    }

    const RecoveryTable& table_;
    int t_;
    std::size_t cap_;
    std::vector<std::vector<std::uint16_t>> cand_;
    std::vector<HistoryNode> nodes_;
    std::unordered_map<Key128, std::size_t, Key128Hash> index_;
};

}  // namespace

AsyncVerdict check_asynchronous(const RecoveryTable& table, int t, const AsyncOptions& opts) {
    if (t < 1 || t > HistoryCollection::kMaxHorizon)
        throw std::invalid_argument("asynchronous horizon must lie in [1, " + std::to_string(HistoryCollection::kMaxHorizon) + "]");
    AsyncFixedPoint fp(table, t, opts.max_histories);
    return fp.run(opts.build_witness);
}

int max_async_t(const RecoveryTable& table, int limit) {
    int best = 0;
    for (int t = 1; t <= std::min(limit, HistoryCollection::kMaxHorizon); ++t) {
        AsyncOptions o;
        o.build_witness = false;
        if (!check_asynchronous(table, t, o).asynchronous) break;
        best = t;
    }
    return best;
}

}  // namespace batchcode
