#pragma once

// Randomized and exhaustive checks of the general results, shared by the
// property tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "batchcode/batch.hpp"
#include "batchcode/graph.hpp"
#include "batchcode/history.hpp"
#include "batchcode/strong.hpp"
#include "fixtures.hpp"

namespace suites {

using namespace batchcode;

struct Tally {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string first;  // description of the first violation

    void fail(const std::string& what) {
        if (violations++ == 0) first = what;
    }
    bool ok() const { return violations == 0; }
};

inline std::string describe(const GFMatrix& g) {
    std::ostringstream s;
    for (int r = 0; r < g.rows(); ++r) {
        s << (r ? "/" : "");
        for (int c = 0; c < g.cols(); ++c) s << g(r, c);
    }
    return s.str();
}

// Binary code of the given shape with full row rank, so every position has
// at least one recovery set.
inline GFMatrix random_full_rank(std::mt19937_64& rng, int k, int n) {
    for (;;) {
        auto g = fixtures::random_matrix(rng, 2, k, n);
        if (rank(g) == k) return g;
    }
}

// All histories of exactly t pairwise disjoint sets drawn from `sets`.
inline std::vector<History> complete_histories(const std::vector<ColumnSet>& sets, int t) {
    std::vector<History> out;
    History h;
    std::function<void(std::size_t, ColumnSet)> rec = [&](std::size_t from, ColumnSet used) {
        if (static_cast<int>(h.size()) == t) {
            out.push_back(h);
            return;
        }
        for (std::size_t j = from; j < sets.size(); ++j) {
            if (sets[j].intersects(used)) continue;
            h.push_back(sets[j]);
            rec(j + 1, used | sets[j]);
            h.pop_back();
        }
    };
    rec(0, ColumnSet{});
    return out;
}

// exchange(H*) == extension(closure(H*)) on random complete set-mode
// collections over random binary codes with k <= 3, n <= 6.
inline Tally exchange_extension_samples(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally tally;
    std::size_t exchange_true = 0;
    while (tally.cases < samples) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int n = k + static_cast<int>(rng() % (7 - k));
        const auto g = random_full_rank(rng, k, n);
        RecoveryTable table(g);
        const int t = 1 + static_cast<int>(rng() % 3);
        const auto all = complete_histories(table.universe(), t);
        if (all.empty()) continue;
        HistoryCollection hs(HistoryMode::Set, t);
        // Mix dense and sparse samples so both verdicts occur.
        const unsigned keep = 30 + static_cast<unsigned>(rng() % 71);
        for (const auto& h : all)
            if (rng() % 100 < keep) hs.insert(h);
        ++tally.cases;
        const bool ex = has_exchange_property(hs, table).holds;
        const bool ext = has_extension_property(closure(hs), table).holds;
        exchange_true += ex;
        if (ex != ext || !check_exchange_extension_equivalence(hs, table))
            tally.fail("code " + describe(g) + " t=" + std::to_string(t));
    }
    if (exchange_true == 0 || exchange_true == tally.cases) tally.fail("samples never exercised both verdicts");
    return tally;
}

// Sequence analogue, one direction only: exchange(H*) implies extension of
// the prefix closure.
inline Tally sequence_exchange_samples(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally tally;
    while (tally.cases < samples) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int n = k + static_cast<int>(rng() % (7 - k));
        const auto g = random_full_rank(rng, k, n);
        RecoveryTable table(g);
        const int t = 1 + static_cast<int>(rng() % 2);
        auto sets = complete_histories(table.universe(), t);
        if (sets.empty()) continue;
        HistoryCollection hs(HistoryMode::Sequence, t);
        const unsigned keep = 50 + static_cast<unsigned>(rng() % 51);
        for (auto h : sets) {
            std::sort(h.begin(), h.end());
            do {
                if (rng() % 100 < keep) hs.insert(h);
            } while (std::next_permutation(h.begin(), h.end()));
        }
        ++tally.cases;
        if (has_exchange_property(hs, table).holds && !has_extension_property(closure(hs), table).holds)
            tally.fail("code " + describe(g) + " t=" + std::to_string(t));
    }
    return tally;
}

// Sequence-mode extendability of H(R) equals set-mode extendability of its
// set counterpart, on random (G, R, t).
inline Tally strong_equivalence_samples(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally tally;
    std::size_t holds = 0;
    while (tally.cases < samples) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int n = k + static_cast<int>(rng() % (7 - k));
        const auto g = random_full_rank(rng, k, n);
        RecoveryTable table(g);
        std::vector<Service> picked;
        const unsigned keep = 40 + static_cast<unsigned>(rng() % 61);
        for (int i = 0; i < k; ++i)
            for (const auto& rs : table.sets(i))
                if (rng() % 100 < keep) picked.push_back({i, rs.columns});
        const StrongCollection r(k, picked);
        const int t = 1 + static_cast<int>(rng() % 3);
        ++tally.cases;
        const bool seq = has_extension_property(sequence_histories(r, t), table).holds;
        const bool set = has_extension_property(set_histories(r, t), table).holds;
        const bool direct = check_strongly_async(table, r, t).holds;
        holds += direct;
        if (seq != set || set != direct || !strong_equivalence_selftest(table, r, t))
            tally.fail("code " + describe(g) + " t=" + std::to_string(t));
    }
    if (holds == 0 || holds == tally.cases) tally.fail("samples never exercised both verdicts");
    return tally;
}

// Largest t for every level of the hierarchy, each computed on its own.
struct HierarchyRow {
    int batch = 0, online = 0, async = 0, strong = 0;
    int ml = -1;  // -1 when outside the search limits
    int ml_m = 0, ml_L = 0;
};

// Computes the row and checks every implication directly:
// (m,L) witness => ceil(m/L)-strong, strong collection => H(R) witness and
// asynchronous, asynchronous => online => batch, per t.
inline HierarchyRow hierarchy_check(const GFMatrix& g, Tally& tally, int limit = 6) {
    RecoveryTable table(g);
    HierarchyRow row;
    const std::string name = describe(g);
    limit = std::min({limit, g.cols(), HistoryCollection::kMaxHorizon});
    bool b = true, o = true, a = true;
    for (int t = 1; t <= limit; ++t) {
        b = b && check_batch(table, t).holds;
        const bool on = check_online(table, t).online;
        const auto av = check_asynchronous(table, t);
        if (on && !b) tally.fail(name + ": online but not batch at t=" + std::to_string(t));
        if (av.asynchronous && !on) tally.fail(name + ": asynchronous but not online at t=" + std::to_string(t));
        o = o && on;
        a = a && av.asynchronous;
        if (b) row.batch = t;
        if (o) row.online = t;
        if (a) row.async = t;
    }
    for (int t = 1; t <= limit; ++t) {
        const auto s = search_strong_collection(table, t);
        if (!s.found) break;
        row.strong = t;
        const auto h = set_histories(s.collection, t);
        if (!check_strongly_async(table, s.collection, t).holds || !is_subset_closed(h) ||
            !has_extension_property(h, table).holds)
            tally.fail(name + ": strong witness does not re-validate at t=" + std::to_string(t));
        if (!check_asynchronous(table, t).asynchronous)
            tally.fail(name + ": strong but not asynchronous at t=" + std::to_string(t));
    }
    if (g.rows() <= MLSearchLimits{}.max_k && g.cols() <= MLSearchLimits{}.max_n) {
        const auto ml = search_best_mL(table);
        row.ml = ml.t;
        row.ml_m = ml.m;
        row.ml_L = ml.L;
        if (ml.t > 0 && (!check_mL_strong(ml.witness, ml.m, ml.L).holds ||
                         !check_strongly_async(table, ml.witness, derive_t(ml.m, ml.L)).holds))
            tally.fail(name + ": (m,L) witness is not ceil(m/L)-strong");
        if (ml.reaches_2L_plus_1 != (ml.t >= 3)) tally.fail(name + ": 2L+1 flag inconsistent");
    }
    const bool monotone = row.online <= row.batch && row.async <= row.online && row.strong <= row.async &&
                          (row.ml < 0 || row.ml <= row.strong);
    if (!monotone)
        tally.fail(name + ": rows " + std::to_string(row.batch) + "/" + std::to_string(row.online) + "/" +
                   std::to_string(row.async) + "/" + std::to_string(row.strong) + "/" + std::to_string(row.ml));
    ++tally.cases;
    return row;
}

// Every binary systematic code [I_k | M] with the given k and n.
inline void for_each_systematic(int k, int n, const std::function<void(const GFMatrix&)>& f) {
    const int p = n - k;
    const int bits = k * p;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        GFMatrix g(2, k, n);
        for (int i = 0; i < k; ++i) g.set(i, i, 1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < p; ++j)
                if (mask >> (i * p + j) & 1) g.set(i, k + j, 1);
        f(g);
    }
}

// Lemma and theorem consistency for graph codes over every bipartite graph
// with at most `max_points` + `max_blocks` vertices.
struct GraphTally {
    std::size_t graphs = 0;
    Tally lemma;         // edges_intersect vs. set intersection
    Tally iff;           // conditions <=> direct (m,L) counting
    Tally sufficiency;   // conditions => direct counting
    Tally c4free_iff;    // iff restricted to C4-free graphs
    Tally theta;         // theta form agrees with the general form on C4-free graphs
};

inline std::string describe(const BipartiteGraph& g) {
    std::string s = std::to_string(g.points()) + "+" + std::to_string(g.blocks()) + " {";
    for (const auto& [i, b] : g.edges()) s += " " + std::to_string(i + 1) + "-B" + std::to_string(b + 1);
    return s + " }";
}

inline void check_graph(const BipartiteGraph& g, GraphTally& out, int max_param = 4) {
    ++out.graphs;
    const auto& edges = g.edges();
    std::vector<ColumnSet> r;
    for (const auto& [i, b] : edges) r.push_back(edge_recovery_set(g, i, b).columns);
    for (std::size_t x = 0; x < edges.size(); ++x)
        for (std::size_t y = 0; y < edges.size(); ++y) {
            ++out.lemma.cases;
            if (edges_intersect(g, edges[x], edges[y]) != r[x].intersects(r[y])) out.lemma.fail(describe(g));
        }
    const auto services = edge_services(g);
    const bool c4free = is_c4_free(g);
    for (int m = 1; m <= max_param; ++m)
        for (int L = 1; L <= max_param; ++L) {
            const auto cond = check_graph_conditions(g, m, L);
            const bool direct = check_mL_strong(services, m, L).holds;
            const std::string what = describe(g) + " m=" + std::to_string(m) + " L=" + std::to_string(L) +
                                     " conditions=" + (cond.holds ? "hold" : "fail") + " direct=" +
                                     (direct ? "holds" : "fails");
            ++out.iff.cases;
            if (cond.holds != direct) out.iff.fail(what);
            ++out.sufficiency.cases;
            if (cond.holds && !direct) out.sufficiency.fail(what);
            if (c4free) {
                ++out.c4free_iff.cases;
                if (cond.holds != direct) out.c4free_iff.fail(what);
                ++out.theta.cases;
                if (check_c4free_conditions(g, m, L).holds != cond.holds) out.theta.fail(what);
            }
        }
}

inline GraphTally exhaustive_graphs(int max_points, int max_blocks) {
    GraphTally out;
    for (int k = 1; k <= max_points; ++k)
        for (int b = 1; b <= max_blocks; ++b) {
            const int cells = k * b;
            for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
                std::vector<std::pair<int, int>> e;
                for (int c = 0; c < cells; ++c)
                    if (mask >> c & 1) e.emplace_back(c / b, c % b);
                check_graph(BipartiteGraph(k, b, e), out);
            }
        }
    return out;
}

}  // namespace suites
