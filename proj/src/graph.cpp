#include "batchcode/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <stdexcept>

namespace batchcode {

BipartiteGraph::BipartiteGraph(int k, int b, std::vector<std::pair<int, int>> edges)
    : k_(k), b_(b), edges_(std::move(edges)), gp_(k), gb_(b) {
    if (k < 1 || b < 0) throw std::invalid_argument("graph needs at least one point");
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");
    for (const auto& [i, j] : edges_) {
        if (i < 0 || i >= k || j < 0 || j >= b)
            throw std::invalid_argument("edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") out of range");
        gp_[i].push_back(j);
        gb_[j].push_back(i);
    }
    for (auto& v : gb_) std::sort(v.begin(), v.end());
}

bool BipartiteGraph::has_edge(int i, int j) const {
    if (i < 0 || i >= k_ || j < 0 || j >= b_) return false;
    return std::binary_search(gp_[i].begin(), gp_[i].end(), j);
}

namespace {

void require_edge(const BipartiteGraph& g, int i, int j) {
    if (!g.has_edge(i, j))
        throw std::invalid_argument("no edge {" + std::to_string(i + 1) + ", B" + std::to_string(j + 1) + "}");
}

bool adjacent(const BipartiteGraph& g, int i, int j) { return g.has_edge(i, j); }

}  // namespace

RecoverySet edge_recovery_set(const BipartiteGraph& g, int i, int block) {
    require_edge(g, i, block);
    RecoverySet rs{i, {}, {}};
    rs.columns.insert(g.points() + block);
    for (int p : g.block_neighbors(block))
        if (p != i) rs.columns.insert(p);
    rs.coefficients.assign(rs.columns.size(), 1);
    return rs;
}

ServiceCollection edge_services(const BipartiteGraph& g) {
    std::vector<Service> out;
    for (const auto& [i, j] : g.edges()) out.push_back({i, edge_recovery_set(g, i, j).columns});
    return ServiceCollection(g.points(), std::move(out));
}

bool edges_intersect(const BipartiteGraph& g, std::pair<int, int> e1, std::pair<int, int> e2) {
    const auto [i, b] = e1;
    const auto [ip, bp] = e2;
    require_edge(g, i, b);
    require_edge(g, ip, bp);
    if (b == bp) return true;
    for (int p : g.block_neighbors(b))
        if (p != i && p != ip && adjacent(g, p, bp)) return true;
    return false;
}

int count_4cycles_through_edge(const BipartiteGraph& g, int i, int block) {
    require_edge(g, i, block);
    int n = 0;
    for (int p : g.block_neighbors(block)) {
        if (p == i) continue;
        for (int bp : g.point_neighbors(i))
            if (bp != block && adjacent(g, p, bp)) ++n;
    }
    return n;
}

int count_3paths_avoiding(const BipartiteGraph& g, int block, int i_prime, int i) {
    require_edge(g, i, block);
    if (i_prime == i || i_prime < 0 || i_prime >= g.points() || adjacent(g, i_prime, block))
        throw std::invalid_argument("3-path query needs a point other than i off the block");
    int n = 0;
    for (int p : g.block_neighbors(block)) {
        if (p == i) continue;
        for (int bp : g.point_neighbors(p))
            if (bp != block && adjacent(g, i_prime, bp)) ++n;
    }
    return n;
}

namespace {

bool has_degenerate_block(const BipartiteGraph& g) {
    for (int j = 0; j < g.blocks(); ++j)
        if (g.block_degree(j) == 1) return true;
    return false;
}

std::optional<GraphVerdict> degree_condition(const BipartiteGraph& g, int m) {
    for (int i = 0; i < g.points(); ++i)
        if (g.point_degree(i) < m) {
            GraphVerdict v;
            v.holds = false;
            v.condition = 1;
            v.point = i;
            v.count = g.point_degree(i);
            return v;
        }
    return std::nullopt;
}

}  // namespace

GraphVerdict check_graph_conditions(const BipartiteGraph& g, int m, int L) {
    if (m < 1 || L < 1) throw std::invalid_argument("m and L must be at least 1");
    GraphVerdict v;
    v.degenerate_blocks = has_degenerate_block(g);
    if (auto bad = degree_condition(g, m)) {
        bad->degenerate_blocks = v.degenerate_blocks;
        return *bad;
    }
    for (const auto& [i, b] : g.edges()) {
        const int c = count_4cycles_through_edge(g, i, b);
        if (c > L - 1) {
            v.holds = false;
            v.condition = 2;
            v.point = i;
            v.block = b;
            v.count = c;
            return v;
        }
    }
    for (const auto& [i, b] : g.edges())
        for (int ip = 0; ip < g.points(); ++ip) {
            if (ip == i || adjacent(g, ip, b)) continue;
            const int c = count_3paths_avoiding(g, b, ip, i);
            if (c > L) {
                v.holds = false;
                v.condition = 3;
                v.point = i;
                v.block = b;
                v.other = ip;
                v.count = c;
                return v;
            }
        }
    return v;
}

bool is_c4_free(const BipartiteGraph& g) {
    // Two points sharing two blocks close a 4-cycle.
    for (int i = 0; i < g.points(); ++i)
        for (int ip = i + 1; ip < g.points(); ++ip) {
            int common = 0;
            for (int b : g.point_neighbors(i))
                if (adjacent(g, ip, b) && ++common >= 2) return false;
        }
    return true;
}

GraphVerdict check_c4free_conditions(const BipartiteGraph& g, int m, int L) {
    if (m < 1 || L < 1) throw std::invalid_argument("m and L must be at least 1");
    if (!is_c4_free(g)) throw std::invalid_argument("graph contains a 4-cycle");
    GraphVerdict v;
    v.degenerate_blocks = has_degenerate_block(g);
    if (auto bad = degree_condition(g, m)) {
        bad->degenerate_blocks = v.degenerate_blocks;
        return *bad;
    }
    for (const auto& [i, b] : g.edges()) {
        for (int ip = 0; ip < g.points(); ++ip) {
            if (ip == i) continue;
            // Paths B - p - B' - i' avoiding i, kept as (p, B') pairs.
            std::vector<std::pair<int, int>> paths;
            for (int p : g.block_neighbors(b)) {
                if (p == i || p == ip) continue;
                for (int bp : g.point_neighbors(p))
                    if (bp != b && adjacent(g, ip, bp)) paths.emplace_back(p, bp);
            }
            // Without 4-cycles the paths share no interior vertex, so they form
            // a theta graph between B and i'.
            std::set<int> mids, blocks;
            for (const auto& [p, bp] : paths)
                if (!mids.insert(p).second || !blocks.insert(bp).second)
                    throw std::logic_error("3-paths share an interior vertex in a C4-free graph");
            if (static_cast<int>(paths.size()) >= L + 1) {
                v.holds = false;
                v.condition = 2;
                v.point = i;
                v.block = b;
                v.other = ip;
                v.count = static_cast<int>(paths.size());
                return v;
            }
        }
    }
    return v;
}

std::optional<int> girth(const BipartiteGraph& g) {
    const int k = g.points(), total = g.points() + g.blocks();
    std::vector<std::vector<int>> adj(total);
    for (const auto& [i, b] : g.edges()) {
        adj[i].push_back(k + b);
        adj[k + b].push_back(i);
    }
    int best = -1;
    for (int s = 0; s < total; ++s) {
        std::vector<int> dist(total, -1), parent(total, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    const int len = dist[u] + dist[w] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

BipartiteGraph generate_pg_incidence(int q) {
    if (q < 2 || q > 7 || !is_prime(static_cast<std::uint32_t>(q)))
        throw std::invalid_argument("PG(2,q) generator needs a prime q <= 7");
    // Normalized vectors: first nonzero coordinate equal to 1.
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                const int lead = a ? a : b ? b : c;
                if (lead == 1) pts.push_back({a, b, c});
            }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t l = 0; l < pts.size(); ++l) {
            const int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
            if (dot % q == 0) edges.emplace_back(static_cast<int>(p), static_cast<int>(l));
        }
    const int n = static_cast<int>(pts.size());
    return BipartiteGraph(n, n, std::move(edges));
}

BipartiteGraph tutte_coxeter_graph() {
    std::vector<std::pair<int, int>> duads;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) duads.emplace_back(a, b);
    auto duad_id = [&](int a, int b) {
        return static_cast<int>(std::find(duads.begin(), duads.end(), std::make_pair(std::min(a, b), std::max(a, b))) -
                                duads.begin());
    };
    // Synthemes: partitions of {0..5} into three duads.
    std::vector<std::array<int, 3>> synthemes;
    for (int b = 1; b < 6; ++b) {
        std::vector<int> rest;
        for (int x = 1; x < 6; ++x)
            if (x != b) rest.push_back(x);
        for (int c = 1; c < 4; ++c) {
            std::vector<int> last;
            for (int x = 1; x < 4; ++x)
                if (x != c) last.push_back(rest[x]);
            synthemes.push_back({duad_id(0, b), duad_id(rest[0], rest[c]), duad_id(last[0], last[1])});
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t s = 0; s < synthemes.size(); ++s)
        for (int d : synthemes[s]) edges.emplace_back(d, static_cast<int>(s));
    return BipartiteGraph(15, 15, std::move(edges));
}

GraphCodePair build_graph_code(const BipartiteGraph& g) {
    const int k = g.points();
    GFMatrix m(2, k, k + g.blocks());
    for (int i = 0; i < k; ++i) m.set(i, i, 1);
    for (const auto& [i, b] : g.edges()) m.set(i, k + b, 1);
    return {g, SystematicCode(std::move(m))};
}

BipartiteGraph graph_from_code(const SystematicCode& code) {
    const auto& m = code.matrix();
    if (m.modulus() != 2) throw std::invalid_argument("graph codes are binary");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < code.k(); ++i)
        for (int j = 0; j < code.parity_count(); ++j)
            if (m(i, code.k() + j)) edges.emplace_back(i, j);
    return BipartiteGraph(code.k(), code.parity_count(), std::move(edges));
}

}  // namespace batchcode
