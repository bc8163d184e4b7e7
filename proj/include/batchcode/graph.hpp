#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "batchcode/recovery.hpp"
#include "batchcode/strong.hpp"

namespace batchcode {

// Bipartite graph between points [k] and blocks [b], both 0-based. Point i is
// column i of the induced code and block j is column k + j.
class BipartiteGraph {
public:
    // Throws std::invalid_argument on duplicate or out-of-range edges.
    BipartiteGraph(int k, int b, std::vector<std::pair<int, int>> edges);

    int points() const { return k_; }
    int blocks() const { return b_; }
    // Edges (point, block) sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& point_neighbors(int i) const { return gp_.at(i); }
    const std::vector<int>& block_neighbors(int j) const { return gb_.at(j); }
    int point_degree(int i) const { return static_cast<int>(gp_.at(i).size()); }
    int block_degree(int j) const { return static_cast<int>(gb_.at(j).size()); }
    bool has_edge(int i, int j) const;

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.k_ == b.k_ && a.b_ == b.b_ && a.edges_ == b.edges_;
    }

private:
    int k_;
    int b_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> gp_;
    std::vector<std::vector<int>> gb_;
};

struct GraphCodePair {
    BipartiteGraph graph;
    SystematicCode code;  // [I_k | B] over GF(2)
};

// {column of B} + Gamma(B) \ {i}; throws when {i, B} is not an edge.
RecoverySet edge_recovery_set(const BipartiteGraph& g, int i, int block);

// Edge services R(i, B) for every edge.
ServiceCollection edge_services(const BipartiteGraph& g);

// Decides whether R(i,B) and R(i',B') meet from the graph alone: same block,
// or a point other than i and i' adjacent to both blocks.
bool edges_intersect(const BipartiteGraph& g, std::pair<int, int> e1, std::pair<int, int> e2);

// 4-cycles i - B - i'' - B' - i through the edge {i, B}.
int count_4cycles_through_edge(const BipartiteGraph& g, int i, int block);

// Paths B - i'' - B' - i' with i'' not in {i, i'}. Requires {i, B} an edge,
// i' != i and i' not adjacent to B.
int count_3paths_avoiding(const BipartiteGraph& g, int block, int i_prime, int i);

struct GraphVerdict {
    bool holds = true;
    int condition = 0;  // first violated condition (1, 2 or 3; 1 or 2 for the theta form)
    int point = -1;     // i
    int block = -1;     // B
    int other = -1;     // i' for condition 3
    int count = 0;      // degree, 4-cycle count or 3-path count
    bool degenerate_blocks = false;  // some block has degree 1 (repetition column)
};

// Degree >= m at every point; every edge in at most L-1 4-cycles; for every
// edge {i,B} and point i' != i off B at most L 3-paths B ~ i' avoiding i.
GraphVerdict check_graph_conditions(const BipartiteGraph& g, int m, int L);

bool is_c4_free(const BipartiteGraph& g);

// Theta form for C4-free graphs: degree >= m, and no edge {P,B} with L+1
// internally disjoint 3-paths from B to another point avoiding P. Throws
// std::invalid_argument when the graph has a 4-cycle.
GraphVerdict check_c4free_conditions(const BipartiteGraph& g, int m, int L);

// Shortest cycle length, or nullopt for a forest.
std::optional<int> girth(const BipartiteGraph& g);

// Point-line incidence graph of PG(2, q) for prime q <= 7.
BipartiteGraph generate_pg_incidence(int q);

// Duads of {1..6} against synthemes: the incidence graph of GQ(2,2).
BipartiteGraph tutte_coxeter_graph();

GraphCodePair build_graph_code(const BipartiteGraph& g);

// The bipartite graph of a binary systematic matrix [I_k | B].
BipartiteGraph graph_from_code(const SystematicCode& code);

}  // namespace batchcode
