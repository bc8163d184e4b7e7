#include <doctest.h>

#include "batchcode/graph.hpp"
#include "batchcode/io.hpp"
#include "fixtures.hpp"

using namespace batchcode;

namespace {

BipartiteGraph heawood() { return generate_pg_incidence(2); }

BipartiteGraph complete(int k, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, j);
    return BipartiteGraph(k, b, e);
}

}  // namespace

TEST_SUITE("graph_codes") {
    TEST_CASE("graph validation") {
        CHECK_THROWS_AS(BipartiteGraph(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
        CHECK_THROWS_AS(BipartiteGraph(2, 2, {{2, 0}}), std::invalid_argument);
        const BipartiteGraph g(2, 1, {{1, 0}, {0, 0}});
        CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});
        CHECK(g.has_edge(1, 0));
    }

    TEST_CASE("edge recovery sets recover their point") {
        const auto pair = build_graph_code(heawood());
        const auto services = edge_services(pair.graph);
        for (const auto& s : services.services()) {
            CHECK(is_minimal(pair.code.matrix(), s.request, s.columns));
            CHECK(is_simple(pair.code, make_recovery_set(pair.code.matrix(), s.request, s.columns)));
        }
    }

    TEST_CASE("Heawood graph") {
        const auto g = heawood();
        CHECK(g.points() == 7);
        CHECK(g.blocks() == 7);
        CHECK(g.edges().size() == 21);
        CHECK(girth(g) == 6);
        CHECK(is_c4_free(g));
        CHECK(check_graph_conditions(g, 3, 2).holds);
        CHECK(check_c4free_conditions(g, 3, 2).holds);
        CHECK_FALSE(check_graph_conditions(g, 3, 1).holds);
        CHECK_FALSE(check_c4free_conditions(g, 3, 1).holds);
        CHECK(check_mL_strong(edge_services(g), 3, 2).holds);
        CHECK_FALSE(check_mL_strong(edge_services(g), 3, 1).holds);
        const auto pair = build_graph_code(g);
        CHECK(pair.code.n() == 14);
        CHECK(pair.code.k() == 7);
    }

    TEST_CASE("Tutte-Coxeter graph") {
        const auto g = tutte_coxeter_graph();
        CHECK(g.points() == 15);
        CHECK(g.blocks() == 15);
        CHECK(g.edges().size() == 45);
        CHECK(girth(g) == 8);
        CHECK(check_graph_conditions(g, 3, 1).holds);
        CHECK(check_c4free_conditions(g, 3, 1).holds);
        CHECK(check_mL_strong(edge_services(g), 3, 1).holds);
        CHECK_FALSE(check_graph_conditions(g, 4, 1).holds);
    }

    TEST_CASE("projective planes") {
        for (int q : {2, 3, 5, 7}) {
            const auto g = generate_pg_incidence(q);
            CHECK(g.points() == q * q + q + 1);
            CHECK(girth(g) == 6);
            for (int i = 0; i < g.points(); ++i) CHECK(g.point_degree(i) == q + 1);
        }
        CHECK_THROWS_AS(generate_pg_incidence(4), std::invalid_argument);
        CHECK_THROWS_AS(generate_pg_incidence(11), std::invalid_argument);
    }

    TEST_CASE("4-cycles and 3-paths") {
        const auto k33 = complete(3, 3);
        CHECK(count_4cycles_through_edge(k33, 0, 0) == 4);
        CHECK_FALSE(is_c4_free(k33));
        CHECK(girth(k33) == 4);
        CHECK_THROWS_AS(check_c4free_conditions(k33, 1, 1), std::invalid_argument);
        const BipartiteGraph path(2, 1, {{0, 0}, {1, 0}});
        CHECK_FALSE(girth(path).has_value());
        const auto g = heawood();
        // In a projective plane two points share exactly one line.
        const auto [i, b] = g.edges().front();
        for (int ip = 0; ip < g.points(); ++ip)
            if (ip != i && !g.has_edge(ip, b)) CHECK(count_3paths_avoiding(g, b, ip, i) == 2);
    }

    TEST_CASE("edges_intersect matches set intersection") {
        for (const auto& g : {heawood(), complete(3, 2), complete(2, 3), tutte_coxeter_graph()})
            for (const auto& e1 : g.edges())
                for (const auto& e2 : g.edges()) {
                    const auto r1 = edge_recovery_set(g, e1.first, e1.second).columns;
                    const auto r2 = edge_recovery_set(g, e2.first, e2.second).columns;
                    CHECK(edges_intersect(g, e1, e2) == r1.intersects(r2));
                }
    }

    TEST_CASE("K_{3,2}: conditions fail while direct counting holds") {
        const auto g = complete(3, 2);
        const auto v = check_graph_conditions(g, 2, 2);
        CHECK_FALSE(v.holds);
        CHECK(v.condition == 2);
        CHECK(check_mL_strong(edge_services(g), 2, 2).holds);
    }

    TEST_CASE("graph and code round trip") {
        const auto g = heawood();
        const auto pair = build_graph_code(g);
        CHECK(graph_from_code(pair.code) == g);
    }
}
