#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "batchcode/aad.hpp"
#include "batchcode/simulate.hpp"
#include "fixtures.hpp"
#include "suites.hpp"

using namespace batchcode;

namespace {

// Size of a largest independent column subset, by brute force.
int brute_rank(const GFMatrix& g) {
    int best = 0;
    const int n = g.cols();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size <= best) continue;
        std::vector<GFVector> cols;
        bool independent = true;
        for (int c = 0; c < n && independent; ++c)
            if (mask >> c & 1) {
                if (g.column(c).is_zero() || span_contains(cols, g.column(c))) independent = false;
                cols.push_back(g.column(c));
            }
        if (independent) best = size;
    }
    return best;
}

void report(const suites::Tally& t) {
    INFO("first violation: ", t.first);
    CHECK(t.violations == 0);
    CHECK(t.cases > 0);
}

}  // namespace

TEST_SUITE("properties") {
    TEST_CASE("rank equals a largest independent column subset") {
        std::mt19937_64 rng(29);
        for (std::uint32_t q : {2u, 3u, 5u})
            for (int trial = 0; trial < 60; ++trial) {
                const auto g = fixtures::random_matrix(rng, q, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 7));
                CHECK(rank(g) == brute_rank(g));
            }
    }

    TEST_CASE("solve_in_span answers exactly when span_contains does") {
        std::mt19937_64 rng(31);
        for (std::uint32_t q : {2u, 3u, 7u})
            for (int trial = 0; trial < 200; ++trial) {
                const auto g = fixtures::random_matrix(rng, q, 3, 1 + static_cast<int>(rng() % 4));
                const auto cols = g.columns();
                std::vector<std::uint32_t> tv(3);
                for (auto& x : tv) x = static_cast<std::uint32_t>(rng() % q);
                const GFVector target(q, tv);
                const auto sol = solve_in_span(cols, target);
                CHECK(sol.has_value() == span_contains(cols, target));
                if (!sol) continue;
                std::vector<std::uint32_t> acc(3, 0);
                for (std::size_t c = 0; c < cols.size(); ++c)
                    for (std::size_t r = 0; r < 3; ++r) acc[r] = static_cast<std::uint32_t>((acc[r] + std::uint64_t{(*sol)[c]} * cols[c][r]) % q);
                CHECK(acc == tv);
            }
    }

    TEST_CASE("minimal sets are independent, minimal and at most rank in size") {
        std::mt19937_64 rng(37);
        for (int trial = 0; trial < 80; ++trial) {
            const std::uint32_t q = trial % 2 ? 3 : 2;
            const auto g = fixtures::random_matrix(rng, q, 1 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 6));
            const int rk = rank(g);
            for (int i = 0; i < g.rows(); ++i)
                for (const auto& rs : enumerate_minimal(g, i)) {
                    CHECK(is_recovery_set(g, i, rs.columns));
                    CHECK(is_minimal(g, i, rs.columns));
                    CHECK(rs.size() <= rk);
                    CHECK(rank(GFMatrix(q, [&] {
                              std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(g.rows()));
                              for (int c : rs.columns.elements())
                                  for (int r = 0; r < g.rows(); ++r) rows[static_cast<std::size_t>(r)].push_back(g(r, c));
                              return rows;
                          }())) == rs.size());
                }
        }
    }

    TEST_CASE("simple sets of binary systematic codes match the parity column") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 60; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 3);
            const int p = 1 + static_cast<int>(rng() % 4);
            auto g = GFMatrix::identity(2, k).concat(fixtures::random_matrix(rng, 2, k, p));
            const SystematicCode code(g);
            for (int i = 0; i < k; ++i)
                for (const auto& rs : enumerate_minimal(g, i)) {
                    if (!is_simple(code, rs)) continue;
                    int parity = -1;
                    ColumnSet info;
                    for (int c : rs.columns.elements()) (c >= k ? parity = c : (info.insert(c), 0));
                    info.insert(i);
                    for (int r = 0; r < k; ++r) CHECK((g(r, parity) == 1) == info.contains(r));
                }
        }
    }

    TEST_CASE("batch property is monotone in t and order independent") {
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 40; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 2);
            const auto g = suites::random_full_rank(rng, k, k + 2 + static_cast<int>(rng() % 4));
            RecoveryTable table(g);
            bool prev = true;
            for (int t = 1; t <= 5; ++t) {
                const bool h = check_batch(table, t).holds;
                CHECK((!h || prev));
                prev = h;
            }
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<int> b(3);
                for (auto& x : b) x = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
                const bool base = serve_batch(table, RequestBatch{b}).has_value();
                std::sort(b.begin(), b.end());
                do {
                    const auto a = serve_batch(table, RequestBatch{b});
                    CHECK(a.has_value() == base);
                    if (a) CHECK(validate_assignment(g, RequestBatch{b}, *a));
                } while (std::next_permutation(b.begin(), b.end()));
            }
        }
    }

    TEST_CASE("exchange and extension agree on sampled complete collections") {
        report(suites::exchange_extension_samples(60, 101));
    }

    TEST_CASE("sequence exchange implies extension of the prefix closure") {
        report(suites::sequence_exchange_samples(60, 103));
    }

    TEST_CASE("strongly online and strongly asynchronous agree") { report(suites::strong_equivalence_samples(60, 107)); }

    TEST_CASE("hierarchy implications on small systematic codes") {
        suites::Tally tally;
        for (int k = 1; k <= 3; ++k)
            for (int n = k + 1; n <= 6; ++n) suites::for_each_systematic(k, n, [&](const GFMatrix& g) { suites::hierarchy_check(g, tally); });
        for (const auto& g : {fixtures::simplex73(), fixtures::code32(), fixtures::code38(), GFMatrix::identity(2, 3)})
            suites::hierarchy_check(g, tally);
        CHECK(tally.cases == 62 + 340 + 584 + 4);
        report(tally);
    }

    TEST_CASE("worked examples give the expected hierarchy rows") {
        suites::Tally tally;
        const auto s = suites::hierarchy_check(fixtures::simplex73(), tally);
        CHECK(s.batch == 4);
        CHECK(s.online == 3);
        CHECK(s.async == 2);
        CHECK(s.strong == 2);
        CHECK(s.ml == 2);
        const auto c = suites::hierarchy_check(fixtures::code38(), tally);
        CHECK(c.batch == 4);
        CHECK(c.online == 4);
        CHECK(c.async == 3);
        CHECK(c.strong == 3);
        CHECK(c.ml == 2);
        const auto p = suites::hierarchy_check(fixtures::code32(), tally);
        CHECK(p.batch == 2);
        CHECK(p.online == 2);
        CHECK(p.async == 1);
        report(tally);
    }

    TEST_CASE("exclusion is symmetric in the intersection relation") {
        const auto s = fixtures::code38_collection();
        for (const auto& a : s.services())
            for (const auto& b : s.services()) CHECK(a.columns.intersects(b.columns) == b.columns.intersects(a.columns));
        // Summed over services of i, exclusions of j equal exclusions of i summed over services of j.
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int ij = 0, ji = 0;
                for (const auto& x : s.services()) {
                    if (x.request == i) ij += exclusion_count(s, x, j);
                    if (x.request == j) ji += exclusion_count(s, x, i);
                }
                CHECK(ij == ji);
            }
    }

    TEST_CASE("AAD families: AAD implies AAD*, and the coset code is (m,L)-strong") {
        std::vector<SubspaceFamily> families;
        for (int n = 2; n <= 4; ++n) {
            const auto lines = all_binary_lines(n);
            families.push_back(lines);
            std::mt19937_64 rng(static_cast<std::uint64_t>(n));
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<Subspace> pick;
                for (const auto& l : lines.members())
                    if (rng() % 2) pick.push_back(l);
                if (pick.empty()) pick.push_back(lines[0]);
                families.emplace_back(2, n, pick);
            }
        }
        families.emplace_back(3, 2, std::vector<Subspace>{Subspace(3, 2, {GFVector(3, {1, 0})}), Subspace(3, 2, {GFVector(3, {0, 1})}),
                                                          Subspace(3, 2, {GFVector(3, {1, 1})})});
        for (const auto& f : families) {
            for (int L = 1; L <= f.size(); ++L)
                if (check_aad(f, L).holds) CHECK(check_aad_star(f, L).holds);
            const int L = min_L_star(f);
            CHECK(check_aad_star(f, L).holds);
            const auto c = build_coset_code(f);
            CHECK(c.m == f.size());
            CHECK(check_mL_strong(c.services, c.m, L).holds);
            for (int col = 0; col < c.parity; ++col) {
                int ones = 0;
                for (int r = 0; r < c.k; ++r) ones += c.matrix(r, c.k + col) == 1;
                CHECK(ones == static_cast<int>(c.cosets[static_cast<std::size_t>(col)].points.size()));
                CHECK(ones == point_count(f.modulus(), f[c.cosets[static_cast<std::size_t>(col)].member].dim()));
            }
            for (const auto& s : c.services.services()) {
                std::vector<std::uint32_t> sum(static_cast<std::size_t>(c.k), 0);
                for (int col : s.columns.elements())
                    for (int r = 0; r < c.k; ++r) sum[static_cast<std::size_t>(r)] ^= c.matrix(r, col);
                CHECK(GFVector(2, sum) == GFVector::unit(2, static_cast<std::size_t>(c.k), static_cast<std::size_t>(s.request)));
            }
        }
    }

    TEST_CASE("graph lemma and corollary on small graphs and fixtures") {
        auto t = suites::exhaustive_graphs(3, 3);
        for (const auto& g : {generate_pg_incidence(2), generate_pg_incidence(3), tutte_coxeter_graph()})
            suites::check_graph(g, t);
        report(t.lemma);
        report(t.sufficiency);
        report(t.c4free_iff);
        report(t.theta);
        for (int q : {2, 3, 5, 7}) {
            const auto g = generate_pg_incidence(q);
            CHECK(is_c4_free(g));
            for (int j = 0; j < g.blocks(); ++j) CHECK(g.block_degree(j) == q + 1);
        }
    }

    TEST_CASE("graph conditions are not necessary when 4-cycles exist") {
        const auto t = suites::exhaustive_graphs(3, 2);
        CHECK(t.iff.violations > 0);
        CHECK(t.sufficiency.violations == 0);
    }

    TEST_CASE("adversarial search agrees with the online decision") {
        std::mt19937_64 rng(47);
        for (int trial = 0; trial < 25; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 2);
            const auto g = suites::random_full_rank(rng, k, k + 2 + static_cast<int>(rng() % (6 - k + 1)));
            RecoveryTable table(g);
            for (int t = 1; t <= 3; ++t) {
                const bool online = check_online(table, t).online;
                bool some_survives = false;
                for (const auto& name : policy_names())
                    some_survives = some_survives || !adversarial_search(table, policy_by_name(name, table, t), t);
                CHECK(some_survives == online);
            }
        }
    }

    TEST_CASE("asynchronous simulation respects capacity and disjointness") {
        std::mt19937_64 rng(53);
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = suites::random_full_rank(rng, 3, 6 + static_cast<int>(rng() % 3));
            RecoveryTable table(g);
            for (const auto& name : policy_names()) {
                const int t = 1 + static_cast<int>(rng() % 3);
                const auto tr = simulate_random(table, policy_by_name(name, table, t), t, 300, rng());
                std::vector<Service> active;
                for (const auto& e : tr.entries) {
                    if (e.outcome == Outcome::Served) {
                        for (const auto& a : active) CHECK_FALSE(a.columns.intersects(e.chosen));
                        CHECK(table.is_minimal_for(e.event.request, e.chosen));
                        active.push_back({e.event.request, e.chosen});
                    } else if (e.outcome == Outcome::Completed) {
                        active.erase(std::find(active.begin(), active.end(), Service{e.event.request, e.event.columns}));
                    }
                    CHECK(static_cast<int>(active.size()) <= t);
                }
            }
        }
    }
}
