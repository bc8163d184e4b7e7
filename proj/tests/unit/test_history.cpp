#include <doctest.h>

#include <functional>

#include "batchcode/history.hpp"
#include "fixtures.hpp"

using namespace batchcode;

namespace {

ColumnSet S(std::initializer_list<int> c) { return ColumnSet::from_one_based(c); }

HistoryCollection make(HistoryMode mode, int t, const std::vector<History>& members) {
    HistoryCollection h(mode, t);
    for (const auto& m : members) h.insert(m);
    return h;
}

// The prefix-closed collection of the [3,2] code, including ({2},{1}).
HistoryCollection code32_sequences() {
    return make(HistoryMode::Sequence, 2,
                {{}, {S({1})}, {S({2})}, {S({1}), S({2})}, {S({1}), S({2, 3})}, {S({2}), S({1, 3})}, {S({2}), S({1})}});
}

// Explicit adversary game over request sequences and full histories, with no
// state collapsing: used as an oracle for the memoized game.
bool explicit_online(const RecoveryTable& table, int t, History& h) {
    if (static_cast<int>(h.size()) == t) return true;
    for (int i = 0; i < table.k(); ++i) {
        bool served = false;
        for (const auto& rs : table.sets(i)) {
            bool disjoint = true;
            for (const auto& x : h) disjoint = disjoint && !x.intersects(rs.columns);
            if (!disjoint) continue;
            h.push_back(rs.columns);
            served = explicit_online(table, t, h);
            h.pop_back();
            if (served) break;
        }
        if (!served) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("algorithm_models") {
    TEST_CASE("prefix closure") {
        CHECK(is_prefix_closed(code32_sequences()));
        CHECK_FALSE(is_prefix_closed(make(HistoryMode::Sequence, 2, {{}, {S({1}), S({2})}})));
        CHECK(is_prefix_closed(make(HistoryMode::Sequence, 2, {{}})));
        CHECK_THROWS_AS(is_prefix_closed(make(HistoryMode::Set, 2, {{}})), std::invalid_argument);
    }

    TEST_CASE("subset closure") {
        const auto h = make(HistoryMode::Set, 2, {{S({1}), S({2, 3})}});
        CHECK_FALSE(is_subset_closed(h));
        const auto c = closure(h);
        CHECK(is_subset_closed(c));
        CHECK(c.size() == 4);
        CHECK(c.contains({}));
        CHECK(c.contains({S({2, 3})}));
        CHECK(closure(c) == c);
        CHECK_THROWS_AS(is_subset_closed(code32_sequences()), std::invalid_argument);
    }

    TEST_CASE("prefix closure of a single sequence") {
        const auto c = closure(make(HistoryMode::Sequence, 2, {{S({1}), S({2, 3})}}));
        CHECK(c.size() == 3);
        CHECK(c.contains({}));
        CHECK(c.contains({S({1})}));
        CHECK_FALSE(c.contains({S({2, 3})}));
        CHECK(closure(c) == c);
    }

    TEST_CASE("insert rejects overlapping or overlong members") {
        HistoryCollection h(HistoryMode::Set, 2);
        CHECK_THROWS_AS(h.insert({S({1, 2}), S({2})}), std::invalid_argument);
        CHECK_THROWS_AS(h.insert({S({1}), S({2}), S({3})}), std::invalid_argument);
        CHECK_THROWS_AS(HistoryCollection(HistoryMode::Set, 9), std::invalid_argument);
        h.insert({S({2, 3}), S({1})});
        CHECK(h.contains({S({1}), S({2, 3})}));
    }

    TEST_CASE("extension property on the [3,2] code") {
        RecoveryTable table(fixtures::code32());
        CHECK(has_extension_property(code32_sequences(), table).holds);
        // Without ({2},{1}) the member ({2}) cannot serve request 1.
        const auto literal = make(HistoryMode::Sequence, 2,
                                  {{}, {S({1})}, {S({2})}, {S({1}), S({2})}, {S({1}), S({2, 3})}, {S({2}), S({1, 3})}});
        const auto v = has_extension_property(literal, table);
        CHECK_FALSE(v.holds);
        REQUIRE(v.member);
        CHECK(*v.member == History{S({2})});
        CHECK(v.request == 0);

        const auto w = has_extension_property(closure(make(HistoryMode::Set, 2, {{S({1}), S({2, 3})}})), table);
        CHECK_FALSE(w.holds);
        // {} itself fails first (request 2 has only {2} and {1,3} outside the collection).
        REQUIRE(w.member);
        CHECK(has_extension_property(make(HistoryMode::Set, 1, {{}}), table).holds == false);
    }

    TEST_CASE("exchange property examples") {
        RecoveryTable t32(fixtures::code32());
        const auto v = has_exchange_property(make(HistoryMode::Sequence, 2, {{S({1}), S({2, 3})}}), t32);
        CHECK_FALSE(v.holds);
        RecoveryTable id(GFMatrix::identity(2, 3));
        const auto all = make(HistoryMode::Set, 3, {{S({1}), S({2}), S({3})}});
        // Each slot can only be refilled with the set it held; any other request fails.
        CHECK_FALSE(has_exchange_property(all, id).holds);
        CHECK(has_exchange_property(make(HistoryMode::Set, 1, {{S({1})}, {S({2})}, {S({3})}}), id).holds);
        CHECK(check_exchange_extension_equivalence(HistoryCollection(HistoryMode::Set, 2), t32));
        CHECK_THROWS_AS(has_exchange_property(make(HistoryMode::Set, 2, {{S({1})}}), t32), std::invalid_argument);
    }

    TEST_CASE("online verdicts of the worked examples") {
        RecoveryTable s73(fixtures::simplex73());
        const auto v3 = check_online(s73, 3);
        CHECK(v3.online);
        REQUIRE(v3.witness);
        CHECK(is_prefix_closed(*v3.witness));
        CHECK(has_extension_property(*v3.witness, s73).holds);
        CHECK(members_are_minimal(*v3.witness, s73));

        const auto v4 = check_online(s73, 4);
        CHECK_FALSE(v4.online);
        CHECK(v4.adversary_first_request == 0);
        CHECK(v4.fixed_losing_prefixes == std::vector<std::vector<int>>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
        for (const auto& p : v4.fixed_losing_prefixes) CHECK(verify_losing_prefix(s73, p));
        CHECK_FALSE(verify_losing_prefix(s73, {0, 1, 0}));

        RecoveryTable c32(fixtures::code32());
        CHECK(check_online(c32, 2).online);
        CHECK(max_online_t(c32, 3) == 2);
        CHECK(max_online_t(s73, 5) == 3);
    }

    TEST_CASE("adversary lines in the simplex code") {
        RecoveryTable s73(fixtures::simplex73());
        const auto line = adversary_line(s73, 4, {0, 1, 0});
        REQUIRE(line);
        REQUIRE(line->size() == 2);
        CHECK(s73.is_minimal_for(0, (*line)[0]));
        CHECK(s73.is_minimal_for(1, (*line)[1]));
        CHECK_FALSE((*line)[0].intersects((*line)[1]));
        // Answering request 1 with {1} escapes: the adversary cannot win with 2 next.
        CHECK((*line)[0] != S({1}));
        CHECK_FALSE(adversary_line(s73, 3, {0, 1, 0}));
        CHECK(adversary_line(s73, 4, {0}));
        CHECK_THROWS_AS(adversary_line(s73, 2, {0, 1, 0}), std::invalid_argument);
    }

    TEST_CASE("online verdict ignores candidate order") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            const auto g = fixtures::random_matrix(rng, 2, 2 + static_cast<int>(rng() % 2), 5);
            RecoveryTable table(g);
            for (int t = 1; t <= 3; ++t) {
                OnlineOptions rev;
                rev.reverse_candidates = true;
                CHECK(check_online(table, t).online == check_online(table, t, rev).online);
            }
        }
    }

    TEST_CASE("memoized game agrees with explicit histories") {
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 60; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 2);
            const auto g = fixtures::random_matrix(rng, 2, k, k + 3);
            RecoveryTable table(g);
            for (int t = 1; t <= 3; ++t) {
                History h;
                CHECK(check_online(table, t).online == explicit_online(table, t, h));
            }
        }
    }

    TEST_CASE("asynchronous verdicts of the worked examples") {
        RecoveryTable c32(fixtures::code32());
        const auto v = check_asynchronous(c32, 2);
        CHECK_FALSE(v.asynchronous);
        REQUIRE(v.first_pruned);
        CHECK(check_asynchronous(c32, 1).asynchronous);

        RecoveryTable s73(fixtures::simplex73());
        const auto a2 = check_asynchronous(s73, 2);
        CHECK(a2.asynchronous);
        REQUIRE(a2.witness);
        CHECK(is_subset_closed(*a2.witness));
        CHECK(has_extension_property(*a2.witness, s73).holds);
        // Three copies of request 1 end in {1},{2,3},{4,5}-type histories;
        // freeing one set can leave two that block some request.
        CHECK_FALSE(check_asynchronous(s73, 3).asynchronous);
        CHECK(max_async_t(s73, 4) == 2);

        RecoveryTable c38(fixtures::code38());
        CHECK(max_async_t(c38, 5) == 3);
        CHECK(max_online_t(c38, 5) == 4);
    }

    TEST_CASE("identity codes are only 1-online and 1-asynchronous") {
        RecoveryTable id(GFMatrix::identity(2, 3));
        CHECK(check_online(id, 1).online);
        CHECK_FALSE(check_online(id, 2).online);
        CHECK(check_asynchronous(id, 1).asynchronous);
        CHECK_FALSE(check_asynchronous(id, 2).asynchronous);
    }

    TEST_CASE("history limit is enforced") {
        RecoveryTable s73(fixtures::simplex73());
        AsyncOptions o;
        o.max_histories = 10;
        CHECK_THROWS_AS(check_asynchronous(s73, 3, o), std::invalid_argument);
    }
}
