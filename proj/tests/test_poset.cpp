#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "sdepth/poset.hpp"

using namespace sdepth;

TEST_CASE("quotient poset of a single edge") {
    CharacteristicPoset P(minimalize(2, {mask_of({1, 2})}), Side::quotient);
    REQUIRE(P.all_members() == std::vector<Mask>{0, mask_of({1}), mask_of({2})});
    REQUIRE(P.members_of_rank(1) == std::vector<Mask>{mask_of({1}), mask_of({2})});
    REQUIRE(P.member_count() == 3);
}

TEST_CASE("quotient poset of a path ideal counts subsets without a window") {
    CharacteristicPoset P(make_path_ideal(6, 3), Side::quotient);
    REQUIRE(P.member_count() == 44);

    // cross-check membership against a from-scratch window test
    for (Mask s = 0; s <= full_mask(6); ++s)
        REQUIRE(P.contains(s) == !oracle::contains_window(s, 6, 3));

    SECTION("rank slices against brute force") {
        REQUIRE(P.members_of_rank(6).empty());
        auto rank4 = P.members_of_rank(4);
        std::vector<Mask> expect;
        for (Mask s : subsets_of_rank(full_mask(6), 4))
            if (!oracle::contains_window(s, 6, 3)) expect.push_back(s);
        REQUIRE(rank4 == expect);
        REQUIRE(rank4.size() == 6);
    }
}

TEST_CASE("ideal side of the maximal ideal holds every nonempty subset") {
    CharacteristicPoset P(make_path_ideal(4, 1), Side::ideal);
    REQUIRE(P.member_count() == 15);
    REQUIRE_FALSE(P.contains(0));
    REQUIRE(P.contains(mask_of({2})));
    REQUIRE(P.contains(full_mask(4)));
}

TEST_CASE("the two sides partition the subset lattice") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{6, 3}, {8, 2}, {12, 4}}) {
        CharacteristicPoset PI(make_path_ideal(n, m), Side::ideal);
        CharacteristicPoset PQ(make_path_ideal(n, m), Side::quotient);
        for (Mask s = 0; s <= full_mask(n); ++s)
            REQUIRE(PI.contains(s) != PQ.contains(s));
    }
}

TEST_CASE("monotone closure of both sides") {
    std::mt19937 rng(8001);
    std::uniform_int_distribution<Mask> pick(1, full_mask(7));
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Mask> raw;
        for (int i = 0; i < 5; ++i) raw.push_back(pick(rng));
        auto I = minimalize(7, raw);
        CharacteristicPoset PQ(I, Side::quotient);
        CharacteristicPoset PI(I, Side::ideal);
        for (Mask s = 0; s <= full_mask(7); ++s) {
            if (PQ.contains(s))
                for (int v : var_list(s)) REQUIRE(PQ.contains(s & ~var_bit(v)));
            if (PI.contains(s))
                for (int v = 1; v <= 7; ++v) REQUIRE(PI.contains(s | var_bit(v)));
        }
    }
}

TEST_CASE("rank counts of the zero ideal are binomial coefficients") {
    CharacteristicPoset P(zero_ideal(6), Side::quotient);
    const int binom[] = {1, 6, 15, 20, 15, 6, 1};
    std::size_t total = 0;
    for (int d = 0; d <= 6; ++d) {
        REQUIRE(P.members_of_rank(d).size() == static_cast<std::size_t>(binom[d]));
        total += P.members_of_rank(d).size();
    }
    REQUIRE(total == P.member_count());
}

TEST_CASE("upper sets P_{d,sigma}") {
    CharacteristicPoset P(make_path_ideal(6, 3), Side::quotient);
    SECTION("at its own rank, the upper set is the member itself") {
        const Mask s = mask_of({1, 4});
        REQUIRE(P.upper_set_at(s, 2) == std::vector<Mask>{s});
    }
    SECTION("the witness set has an empty upper set one rank up") {
        const Mask tau = mask_of({1, 2, 5, 6});
        REQUIRE(P.contains(tau));
        REQUIRE(P.upper_set_at(tau, 5).empty());
    }
    SECTION("non-members are rejected") {
        REQUIRE_THROWS_AS(P.upper_set_at(mask_of({1, 2, 3}), 4), std::invalid_argument);
    }
    SECTION("single edge: no rank-2 extension inside the quotient") {
        CharacteristicPoset E(minimalize(2, {mask_of({1, 2})}), Side::quotient);
        REQUIRE(E.upper_set_at(mask_of({1}), 2).empty());
    }
}

TEST_CASE("downward-closure classification") {
    REQUIRE(CharacteristicPoset(make_path_ideal(5, 2), Side::quotient).is_downward_closed());
    REQUIRE_FALSE(CharacteristicPoset(make_path_ideal(5, 2), Side::ideal).is_downward_closed());
    REQUIRE(CharacteristicPoset(zero_ideal(4), Side::quotient).is_downward_closed());
    REQUIRE(CharacteristicPoset(zero_ideal(4), Side::ideal).is_downward_closed());

    // verify the structural answer by scan on a few posets
    for (Side side : {Side::ideal, Side::quotient}) {
        CharacteristicPoset P(make_path_ideal(6, 2), side);
        bool closed = true;
        for (Mask s = 0; s <= full_mask(6); ++s)
            if (P.contains(s))
                for (int v : var_list(s))
                    if (!P.contains(s & ~var_bit(v))) closed = false;
        REQUIRE(P.is_downward_closed() == closed);
    }
}

TEST_CASE("poset emptiness and caps") {
    REQUIRE(CharacteristicPoset(zero_ideal(3), Side::ideal).empty());
    REQUIRE(CharacteristicPoset(minimalize(3, {Mask{0}}), Side::quotient).empty());
    REQUIRE_FALSE(CharacteristicPoset(make_path_ideal(3, 2), Side::quotient).empty());
    REQUIRE_THROWS_AS(CharacteristicPoset(zero_ideal(10), Side::quotient, 8), CapExceeded);
}
