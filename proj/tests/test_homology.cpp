#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "sdepth/homology.hpp"

using namespace sdepth;

namespace {

// rank of H~_i from the vector indexed by face cardinality
int h_tilde(const std::vector<int>& ranks, int dim) {
    const int s = dim + 1;
    if (s < 0 || s >= static_cast<int>(ranks.size())) return 0;
    return ranks[static_cast<std::size_t>(s)];
}

}  // namespace

TEST_CASE("stanley_reisner_complex facets") {
    SECTION("single edge: two vertices") {
        auto C = stanley_reisner_complex(minimalize(2, {mask_of({1, 2})}));
        REQUIRE(C.facets == std::vector<Mask>{mask_of({1}), mask_of({2})});
    }
    SECTION("zero ideal: the full simplex") {
        auto C = stanley_reisner_complex(zero_ideal(4));
        REQUIRE(C.facets == std::vector<Mask>{full_mask(4)});
    }
    SECTION("path ideal facets against a from-scratch maximality scan") {
        auto C = stanley_reisner_complex(make_path_ideal(6, 3));
        std::vector<Mask> expect;
        for (Mask s = 0; s <= full_mask(6); ++s) {
            if (oracle::contains_window(s, 6, 3)) continue;
            bool maximal = true;
            for (int v = 1; v <= 6; ++v)
                if (!has_var(s, v) && !oracle::contains_window(s | var_bit(v), 6, 3))
                    maximal = false;
            if (maximal) expect.push_back(s);
        }
        std::sort(expect.begin(), expect.end(), canonical_less);
        REQUIRE(C.facets == expect);
        for (Mask f : C.facets) REQUIRE_FALSE(oracle::contains_window(f, 6, 3));
    }
    SECTION("unit ideal is rejected") {
        REQUIRE_THROWS_AS(stanley_reisner_complex(minimalize(2, {Mask{0}})),
                          std::invalid_argument);
    }
}

TEST_CASE("reduced homology of standard complexes") {
    SECTION("hollow triangle is a circle") {
        SimplicialComplex C{3, {mask_of({1, 2}), mask_of({2, 3}), mask_of({1, 3})}};
        auto ranks = reduced_homology_ranks(C, 32003);
        REQUIRE(h_tilde(ranks, -1) == 0);
        REQUIRE(h_tilde(ranks, 0) == 0);
        REQUIRE(h_tilde(ranks, 1) == 1);
    }
    SECTION("two isolated vertices") {
        SimplicialComplex C{2, {mask_of({1}), mask_of({2})}};
        auto ranks = reduced_homology_ranks(C, 32003);
        REQUIRE(h_tilde(ranks, -1) == 0);
        REQUIRE(h_tilde(ranks, 0) == 1);
    }
    SECTION("full simplex is acyclic") {
        SimplicialComplex C{3, {full_mask(3)}};
        for (int r : reduced_homology_ranks(C, 32003)) REQUIRE(r == 0);
    }
    SECTION("the empty-face complex carries H~_{-1}") {
        SimplicialComplex C{2, {Mask{0}}};
        auto ranks = reduced_homology_ranks(C, 101);
        REQUIRE(h_tilde(ranks, -1) == 1);
    }
    SECTION("non-prime characteristic is rejected") {
        SimplicialComplex C{2, {mask_of({1})}};
        REQUIRE_THROWS_AS(reduced_homology_ranks(C, 4), std::invalid_argument);
        REQUIRE_THROWS_AS(reduced_homology_ranks(C, 1), std::invalid_argument);
        REQUIRE_NOTHROW(reduced_homology_ranks(C, 2));
    }
}

TEST_CASE("depth via Betti numbers (worked examples)") {
    REQUIRE(depth_quotient(make_path_ideal(6, 3)).depth == 4);
    REQUIRE(depth_quotient(make_path_ideal(4, 4)).depth == 3);
    REQUIRE(depth_quotient(make_path_ideal(5, 5)).depth == 4);
    REQUIRE(depth_quotient(minimalize(6, {mask_of({3}), mask_of({4, 5, 6})})).depth == 4);
}

TEST_CASE("projective dimension examples") {
    REQUIRE(depth_quotient(make_path_ideal(6, 3)).pd == 2);
    REQUIRE(pd_quotient(make_path_ideal(7, 3)) == 3);
    for (int n = 2; n <= 5; ++n)
        REQUIRE(pd_quotient(make_path_ideal(n, 1)) == n);
}

TEST_CASE("Betti table of a single edge") {
    auto r = depth_quotient(minimalize(2, {mask_of({1, 2})}));
    REQUIRE(r.pd == 1);
    REQUIRE(r.depth == 1);
    REQUIRE(r.nonzero == std::vector<BettiEntry>{{0, 0, 1}, {1, mask_of({1, 2}), 1}});
}

TEST_CASE("depth conventions and errors") {
    auto zero = depth_quotient(zero_ideal(5));
    REQUIRE(zero.depth == 5);
    REQUIRE(zero.pd == 0);
    REQUIRE_THROWS_AS(depth_quotient(minimalize(3, {Mask{0}})), std::invalid_argument);
    DepthOptions small_cap;
    small_cap.cap = 6;
    REQUIRE_THROWS_AS(depth_quotient(make_path_ideal(7, 2), small_cap), CapExceeded);
    DepthOptions bad_prime;
    bad_prime.prime = 9;
    REQUIRE_THROWS_AS(depth_quotient(make_path_ideal(4, 2), bad_prime),
                      std::invalid_argument);
}

TEST_CASE("depth + pd = n") {
    std::mt19937 rng(10001);
    std::uniform_int_distribution<Mask> pick(1, full_mask(7));
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Mask> raw;
        for (int i = 0; i < 4; ++i) raw.push_back(pick(rng));
        auto I = minimalize(7, raw);
        if (I.is_unit()) continue;
        auto r = depth_quotient(I);
        REQUIRE(r.depth + r.pd == 7);
    }
}

TEST_CASE("two-prime rank agreement on sample ideals") {
    DepthOptions opts;
    opts.check_prime = 101;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{6, 3}, {8, 2}, {9, 4}, {7, 1}}) {
        auto r = depth_quotient(make_path_ideal(n, m), opts);
        REQUIRE_FALSE(r.torsion_suspected);
    }
}

TEST_CASE("an unused variable raises depth by one") {
    std::mt19937 rng(10002);
    std::uniform_int_distribution<Mask> pick(1, full_mask(6));
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Mask> raw;
        for (int i = 0; i < 4; ++i) raw.push_back(pick(rng));
        auto I = minimalize(6, raw);
        if (I.is_unit()) continue;
        SquarefreeIdeal extended{7, I.gens};
        REQUIRE(depth_quotient(extended).depth == depth_quotient(I).depth + 1);
    }
}

TEST_CASE("restriction to the full vertex set is the identity") {
    auto I = make_path_ideal(6, 2);
    auto C = stanley_reisner_complex(I);
    // the full-support restriction has the same homology as the complex itself
    auto direct = reduced_homology_ranks(C, 32003);
    std::vector<Mask> faces;
    for (Mask s = 0; s <= full_mask(6); ++s)
        if (C.has_face(s)) faces.push_back(s);
    REQUIRE(detail::homology_ranks_of_faces(faces, 32003) == direct);
}
