#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "locograph/errors.hpp"
#include "locograph/hnf.hpp"
#include "locograph/rng.hpp"
#include "oracles.hpp"

using namespace loco;

namespace {

SublatticeHnf hnf2(int64_t b11, int64_t b12, int64_t b22) {
    return SublatticeHnf::from_rows_unchecked(2, {b11, b12, 0, b22});
}

const SublatticeHnf checkerboard = hnf2(2, 1, 1);

SublatticeHnf random_lattice(int d, int64_t max_index, Xoshiro256ss& rng) {
    const int64_t n = 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(max_index)));
    auto all = enumerate_hnf(d, n);
    return all[rng.below(static_cast<uint64_t>(all.size()))];
}

}  // namespace

TEST_CASE("enumerate_hnf d=1") {
    auto v = enumerate_hnf(1, 5);
    REQUIRE(v.size() == 1);
    CHECK(v[0].at(0, 0) == 5);
}

TEST_CASE("enumerate_hnf d=2 n=2: three lattices in lexicographic order") {
    auto v = enumerate_hnf(2, 2);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == hnf2(1, 0, 2));
    CHECK(v[1] == hnf2(2, 0, 1));
    CHECK(v[2] == hnf2(2, 1, 1));
}

TEST_CASE("enumerate_hnf d=2 totals for n=1..4") {
    int64_t total = 0;
    for (int64_t n = 1; n <= 4; ++n) total += static_cast<int64_t>(enumerate_hnf(2, n).size());
    CHECK(total == 15);
}

TEST_CASE("enumeration count matches the divisor-composition formula") {
    for (int d : {2, 3}) {
        for (int64_t n = 1; n <= 60; ++n) {
            int64_t by_enum = 0;
            enumerate_hnf(d, n, [&](const SublatticeHnf&) { ++by_enum; });
            CHECK(mpz_class(static_cast<long>(by_enum)) == sublattice_count(d, n));
        }
    }
    // d=4 spot checks
    for (int64_t n : {1, 2, 6, 12}) {
        int64_t by_enum = 0;
        enumerate_hnf(4, n, [&](const SublatticeHnf&) { ++by_enum; });
        CHECK(mpz_class(static_cast<long>(by_enum)) == sublattice_count(4, n));
    }
}

TEST_CASE("canonicalization") {
    SUBCASE("identity columns") {
        std::vector<std::vector<int64_t>> cols = {{1, 0}, {0, 1}};
        CHECK(SublatticeHnf::from_columns(2, cols) == SublatticeHnf::identity(2));
    }
    SUBCASE("columns (0,5),(5,0) give 5Z^2") {
        std::vector<std::vector<int64_t>> cols = {{0, 5}, {5, 0}};
        CHECK(SublatticeHnf::from_columns(2, cols) == hnf2(5, 0, 5));
    }
    SUBCASE("swapped and negated generators of the checkerboard") {
        std::vector<std::vector<int64_t>> cols = {{-1, -1}, {-2, 0}};
        CHECK(SublatticeHnf::from_columns(2, cols) == checkerboard);
    }
    SUBCASE("idempotent on every enumerated HNF") {
        for (int64_t n = 1; n <= 30; ++n) {
            for (const auto& L : enumerate_hnf(2, n)) {
                std::vector<std::vector<int64_t>> cols = {L.column(0), L.column(1)};
                CHECK(SublatticeHnf::from_columns(2, cols) == L);
            }
        }
        for (const auto& L : enumerate_hnf(3, 12)) {
            std::vector<std::vector<int64_t>> cols = {L.column(0), L.column(1), L.column(2)};
            CHECK(SublatticeHnf::from_columns(3, cols) == L);
        }
    }
    SUBCASE("singular generators rejected") {
        std::vector<std::vector<int64_t>> cols = {{1, 2}, {2, 4}};
        CHECK_THROWS_AS(SublatticeHnf::from_columns(2, cols), usage_error);
    }
}

TEST_CASE("membership") {
    CHECK(checkerboard.contains(std::vector<int64_t>{0, 0}));
    CHECK(checkerboard.contains(std::vector<int64_t>{1, 1}));
    CHECK_FALSE(checkerboard.contains(std::vector<int64_t>{1, 0}));
    const auto fiveZ = SublatticeHnf::from_rows_unchecked(1, {5});
    CHECK(fiveZ.contains(std::vector<int64_t>{10}));
    CHECK_FALSE(fiveZ.contains(std::vector<int64_t>{7}));
    // membership agrees with coset reduction to zero; reduction is
    // idempotent, in range, and shifts by a lattice vector
    Xoshiro256ss rng(11);
    for (int it = 0; it < 200; ++it) {
        auto L = random_lattice(2, 40, rng);
        std::vector<int64_t> x = {static_cast<int64_t>(rng.below(81)) - 40,
                                  static_cast<int64_t>(rng.below(81)) - 40};
        auto red = L.reduce(x);
        const bool zero = std::all_of(red.begin(), red.end(), [](int64_t v) { return v == 0; });
        CHECK(L.contains(x) == zero);
        CHECK(L.reduce(red) == red);
        for (int i = 0; i < 2; ++i) {
            CHECK(red[i] >= 0);
            CHECK(red[i] < L.diag(i));
        }
        std::vector<int64_t> diff = {x[0] - red[0], x[1] - red[1]};
        CHECK(L.contains(diff));
    }
}

TEST_CASE("signed permutation group laws") {
    for (int d : {1, 2, 3}) {
        auto g = SignedPerm::all(d);
        CHECK(static_cast<int64_t>(g.size()) == SignedPerm::group_order(d));
        // closure + inverse spot checks
        Xoshiro256ss rng(5);
        std::vector<int64_t> v(d);
        for (int i = 0; i < d; ++i) v[i] = static_cast<int64_t>(rng.below(17)) - 8;
        for (int it = 0; it < 50; ++it) {
            const auto& a = g[rng.below(g.size())];
            const auto& b = g[rng.below(g.size())];
            auto ab = a.compose(b);
            CHECK(ab.apply(v) == a.apply(b.apply(v)));
            auto inv = a.inverse();
            CHECK(inv.compose(a).apply(v) == v);
            CHECK(std::find(g.begin(), g.end(), ab) != g.end());
        }
    }
}

TEST_CASE("apply_signed_perm") {
    SUBCASE("negation fixes every lattice") {
        Xoshiro256ss rng(3);
        for (int it = 0; it < 50; ++it) {
            auto L = random_lattice(2, 50, rng);
            CHECK(apply_signed_perm(SignedPerm::negation(2), L) == L);
        }
    }
    SUBCASE("coordinate swap maps diag(1,2) to diag(2,1)") {
        SignedPerm swap({1, 0}, {1, 1});
        CHECK(apply_signed_perm(swap, hnf2(1, 0, 2)) == hnf2(2, 0, 1));
    }
    SUBCASE("sign flip fixes the checkerboard") {
        SignedPerm flip({0, 1}, {-1, 1});
        CHECK(apply_signed_perm(flip, checkerboard) == checkerboard);
    }
    SUBCASE("action law and index preservation") {
        auto g = SignedPerm::all(2);
        Xoshiro256ss rng(7);
        for (int it = 0; it < 100; ++it) {
            auto L = random_lattice(2, 60, rng);
            const auto& a = g[rng.below(g.size())];
            const auto& b = g[rng.below(g.size())];
            CHECK(apply_signed_perm(a.compose(b), L) ==
                  apply_signed_perm(a, apply_signed_perm(b, L)));
            CHECK(apply_signed_perm(a, L).index() == L.index());
        }
    }
}

TEST_CASE("is_invariant") {
    SignedPerm swap({1, 0}, {1, 1});
    CHECK(is_invariant(SignedPerm::identity(2), hnf2(1, 0, 2)));
    CHECK(is_invariant(SignedPerm::negation(2), hnf2(1, 0, 2)));
    CHECK_FALSE(is_invariant(swap, hnf2(1, 0, 2)));
    CHECK(is_invariant(swap, checkerboard));
}

TEST_CASE("orbits") {
    SUBCASE("Z^d is fixed by the whole group") {
        for (int d : {1, 2, 3}) {
            auto oc = orbit_of(SublatticeHnf::identity(d));
            CHECK(oc.orbit_size == 1);
            CHECK(oc.stabilizer_size == SignedPerm::group_order(d));
            CHECK(oc.min_distance == 1);
        }
    }
    SUBCASE("diag(1,2) has orbit {diag(1,2), diag(2,1)}") {
        auto oc = orbit_of(hnf2(2, 0, 1));
        CHECK(oc.rep == hnf2(1, 0, 2));
        CHECK(oc.orbit_size == 2);
        CHECK(oc.stabilizer_size == 4);
    }
    SUBCASE("checkerboard is fully symmetric") {
        auto oc = orbit_of(checkerboard);
        CHECK(oc.orbit_size == 1);
        CHECK(oc.stabilizer_size == 8);
        CHECK(oc.min_distance == 2);
    }
    SUBCASE("orbit sizes partition the per-index enumeration") {
        for (int64_t n = 1; n <= 24; ++n) {
            std::set<SublatticeHnf> seen;
            int64_t total_by_orbits = 0;
            for (const auto& L : enumerate_hnf(2, n)) {
                auto rep = orbit_canonical_rep(L);
                if (seen.insert(rep).second) total_by_orbits += orbit_of(L).orbit_size;
            }
            CHECK(total_by_orbits == static_cast<int64_t>(enumerate_hnf(2, n).size()));
        }
    }
    SUBCASE("orbit_size times stabilizer_size is the group order") {
        Xoshiro256ss rng(23);
        for (int it = 0; it < 60; ++it) {
            auto L = random_lattice(2, 80, rng);
            auto oc = orbit_of(L);
            CHECK(oc.orbit_size * oc.stabilizer_size == SignedPerm::group_order(2));
        }
        for (const auto& L : enumerate_hnf(3, 8)) {
            auto oc = orbit_of(L);
            CHECK(oc.orbit_size * oc.stabilizer_size == SignedPerm::group_order(3));
        }
    }
}

TEST_CASE("min_distance") {
    CHECK(min_distance(SublatticeHnf::identity(3)) == 1);
    CHECK(min_distance(hnf2(4, 0, 4)) == 4);
    CHECK(min_distance(SublatticeHnf::from_rows_unchecked(1, {7})) == 7);
    CHECK(min_distance(checkerboard) == 2);
    SUBCASE("d=2 fast path against shell walk and brute force") {
        for (int64_t n = 1; n <= 120; ++n) {
            for (const auto& L : enumerate_hnf(2, n)) {
                const int64_t fast = min_distance(L);
                CHECK(fast == min_distance_shells(L));
                CHECK(fast == oracle::min_distance_brute_2d(L.at(0, 0), L.at(0, 1), L.at(1, 1)));
            }
        }
    }
    SUBCASE("census witness at index 18") {
        std::vector<std::vector<int64_t>> cols = {{3, 3}, {3, -3}};
        auto L = SublatticeHnf::from_columns(2, cols);
        CHECK(L.index() == 18);
        CHECK(min_distance(L) == 6);
    }
    SUBCASE("invariant under the group action") {
        Xoshiro256ss rng(31);
        auto g2 = SignedPerm::all(2);
        for (int it = 0; it < 80; ++it) {
            auto L = random_lattice(2, 100, rng);
            const auto& sigma = g2[rng.below(g2.size())];
            CHECK(min_distance(apply_signed_perm(sigma, L)) == min_distance(L));
        }
        auto g3 = SignedPerm::all(3);
        for (const auto& L : enumerate_hnf(3, 18)) {
            const auto& sigma = g3[rng.below(g3.size())];
            CHECK(min_distance(apply_signed_perm(sigma, L)) == min_distance(L));
        }
    }
    SUBCASE("predicate matches the full computation") {
        Xoshiro256ss rng(37);
        for (int it = 0; it < 100; ++it) {
            auto L = random_lattice(2, 100, rng);
            const int64_t t = 1 + static_cast<int64_t>(rng.below(9));
            CHECK(min_distance_at_least(L, t) == (min_distance(L) >= t));
        }
        for (const auto& L : enumerate_hnf(3, 16)) {
            for (int64_t t = 1; t <= 6; ++t)
                CHECK(min_distance_at_least(L, t) == (min_distance_shells(L) >= t));
        }
    }
}

TEST_CASE("cumulative sublattice counts trend to the zeta product") {
    // N_2(x) * 2 / (x^2 zeta(2)): monitored trend toward 1
    const double z2 = 1.6449340668482264;
    auto ratio = [&](int64_t x) {
        return sublattice_count_upto(2, x).get_d() * 2.0 / (static_cast<double>(x) * x * z2);
    };
    const double r100 = ratio(100), r600 = ratio(600);
    CHECK(std::abs(r600 - 1.0) < std::abs(r100 - 1.0));
    CHECK(r600 == doctest::Approx(1.0).epsilon(0.05));
}
