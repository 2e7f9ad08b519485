#include <catch2/catch.hpp>

#include "twincurve/classgroup.hpp"
#include "twincurve/oracles.hpp"

using namespace twincurve;

TEST_CASE("pinned imaginary class groups") {
    auto g15 = class_group(-15);
    CHECK(g15.h == 2);
    CHECK(g15.elementary_divisors == std::vector<int64_t>{2});
    CHECK(g15.two_rank == 1);

    CHECK(class_group(-3).h == 1);
    CHECK(class_group(-4).h == 1);
    CHECK(class_group(-4).elementary_divisors.empty());
    CHECK(class_group(-8).h == 1);

    auto g23 = class_group(-23);
    CHECK(g23.h == 3);
    CHECK(g23.elementary_divisors == std::vector<int64_t>{3});
    CHECK(g23.two_rank == 0);

    CHECK(class_group(-47).h == 5);
    CHECK(class_group(-163).h == 1);

    auto g56 = class_group(-56); // cyclic of order 4
    CHECK(g56.h == 4);
    CHECK(g56.elementary_divisors == std::vector<int64_t>{4});
    CHECK(g56.two_rank == 1);

    auto g84 = class_group(-84); // Klein four
    CHECK(g84.h == 4);
    CHECK(g84.elementary_divisors == std::vector<int64_t>{2, 2});
    CHECK(g84.two_rank == 2);

    CHECK(class_group(-119).h == 10);

    CHECK_THROWS_AS(class_group(-10), error);  // not fundamental
    CHECK_THROWS_AS(class_group(45), error);
    CHECK_THROWS_AS(class_group(-1000003, ClassGroupBudget{1000, 1000}), error); // over budget
}

TEST_CASE("pinned real class groups") {
    auto g40 = class_group(40);
    CHECK(g40.h == 2);
    CHECK(g40.unit_norm == -1);
    CHECK(g40.narrow_h == 2);

    CHECK(class_group(5).h == 1);
    CHECK(class_group(5).unit_norm == -1);
    CHECK(class_group(8).h == 1);
    CHECK(class_group(12).h == 1);
    CHECK(class_group(12).unit_norm == 1);
    CHECK(class_group(12).narrow_h == 2);

    auto g60 = class_group(60);
    CHECK(g60.h == 2);
    CHECK(g60.narrow_h == 4);
    CHECK(g60.unit_norm == 1);

    CHECK(class_group(229).h == 3);
    CHECK(class_group(65).h == 2);
    CHECK(class_group(241).h == 1);
}

TEST_CASE("form route vs reduced-ideal oracle, imaginary range") {
    for (i128 d = -3; d > -800; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        auto g = class_group(d);
        CHECK(g.h == oracle::imaginary_class_number_by_ideals(d));
        if (d < -4) CHECK(g.h == oracle::dirichlet_class_number(d));
        // genus theory
        CHECK(g.two_rank == (int)factorize(d).num_primes() - 1);
    }
}

TEST_CASE("form route vs reduced-ideal cycle oracle, real range") {
    for (i128 d = 5; d < 300; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        auto g = class_group(d);
        CHECK(g.h == oracle::real_class_number_by_ideal_cycles(d));
        int t = (int)factorize(d).num_primes();
        CHECK((g.two_rank == t - 1 || g.two_rank == t - 2));
    }
}

TEST_CASE("composition: closure, associativity, identity, inverses") {
    using namespace formgroup_detail;
    for (i128 d : {(i128)-120, (i128)-231, (i128)-420, (i128)-479, (i128)60, (i128)229}) {
        auto G = build_group(d, {});
        int n = (int)G.narrow_order();
        for (int i = 0; i < n; ++i) {
            CHECK(G.mul(G.identity, i) == i);
            CHECK(G.mul(i, G.inverse(i)) == G.identity);
            for (int j = i; j < n; ++j) {
                int ij = G.mul(i, j);
                CHECK(ij >= 0);
                CHECK(ij < n);
                CHECK(G.mul(j, i) == ij);
                for (int k = 0; k < n; k += 3)
                    CHECK(G.mul(ij, k) == G.mul(i, G.mul(j, k)));
            }
        }
    }
}

TEST_CASE("S-class groups") {
    // ramified primes over 3 and 5 generate the 2-torsion of Cl(-15)
    auto s15 = s_class_group(-15, 3, 5);
    CHECK(s15.base.h == 2);
    CHECK(s15.s_two_rank == 0);
    // -15 = 1 mod 8: 2 splits; 3 and 5 ramify: 1 + (2 + 1 + 1) = 5
    CHECK(s15.s_set_size == 5);

    // h = 1 forces s_two_rank = 0
    auto s7 = s_class_group(-7, 11, 13);
    CHECK(s7.s_two_rank == 0);
    CHECK(s7.base.h == 1);

    auto s84 = s_class_group(-84, 11, 13);
    CHECK(s84.base.two_rank == 2);
    CHECK(s84.s_two_rank <= 2);

    // odd class number keeps s_two_rank at 0 no matter the primes
    auto s23 = s_class_group(-23, 11, 13);
    CHECK(s23.base.h == 3);
    CHECK(s23.s_two_rank == 0);
}

TEST_CASE("rank bound") {
    auto E35 = validate(1, 3, 5, 1);
    auto rb73 = rank_bound(E35, factorize(73));
    CHECK(rb73.s_data.base.h == 1);
    CHECK(rb73.headline == 14);
    // 73 = 1 mod 8 (2 splits), (73/3) = +1 (splits), (73/5) = -1 (inert):
    // #S_K = 2 + 2 + 2 + 1 = 7, sharp = 2*7 - 2 = 12
    CHECK(rb73.s_data.s_set_size == 7);
    CHECK(rb73.sharp == 12);

    // 241 = 1 mod 8, (241/3) = (241/5) = +1: everything splits, #S_K = 8
    auto rb241 = rank_bound(E35, factorize(241));
    CHECK(rb241.s_data.s_set_size == 8);
    CHECK(rb241.sharp == 14);
    CHECK(rb241.headline == 14);

    // sharp <= headline always (#S_K <= 8)
    for (i128 d : {(i128)7, (i128)17, (i128)29, (i128)37, (i128)161, (i128)209}) {
        auto rb = rank_bound(E35, factorize(d));
        CHECK(rb.sharp <= rb.headline);
        CHECK(rb.s_data.s_two_rank <= rb.s_data.base.two_rank);
    }

    CHECK_THROWS_AS(rank_bound(E35, factorize(1)), error);
    CHECK_THROWS_AS(rank_bound(E35, factorize(-7)), error);
    CHECK_THROWS_AS(rank_bound(E35, factorize(35)), error); // not coprime to pq
}
