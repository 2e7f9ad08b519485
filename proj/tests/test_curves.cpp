#include <catch2/catch.hpp>

#include <random>

#include "twincurve/curves.hpp"

using namespace twincurve;

TEST_CASE("validate accepts the base example and rejects bad parameters") {
    auto s = validate(1, 3, 5, 1);
    CHECK(s.epsilon == 1);
    CHECK(s.d_value() == 1);
    CHECK(s.num_twist_primes() == 0);

    CHECK_THROWS_AS(validate(1, 3, 5, 9), error);   // not square-free
    CHECK_THROWS_AS(validate(1, 3, 5, 15), error);  // shares factors with pq
    CHECK_THROWS_AS(validate(1, 3, 7, 1), error);   // not a twin pair
    CHECK_THROWS_AS(validate(1, 9, 11, 1), error);  // composite p
    CHECK_THROWS_AS(validate(1, 13, 15, 1), error); // composite q
    CHECK_THROWS_AS(validate(1, 3, 5, 6), error);   // even D
    CHECK_THROWS_AS(validate(1, 3, 5, 0), error);
    CHECK_THROWS_AS(validate(2, 3, 5, 1), error);
    CHECK_THROWS_AS(validate(1, 10007, 10009, 1), error); // beyond supported window
    CHECK_THROWS_AS(validate(1, 3, 5, 1001), error);

    auto t = validate(-1, 11, 13, -35);
    CHECK(t.d_value() == -35);
    CHECK(t.num_twist_primes() == 2);
    CHECK(t.twist_primes() == std::vector<int64_t>{5, 7});
}

TEST_CASE("global invariants") {
    auto s = validate(1, 3, 5, 1);
    auto inv = invariants(s);
    CHECK(inv.conductor == 480);
    CHECK(inv.discriminant == 14400);
    CHECK(inv.j_denominator == 225);
    CHECK(inv.j_numerator == 64 * (i128)19 * 19 * 19);

    CHECK(invariants(validate(1, 3, 5, 7)).conductor == 23520);
    // independent of epsilon and of the sign of D
    CHECK(invariants(validate(-1, 3, 5, 7)).conductor == 23520);
    CHECK(invariants(validate(1, 3, 5, -7)).conductor == 23520);
    CHECK(invariants(validate(1, 3, 5, -7)).discriminant ==
          invariants(validate(1, 3, 5, 7)).discriminant);
}

TEST_CASE("invariants match the generic c4/c6 discriminant on a sweep") {
    for (int64_t p : {3, 5, 11, 17, 29, 41, 59, 71, 101, 137, 197, 281}) {
        for (i128 d : {(i128)1, (i128)-1, (i128)5, (i128)-13, (i128)35, (i128)141}) {
            if (mod_floor(d, p) == 0 || mod_floor(d, p + 2) == 0) continue;
            for (int eps : {1, -1}) {
                auto s = validate(eps, p, p + 2, d);
                auto w = long_weierstrass(s);
                i128 c4 = w.c4(), c6 = w.c6();
                i128 disc = invariants(s).discriminant;
                CHECK(checked_mul(1728, disc) ==
                      checked_sub(checked_mul(c4, checked_mul(c4, c4)), checked_mul(c6, c6)));
                CHECK(disc == w.discriminant());
            }
        }
    }
}

TEST_CASE("minus twist flips epsilon and is an involution") {
    auto s = validate(1, 11, 13, 5);
    auto t = minus_twist(s);
    CHECK(t.epsilon == -1);
    CHECK(t.p == 11);
    CHECK(t.d_value() == 5);
    auto u = minus_twist(t);
    CHECK(u.epsilon == s.epsilon);
    CHECK(minus_twist(minus_twist(validate(-1, 11, 13, 5))).epsilon == -1);
}

TEST_CASE("2-isogenous curve") {
    auto s = validate(1, 3, 5, 1);
    auto w = isogenous_curve(s);
    CHECK(w.a2 == -16);
    CHECK(w.a4 == 4);
    CHECK(w.a1 == 0);
    CHECK(w.a3 == 0);
    CHECK(w.a6 == 0);
    CHECK(w.discriminant() == 61440); // 2^12 * 15

    auto wm = isogenous_curve(validate(-1, 3, 5, 1));
    CHECK(wm.a2 == 16);
    CHECK(wm.a4 == 4);

    CHECK_THROWS_AS(isogenous_curve(validate(1, 3, 5, 7)), error);
}

TEST_CASE("torsion group is Klein four, verified") {
    CHECK(torsion_group(validate(1, 3, 5, 1)).name() == "Z/2 x Z/2");
    CHECK(torsion_group(validate(-1, 3, 5, 1)).name() == "Z/2 x Z/2");
    CHECK(torsion_group(validate(1, 11, 13, 5)).name() == "Z/2 x Z/2");
    CHECK(torsion_group(validate(-1, 71, 73, -21)).name() == "Z/2 x Z/2");
}

TEST_CASE("2-torsion points satisfy the curve equation for random specs") {
    std::mt19937_64 rng(20240811);
    std::vector<int64_t> ps = {3, 5, 11, 17, 29, 41, 59, 71, 101, 107, 137, 149, 179, 191, 197};
    std::vector<int64_t> ds = {1, -1, 3, 5, -5, 7, -11, 13, 15, 21, -33, 35, 105, -141};
    int done = 0;
    while (done < 100) {
        int64_t p = ps[rng() % ps.size()];
        int64_t d = ds[rng() % ds.size()];
        if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
        int eps = rng() % 2 ? 1 : -1;
        auto s = validate(eps, p, p + 2, d);
        auto w = long_weierstrass(s);
        for (i128 x : {(i128)0, (i128)(-eps * p * d), (i128)(-eps * (p + 2) * d)}) {
            i128 fx = checked_mul(checked_add(checked_mul(checked_add(x, w.a2), x), w.a4), x);
            REQUIRE(fx == 0);
        }
        ++done;
    }
}
