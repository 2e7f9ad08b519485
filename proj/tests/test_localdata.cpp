#include <catch2/catch.hpp>

#include "twincurve/localdata.hpp"

using namespace twincurve;

namespace {
const std::vector<int64_t> kTwinPs = {3,   5,   11,  17,  29,  41,  59,  71,  101, 107, 137, 149,
                                      179, 191, 197, 227, 239, 269, 281, 311, 347, 419, 431, 461};
}

TEST_CASE("closed reduction table at the bad primes") {
    auto s = validate(1, 3, 5, 1);
    auto at2 = reduction_data(s, 2);
    CHECK(at2.kodaira.str() == "III");
    CHECK(at2.tamagawa == 2);
    CHECK(at2.conductor_exponent == 5);
    CHECK(at2.disc_valuation == 6);
    CHECK(at2.cls == ReductionClass::additive);

    auto at3 = reduction_data(s, 3);
    CHECK(at3.kodaira == KodairaSymbol::I(2));
    CHECK(at3.tamagawa == 2);
    CHECK(at3.conductor_exponent == 1);
    CHECK(at3.cls == ReductionClass::nonsplit_multiplicative); // (2/3) = -1

    auto s2 = validate(1, 11, 13, 7);
    auto at7 = reduction_data(s2, 7);
    CHECK(at7.kodaira == KodairaSymbol::Istar(0));
    CHECK(at7.tamagawa == 4);
    CHECK(at7.conductor_exponent == 2);
    CHECK(at7.cls == ReductionClass::additive);

    // split vs non-split through the Legendre criteria at p and at q
    for (int64_t p : kTwinPs)
        for (int eps : {1, -1})
            for (i128 d : {(i128)1, (i128)5, (i128)-13}) {
                if (mod_floor(d, p) == 0 || mod_floor(d, p + 2) == 0) continue;
                auto sp = validate(eps, p, p + 2, d);
                auto rp = reduction_data(sp, p);
                CHECK((rp.cls == ReductionClass::split_multiplicative) ==
                      (jacobi_symbol(2 * eps * d, p) == 1));
                auto rq = reduction_data(sp, p + 2);
                CHECK((rq.cls == ReductionClass::split_multiplicative) ==
                      (jacobi_symbol(-2 * eps * d, p + 2) == 1));
            }
}

TEST_CASE("brute-force point counts: pinned values") {
    auto s = validate(1, 11, 13, 1);
    auto c3 = count_points(s, 3);
    CHECK(c3.count == 4);
    CHECK(c3.trace == 0);
    auto c5 = count_points(s, 5);
    CHECK(c5.count == 4);
    CHECK(c5.trace == 2);
    auto c7 = count_points(validate(1, 3, 5, 1), 7);
    CHECK(c7.count == 8);
    CHECK(c7.trace == 0);

    CHECK_THROWS_AS(count_points(s, 11), error);              // bad prime
    CHECK_THROWS_AS(count_points(s, 4), error);               // not prime
    CHECK_THROWS_AS(count_points(s, 100003, 100000), error);  // over budget
}

TEST_CASE("predicted counts: pinned values") {
    CHECK(predicted_count(validate(1, 3, 5, 1), 2) == 3);
    CHECK(predicted_count(validate(-1, 191, 193, 35), 2) == 3);
    CHECK(predicted_count(validate(1, 29, 31, 1), 5) == 8); // p = 4 mod 5, D = 1
    CHECK(predicted_count(validate(1, 11, 13, 17), 17) == 18);
    CHECK_THROWS_AS(predicted_count(validate(1, 3, 5, 1), 11), error);
}

TEST_CASE("predicted counts match brute force across the table range") {
    int pairs = 0;
    for (int64_t p : kTwinPs) {
        if (p >= 500) break;
        ++pairs;
        for (i128 d : {(i128)1, (i128)5, (i128)7, (i128)11, (i128)13, (i128)35}) {
            if (mod_floor(d, p) == 0 || mod_floor(d, p + 2) == 0) continue;
            for (int eps : {1, -1}) {
                auto s = validate(eps, p, p + 2, d);
                std::vector<int64_t> ls = {2, s.p, s.q};
                for (auto [di, e] : s.D.factors) {
                    (void)e;
                    ls.push_back(di);
                }
                for (int64_t l : {3, 5, 7})
                    if (s.p % l != 0 && s.q % l != 0 && s.d_abs() % l != 0) ls.push_back(l);
                for (int64_t l : ls)
                    REQUIRE(predicted_count(s, l) == reduced_point_count(s, l));
            }
        }
    }
    CHECK(pairs >= 20);
}

TEST_CASE("supersingularity criterion") {
    // always supersingular at 3, never at 5
    for (int64_t p : {11, 17, 29, 41, 101}) {
        auto s = validate(1, p, p + 2, 1);
        if (p % 3 != 0) CHECK(is_supersingular(s, 3));
        if (p % 5 != 0 && (p + 2) % 5 != 0) CHECK_FALSE(is_supersingular(s, 5));
    }
    CHECK_FALSE(is_supersingular(validate(1, 11, 13, 1), 7)); // p = 4 mod 7: ordinary
    CHECK(is_supersingular(validate(1, 17, 19, 1), 7));       // p = 3 mod 7: supersingular
    CHECK_THROWS_AS(is_supersingular(validate(1, 3, 5, 1), 5), error); // bad prime
}

TEST_CASE("supersingular iff trace vanishes, 5 <= l <= 200") {
    for (auto [p, d] : std::vector<std::pair<int64_t, int64_t>>{
             {3, 1}, {5, 11}, {11, -7}, {29, 13}, {101, 35}}) {
        auto s = validate(1, p, p + 2, d);
        for (int64_t l = 5; l <= 200; ++l) {
            if (!is_prime(l) || s.divides_conductor(l)) continue;
            CHECK(is_supersingular(s, l) == (count_points(s, l).trace == 0));
        }
        // at 3 the criterion detects trace divisible by 3, which forces 0 here
        if (!s.divides_conductor(3))
            CHECK(is_supersingular(s, 3) == (count_points(s, 3).trace % 3 == 0));
    }
}

TEST_CASE("good odd primes have counts divisible by 4") {
    auto s = validate(-1, 41, 43, 15);
    for (int64_t l = 3; l < 300; l += 2) {
        if (!is_prime(l) || s.divides_conductor(l)) continue;
        CHECK(count_points(s, l).count % 4 == 0);
    }
}

TEST_CASE("anomalous prime scans come back empty") {
    CHECK(anomalous_scan(validate(1, 3, 5, 1), 1000).empty());
    CHECK(anomalous_scan(validate(-1, 5, 7, 1), 1000).empty());
    CHECK(anomalous_scan(validate(1, 11, 13, 17), 1000).empty());
    CHECK_THROWS_AS(anomalous_scan(validate(1, 3, 5, 1), 1 << 20), error); // over budget
}

TEST_CASE("2-isogenous local table") {
    auto i2 = isogenous_local_data(validate(1, 3, 5, 1), 2);
    CHECK(i2.kodaira == KodairaSymbol::Istar(3));
    CHECK(i2.tamagawa == 2); // p = 3 mod 8
    CHECK(i2.conductor_exponent == 5);
    CHECK(i2.disc_valuation == 12);

    CHECK(isogenous_local_data(validate(1, 5, 7, 1), 2).tamagawa == 4);   // eps = 1, p = 5 mod 8
    CHECK(isogenous_local_data(validate(-1, 5, 7, 1), 2).tamagawa == 2);  // eps = -1, p = 5 mod 8
    CHECK(isogenous_local_data(validate(1, 17, 19, 1), 2).tamagawa == 2); // eps = 1, p = 1 mod 8
    CHECK(isogenous_local_data(validate(-1, 17, 19, 1), 2).tamagawa == 4);
    CHECK(isogenous_local_data(validate(1, 5, 7, 1), 7).tamagawa == 1);
    CHECK(isogenous_local_data(validate(-1, 29, 31, 1), 31).kodaira == KodairaSymbol::I(1));

    auto i5 = isogenous_local_data(validate(1, 3, 5, 1), 5);
    CHECK(i5.kodaira == KodairaSymbol::I(1));
    CHECK(i5.tamagawa == 1);

    CHECK_THROWS_AS(isogenous_local_data(validate(1, 3, 5, 7), 2), error);  // D != 1
    CHECK_THROWS_AS(isogenous_local_data(validate(1, 3, 5, 1), 11), error); // good prime
}
