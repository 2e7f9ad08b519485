#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/curves.hpp"
#include "twincurve/error.hpp"

namespace twincurve {

// ---------------------------------------------------------------------------
// Per-prime reduction data for the family, from the closed tables, plus the
// brute-force F_l machinery that keeps the tables honest.
// ---------------------------------------------------------------------------

enum class ReductionClass {
    good_ordinary,
    good_supersingular,
    split_multiplicative,
    nonsplit_multiplicative,
    additive,
};

inline const char* reduction_class_name(ReductionClass c) {
    switch (c) {
        case ReductionClass::good_ordinary: return "good-ordinary";
        case ReductionClass::good_supersingular: return "good-supersingular";
        case ReductionClass::split_multiplicative: return "split-multiplicative";
        case ReductionClass::nonsplit_multiplicative: return "nonsplit-multiplicative";
        case ReductionClass::additive: return "additive";
    }
    return "?";
}

inline bool is_good(ReductionClass c) {
    return c == ReductionClass::good_ordinary || c == ReductionClass::good_supersingular;
}

struct KodairaSymbol {
    enum class Kind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar } kind = Kind::I;
    int m = 0; // index for the I / I* families

    static KodairaSymbol I(int m) { return {Kind::I, m}; }
    static KodairaSymbol Istar(int m) { return {Kind::Istar, m}; }

    bool operator==(const KodairaSymbol&) const = default;

    std::string str() const {
        switch (kind) {
            case Kind::I: return "I" + std::to_string(m);
            case Kind::Istar: return "I" + std::to_string(m) + "*";
            case Kind::II: return "II";
            case Kind::III: return "III";
            case Kind::IV: return "IV";
            case Kind::IVstar: return "IV*";
            case Kind::IIIstar: return "III*";
            case Kind::IIstar: return "II*";
        }
        return "?";
    }
};

struct LocalReductionData {
    int64_t l = 0;
    ReductionClass cls = ReductionClass::good_ordinary;
    KodairaSymbol kodaira;
    int64_t tamagawa = 1;       // c_l
    int conductor_exponent = 0; // f_l
    int disc_valuation = 0;     // ord_l of the minimal discriminant
};

struct PointCount {
    int64_t l = 0;
    int64_t count = 0; // number of points of the reduction over F_l, infinity included
    int64_t trace = 0; // a_l = l + 1 - count
};

inline constexpr int64_t kDefaultPointBudget = 100000;

// ---------------------------------------------------------------------------
// Counting over F_l.
// ---------------------------------------------------------------------------

// Number of solutions of y^2 = x (x + epD) (x + eqD) over F_l, plus 1 for
// infinity.  Valid at any prime, good or bad: at a bad prime this counts the
// (singular) reduced curve, singular point included, which is the convention
// the closed count tables use.
inline int64_t reduced_point_count(const CurveSpec& s, int64_t l, int64_t budget = kDefaultPointBudget) {
    require(l <= budget, errc::range, "prime exceeds the point-count budget");
    if (l == 2) {
        int64_t a = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.p), s.d_value()), 2);
        int64_t b = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.q), s.d_value()), 2);
        int64_t n = 1;
        for (int64_t x = 0; x < 2; ++x)
            for (int64_t y = 0; y < 2; ++y)
                if ((y * y - x * (x + a) * (x + b)) % 2 == 0) ++n;
        return n;
    }
    // quadratic-character table: chi[v] = 1 residue, -1 non-residue, 0 zero
    std::vector<int8_t> chi(l, -1);
    chi[0] = 0;
    for (int64_t y = 1; y <= (l - 1) / 2; ++y) chi[y * y % l] = 1;
    int64_t a = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.p), s.d_value()), l);
    int64_t b = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.q), s.d_value()), l);
    int64_t sum = 0;
    for (int64_t x = 0; x < l; ++x) {
        int64_t fx = x * ((x + a) % l) % l * ((x + b) % l) % l;
        sum += chi[fx];
    }
    return l + 1 + sum;
}



inline PointCount count_points(const CurveSpec& s, int64_t l, int64_t budget = kDefaultPointBudget) {
    require(l > 2 && is_prime(l), errc::domain, "count_points needs an odd prime");
    require(!s.divides_conductor(l), errc::domain, "count_points needs a good prime");
    int64_t n = reduced_point_count(s, l, budget);
    PointCount pc{l, n, l + 1 - n};
    require(std::abs(pc.trace) <= 2 * isqrt64(l) + 1, errc::internal, "Hasse bound violated");
    require(n % 4 == 0, errc::internal, "full 2-torsion must divide a good-prime count");
    return pc;
}

// ---------------------------------------------------------------------------
// Supersingularity via the Deuring-style binomial sum: good l is
// supersingular iff sum_m binom((l-1)/2, m)^2 p^m q^((l-1)/2-m) = 0 (mod l).
// ---------------------------------------------------------------------------

inline bool is_supersingular(const CurveSpec& s, int64_t l) {
    require(l > 2 && is_prime(l), errc::domain, "supersingularity needs an odd prime");
    require(!s.divides_conductor(l), errc::domain, "supersingularity needs a good prime");
    int64_t h = (l - 1) / 2;
    int64_t pm = mod_floor(s.p, l), qm = mod_floor(s.q, l);
    // powers q^(h-m) descending; binomials built by the ratio recurrence
    int64_t qpow = 1;
    for (int64_t i = 0; i < h; ++i) qpow = qpow * qm % l;
    int64_t qinv = detail::powmod_u64((uint64_t)qm, (uint64_t)(l - 2), (uint64_t)l);
    int64_t binom = 1, ppow = 1, sum = 0;
    for (int64_t m = 0; m <= h; ++m) {
        sum = (sum + (i128)binom * binom % l * ppow % l * qpow) % l;
        ppow = ppow * pm % l;
        qpow = (int64_t)((i128)qpow * qinv % l);
        int64_t num = mod_floor(h - m, l), den = mod_floor(m + 1, l);
        binom = (int64_t)((i128)binom * num % l *
                          detail::powmod_u64((uint64_t)den, (uint64_t)(l - 2), (uint64_t)l) % l);
    }
    return sum == 0;
}

// ---------------------------------------------------------------------------
// Closed tables.
// ---------------------------------------------------------------------------

inline LocalReductionData reduction_data(const CurveSpec& s, int64_t l,
                                         int64_t budget = kDefaultPointBudget) {
    require(is_prime(l), errc::domain, "reduction_data needs a prime");
    i128 d = s.d_value();
    if (l == 2)
        return {2, ReductionClass::additive, KodairaSymbol{KodairaSymbol::Kind::III, 0}, 2, 5, 6};
    if (l == s.p) {
        bool split = jacobi_symbol(checked_mul(2 * s.epsilon, d), s.p) == 1;
        return {l, split ? ReductionClass::split_multiplicative : ReductionClass::nonsplit_multiplicative,
                KodairaSymbol::I(2), 2, 1, 2};
    }
    if (l == s.q) {
        bool split = jacobi_symbol(checked_mul(-2 * s.epsilon, d), s.q) == 1;
        return {l, split ? ReductionClass::split_multiplicative : ReductionClass::nonsplit_multiplicative,
                KodairaSymbol::I(2), 2, 1, 2};
    }
    if (s.d_abs() % l == 0)
        return {l, ReductionClass::additive, KodairaSymbol::Istar(0), 4, 2, 6};
    bool ss = is_supersingular(s, l);
    (void)budget;
    return {l, ss ? ReductionClass::good_supersingular : ReductionClass::good_ordinary,
            KodairaSymbol::I(0), 1, 0, 0};
}

// Predicted point counts over F_l for l in {2, 3, 5, 7, p, q, D_i}.
inline int64_t predicted_count(const CurveSpec& s, int64_t l) {
    i128 d = s.d_value();
    if (l == 2) return 3;
    if (l == s.p) return jacobi_symbol(checked_mul(2 * s.epsilon, d), s.p) == 1 ? s.p : s.p + 2;
    if (l == s.q) return jacobi_symbol(checked_mul(-2 * s.epsilon, d), s.q) == 1 ? s.q : s.q + 2;
    if (s.d_abs() % l == 0) return l + 1;
    int64_t dm = (int64_t)mod_floor(d, l);
    if (l == 3) return 4;
    if (l == 5) {
        bool d_qr = dm == 1 || dm == 4;
        switch (s.p % 5) {
            case 1:
            case 2: return d_qr ? 4 : 8;
            case 4: return d_qr ? 8 : 4;
        }
        fail(errc::internal, "p = 3 mod 5 is impossible when 5 does not divide q");
    }
    if (l == 7) {
        int64_t pm = s.p % 7;
        if (pm == 2 || pm == 3 || pm == 6) return 8; // supersingular
        bool d_qr = dm == 1 || dm == 2 || dm == 4;
        bool branch_a = (s.epsilon == 1 && pm == 1) || (s.epsilon == -1 && pm == 4);
        bool branch_b = (s.epsilon == 1 && pm == 4) || (s.epsilon == -1 && pm == 1);
        if (branch_a) return d_qr ? 12 : 4;
        if (branch_b) return d_qr ? 4 : 12;
        fail(errc::internal, "p = 5 mod 7 is impossible when 7 does not divide q");
    }
    fail(errc::unsupported, "no predicted count for l = " + std::to_string(l));
}

// All good primes l <= bound with l | #E(F_l).  Expected empty for the family.
inline std::vector<int64_t> anomalous_scan(const CurveSpec& s, int64_t bound,
                                           int64_t budget = kDefaultPointBudget) {
    require(bound <= budget, errc::range, "anomalous bound exceeds the point-count budget");
    std::vector<int64_t> out;
    for (int64_t l = 2; l <= bound; ++l) {
        if (!is_prime(l) || s.divides_conductor(l)) continue;
        if (reduced_point_count(s, l, budget) % l == 0) out.push_back(l);
    }
    return out;
}

// Local data of the 2-isogenous curve E' (D = 1 only), from its closed table.
inline LocalReductionData isogenous_local_data(const CurveSpec& s, int64_t l) {
    require(s.d_abs() == 1, errc::domain, "isogenous local data needs D = 1");
    require(l == 2 || l == s.p || l == s.q, errc::domain, "isogenous table covers bad primes only");
    if (l == 2) {
        int64_t pm = s.p % 8;
        bool c2_small = pm == 3 || (s.epsilon == 1 && pm == 1) || (s.epsilon == -1 && pm == 5);
        bool c2_large = pm == 7 || (s.epsilon == 1 && pm == 5) || (s.epsilon == -1 && pm == 1);
        require(c2_small != c2_large, errc::internal, "isogenous Tamagawa table must be a partition");
        return {2, ReductionClass::additive, KodairaSymbol::Istar(3), c2_small ? 2 : 4, 5, 12};
    }
    bool at_p = l == s.p;
    int sgn = at_p ? 1 : -1;
    bool split = jacobi_symbol(2 * sgn * s.epsilon, l) == 1;
    return {l, split ? ReductionClass::split_multiplicative : ReductionClass::nonsplit_multiplicative,
            KodairaSymbol::I(1), 1, 1, 1};
}

} // namespace twincurve
