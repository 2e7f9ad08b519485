#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/error.hpp"
#include "twincurve/int128.hpp"

namespace twincurve {

// ---------------------------------------------------------------------------
// The curve family.
//
//   E = E^eps_D :  y^2 = x (x + eps*p*D) (x + eps*q*D)
//
// (p, q) a twin prime pair, D an odd square-free integer coprime to pq.
// Everything in the library consumes a validated CurveSpec.
// ---------------------------------------------------------------------------

// Supported parameter window.  Keeps Delta = 64 p^2 q^2 D^6 comfortably inside
// signed 128 bits; inputs beyond it are rejected, never wrapped.
inline constexpr int64_t kMaxP = 10000;
inline constexpr int64_t kMaxAbsD = 1000;

struct CurveSpec {
    int epsilon = 1; // +1 or -1
    int64_t p = 3;
    int64_t q = 5;
    FactoredInteger D; // square-free, odd; sign carried here when modeling a negative twist

    int64_t d_value() const { return to_i64(D.value()); }
    int64_t d_abs() const { return std::abs(d_value()); }
    int num_twist_primes() const { return (int)D.factors.size(); }

    std::vector<int64_t> twist_primes() const {
        std::vector<int64_t> v;
        for (auto [l, e] : D.factors) {
            (void)e;
            v.push_back(l);
        }
        return v;
    }

    bool divides_conductor(int64_t l) const {
        if (l == 2 || l == p || l == q) return true;
        return d_abs() % l == 0;
    }
};

struct CurveInvariants {
    i128 discriminant = 0;    // 64 p^2 q^2 D^6
    i128 j_numerator = 0;     // 64 (p^2 + 2q)^3, already coprime to the denominator
    i128 j_denominator = 1;   // p^2 q^2
    i128 conductor = 0;       // 2^5 p q D^2
};

// Long Weierstrass coefficients, the carrier for the general Tate algorithm
// and for the 2-isogenous curve.
struct WeierstrassCoeffs {
    i128 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    i128 b2() const { return checked_add(checked_mul(a1, a1), checked_mul(4, a2)); }
    i128 b4() const { return checked_add(checked_mul(2, a4), checked_mul(a1, a3)); }
    i128 b6() const { return checked_add(checked_mul(a3, a3), checked_mul(4, a6)); }
    i128 b8() const {
        i128 t = checked_mul(checked_mul(a1, a1), a6);
        t = checked_add(t, checked_mul(checked_mul(4, a2), a6));
        t = checked_sub(t, checked_mul(checked_mul(a1, a3), a4));
        t = checked_add(t, checked_mul(a2, checked_mul(a3, a3)));
        return checked_sub(t, checked_mul(a4, a4));
    }
    i128 c4() const { return checked_sub(checked_mul(b2(), b2()), checked_mul(24, b4())); }
    i128 c6() const {
        i128 t = checked_neg(checked_mul(b2(), checked_mul(b2(), b2())));
        t = checked_add(t, checked_mul(36, checked_mul(b2(), b4())));
        return checked_sub(t, checked_mul(216, b6()));
    }
    i128 discriminant() const {
        i128 t = checked_neg(checked_mul(checked_mul(b2(), b2()), b8()));
        t = checked_sub(t, checked_mul(8, checked_mul(b4(), checked_mul(b4(), b4()))));
        t = checked_sub(t, checked_mul(27, checked_mul(b6(), b6())));
        return checked_add(t, checked_mul(9, checked_mul(b2(), checked_mul(b4(), b6()))));
    }
};

inline CurveSpec validate(int epsilon, int64_t p, int64_t q, i128 d_raw) {
    require(epsilon == 1 || epsilon == -1, errc::validation, "epsilon must be +1 or -1");
    require(p >= 3 && p <= kMaxP, errc::range,
            "p outside supported window [3, " + std::to_string(kMaxP) + "]");
    require(q == p + 2, errc::validation, "not a twin pair: q must equal p + 2");
    require(is_prime(p), errc::validation, std::to_string(p) + " is not prime");
    require(is_prime(q), errc::validation, std::to_string(q) + " is not prime");
    require(d_raw != 0, errc::validation, "D must be nonzero");
    require(abs128(d_raw) <= kMaxAbsD, errc::range,
            "|D| outside supported window <= " + std::to_string(kMaxAbsD));
    FactoredInteger D = factorize(d_raw);
    require(D.is_squarefree(), errc::validation, "D must be square-free");
    require(D.is_odd(), errc::validation, "D must be odd");
    for (auto [l, e] : D.factors) {
        (void)e;
        require(l != p && l != q, errc::validation, "D must be coprime to pq");
    }
    return CurveSpec{epsilon, p, q, std::move(D)};
}

// y^2 = x^3 + eps*D*(p+q) x^2 + p*q*D^2 x, the defining cubic in long form.
inline WeierstrassCoeffs long_weierstrass(const CurveSpec& s) {
    i128 d = s.d_value();
    WeierstrassCoeffs w;
    w.a2 = checked_mul(checked_mul(s.epsilon, d), s.p + s.q);
    w.a4 = checked_mul(checked_mul(s.p, s.q), checked_mul(d, d));
    return w;
}

inline CurveInvariants invariants(const CurveSpec& s) {
    i128 d2 = checked_mul(s.d_value(), s.d_value());
    CurveInvariants inv;
    inv.discriminant =
        checked_mul(64, checked_mul(checked_mul(checked_pow(s.p, 2), checked_pow(s.q, 2)),
                                    checked_pow(d2, 3)));
    i128 u = checked_add(checked_mul(s.p, s.p), checked_mul(2, s.q));
    inv.j_numerator = checked_mul(64, checked_pow(u, 3));
    inv.j_denominator = checked_mul(checked_pow(s.p, 2), checked_pow(s.q, 2));
    i128 g = gcd128(inv.j_numerator, inv.j_denominator);
    inv.j_numerator /= g;
    inv.j_denominator /= g;
    inv.conductor = checked_mul(32, checked_mul(checked_mul(s.p, s.q), d2));
    return inv;
}

// The (-D)-twist stays inside the family: E^eps_{-D} = E^{-eps}_D.
inline CurveSpec minus_twist(const CurveSpec& s) {
    CurveSpec t = s;
    t.epsilon = -s.epsilon;
    return t;
}

// E' : y^2 = x^3 - 2 eps (p+q) x^2 + 4x, the 2-isogenous curve of E (D = 1).
// Its discriminant must come out as 2^12 p q; anything else is a bug.
inline WeierstrassCoeffs isogenous_curve(const CurveSpec& s) {
    require(s.d_abs() == 1, errc::unsupported, "2-isogenous model only for D = 1");
    WeierstrassCoeffs w;
    w.a2 = checked_mul(-2 * s.epsilon, s.p + s.q);
    w.a4 = 4;
    i128 expect = checked_mul(4096, checked_mul(s.p, s.q));
    require(w.discriminant() == expect, errc::internal, "2-isogenous discriminant mismatch");
    return w;
}

// ---------------------------------------------------------------------------
// Rational torsion.  The answer is always Z/2 x Z/2, but it is verified, not
// assumed: the three finite 2-torsion points are checked on the curve, point
// counts over several good primes are required to be divisible by 4 with a
// trivial common odd part, and a Lutz-Nagell search rules out points of
// order 4 (hence 8).
// ---------------------------------------------------------------------------

struct TorsionGroup {
    std::array<int, 2> elementary_divisors{2, 2};
    std::string name() const { return "Z/2 x Z/2"; }
};

namespace detail {

// Tiny y-scan point count used only by the torsion verification; the real
// counting machinery lives with the local-data operations.
inline int64_t slow_point_count(const CurveSpec& s, int64_t l) {
    int64_t a = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.p), s.d_value()), l);
    int64_t b = (int64_t)mod_floor(checked_mul(checked_mul(s.epsilon, s.q), s.d_value()), l);
    int64_t count = 1;
    for (int64_t x = 0; x < l; ++x) {
        int64_t fx = (int64_t)((i128)x * ((x + a) % l) % l * ((x + b) % l) % l);
        for (int64_t y = 0; y < l; ++y)
            if ((y * y - fx) % l == 0) ++count;
    }
    return count;
}

// Integer points (x, y) with y != 0 and y^2 = f(x): Lutz-Nagell style, y^2
// must divide the discriminant, then the cubic is solved for each candidate y.
inline std::vector<std::pair<i128, i128>> integral_points_by_lutz_nagell(const CurveSpec& s,
                                                                          i128 height_bound) {
    WeierstrassCoeffs w = long_weierstrass(s);
    i128 disc = w.discriminant();
    // candidate y ranges over divisors of 8*p*q*|D|^3 (so that y^2 | disc)
    std::vector<i128> ys;
    i128 dabs = s.d_abs();
    for (int e2 = 0; e2 <= 3; ++e2)
        for (int ep = 0; ep <= 1; ++ep)
            for (int eq = 0; eq <= 1; ++eq)
                for (int ed = 0; ed <= 3; ++ed) {
                    i128 y = checked_mul(checked_pow(2, e2),
                                         checked_mul(checked_pow(s.p, ep),
                                                     checked_mul(checked_pow(s.q, eq),
                                                                 checked_pow(dabs, ed))));
                    if (mod_floor(disc, checked_mul(y, y)) == 0) ys.push_back(y);
                }
    std::vector<std::pair<i128, i128>> pts;
    for (i128 y : ys) {
        // integer roots of x^3 + a2 x^2 + a4 x - y^2, located numerically and
        // confirmed exactly
        double A = (double)w.a2, B = (double)w.a4, C = -(double)checked_mul(y, y);
        for (double guess : {-A, -A / 2, 0.0, std::cbrt(-C), -std::cbrt(std::abs(C))}) {
            double x = guess;
            for (int it = 0; it < 80; ++it) {
                double fx = ((x + A) * x + B) * x + C;
                double dfx = (3 * x + 2 * A) * x + B;
                if (dfx == 0) break;
                x -= fx / dfx;
            }
            for (i128 xi = (i128)std::llround(x) - 2; xi <= (i128)std::llround(x) + 2; ++xi) {
                if (abs128(xi) > height_bound) continue;
                i128 fx = checked_add(checked_mul(checked_add(checked_mul(checked_add(xi, w.a2), xi), w.a4), xi), 0);
                if (fx == checked_mul(y, y)) {
                    bool seen = false;
                    for (auto& pt : pts) seen = seen || pt.first == xi;
                    if (!seen) pts.emplace_back(xi, y);
                }
            }
        }
    }
    return pts;
}

} // namespace detail

inline TorsionGroup torsion_group(const CurveSpec& s) {
    i128 d = s.d_value();
    WeierstrassCoeffs w = long_weierstrass(s);
    // (a) the three finite 2-torsion points lie on the curve
    for (i128 x : {(i128)0, checked_mul(checked_mul(-s.epsilon, s.p), d),
                   checked_mul(checked_mul(-s.epsilon, s.q), d)}) {
        i128 fx = checked_mul(checked_add(checked_mul(checked_add(x, w.a2), x), w.a4), x);
        require(fx == 0, errc::internal, "2-torsion point not on curve");
    }
    // (b),(c) counts over good primes: 4 | count, and the common odd part is 1
    i128 g = 0;
    int used = 0;
    for (int64_t l = 3; l < 100 && used < 5; l += 2) {
        if (!is_prime(l) || s.divides_conductor(l)) continue;
        int64_t n = detail::slow_point_count(s, l);
        require(n % 4 == 0, errc::internal, "point count not divisible by 4 at good prime");
        g = gcd128(g, n);
        ++used;
    }
    require(used >= 5, errc::internal, "not enough good primes below 100");
    while (g % 2 == 0) g /= 2;
    require(g == 1, errc::internal, "point counts share an odd factor");
    // (c) no point of order 4 (hence none of order 8): a point of order 4
    // doubles onto a finite 2-torsion point
    i128 bound = checked_mul(4, checked_mul(checked_mul(s.p, s.q), s.d_abs()));
    for (auto [x, y] : detail::integral_points_by_lutz_nagell(s, bound)) {
        // x(2P) = ((f'(x))^2 - (a2 + 2x) * 4 f(x)) / (4 f(x))
        i128 fx = checked_mul(y, y);
        i128 dfx = checked_add(checked_mul(checked_add(checked_mul(3, x), checked_mul(2, w.a2)), x), w.a4);
        i128 den = checked_mul(4, fx);
        i128 num = checked_sub(checked_mul(dfx, dfx), checked_mul(checked_add(w.a2, checked_mul(2, x)), den));
        for (i128 xt : {(i128)0, checked_mul(checked_mul(-s.epsilon, s.p), d),
                        checked_mul(checked_mul(-s.epsilon, s.q), d)}) {
            require(num != checked_mul(xt, den), errc::internal, "found a point of order 4");
        }
    }
    return TorsionGroup{};
}

} // namespace twincurve
