#pragma once

// Tate's algorithm over Q, complete with the I_m* sub-loop and minimality
// restarts (Tate; Silverman, Advanced Topics IV.9).  This is the general
// oracle the family's closed local-data tables are checked against, so it
// shares nothing with them: singular points are located by scanning, root
// multiplicities by synthetic division.

#include <cstdint>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/curves.hpp"
#include "twincurve/error.hpp"
#include "twincurve/localdata.hpp"

namespace twincurve {

namespace tate_detail {

constexpr int kValInf = 1 << 20;

inline int valp(i128 x, int64_t P) { return x == 0 ? kValInf : valuation(x, P); }

// x -> x + r, y -> y + s x + t (u = 1), exact.
inline WeierstrassCoeffs translate(const WeierstrassCoeffs& w, i128 r, i128 s, i128 t) {
    WeierstrassCoeffs n;
    n.a1 = checked_add(w.a1, checked_mul(2, s));
    n.a2 = checked_sub(checked_add(w.a2, checked_mul(3, r)),
                       checked_add(checked_mul(s, w.a1), checked_mul(s, s)));
    n.a3 = checked_add(w.a3, checked_add(checked_mul(r, w.a1), checked_mul(2, t)));
    n.a4 = checked_sub(
        checked_add(w.a4, checked_add(checked_mul(2, checked_mul(r, w.a2)),
                                      checked_mul(3, checked_mul(r, r)))),
        checked_add(checked_mul(s, w.a3),
                    checked_add(checked_mul(checked_add(t, checked_mul(r, s)), w.a1),
                                checked_mul(2, checked_mul(s, t)))));
    n.a6 = checked_sub(
        checked_add(w.a6, checked_add(checked_mul(r, w.a4),
                                      checked_add(checked_mul(checked_mul(r, r), w.a2),
                                                  checked_mul(r, checked_mul(r, r))))),
        checked_add(checked_mul(t, w.a3),
                    checked_add(checked_mul(t, t), checked_mul(r, checked_mul(t, w.a1)))));
    return n;
}

inline i128 center(i128 x, int64_t P) {
    i128 r = mod_floor(x, P);
    return r > P / 2 ? r - P : r;
}

// Roots of alpha z^2 + beta z + gamma over F_P, alpha a unit.
struct QuadRoots {
    bool multiple = false;
    int rational = 0;   // number of rational roots counted without multiplicity
    int64_t root = 0;   // a rational root when one exists (the double root if multiple)
};

inline QuadRoots quad_roots(i128 alpha, i128 beta, i128 gamma, int64_t P) {
    QuadRoots qr;
    i128 a = mod_floor(alpha, P), b = mod_floor(beta, P), c = mod_floor(gamma, P);
    require(a != 0, errc::internal, "quadratic with non-unit leading coefficient");
    if (P == 2) {
        if (b == 0) {
            qr.multiple = true;
            qr.rational = 1;
            qr.root = (int64_t)c; // z^2 = -c, and squaring is Frobenius
            return qr;
        }
        for (int64_t z = 0; z < 2; ++z)
            if (mod_floor(a * z * z + b * z + c, 2) == 0) {
                ++qr.rational;
                qr.root = z;
            }
        return qr;
    }
    i128 disc = mod_floor(checked_sub(checked_mul(b, b), checked_mul(4, checked_mul(a, c))), P);
    if (disc == 0) {
        qr.multiple = true;
        qr.rational = 1;
        i128 inv2a = detail::powmod_u64((uint64_t)mod_floor(2 * a, P), (uint64_t)(P - 2), (uint64_t)P);
        qr.root = (int64_t)mod_floor(checked_mul(checked_neg(b), inv2a), P);
        return qr;
    }
    qr.rational = 1 + jacobi_symbol(disc, P); // distinct roots: both rational or neither
    return qr;
}

// Root structure of the monic cubic T^3 + A T^2 + B T + C over F_P, found by
// scanning with synthetic division so that P = 2, 3 need no special cases.
struct CubicRoots {
    int rational = 0;        // distinct rational roots
    int max_multiplicity = 1;
    int64_t multiple_root = 0;
    bool separable = true;
};

inline CubicRoots cubic_roots(i128 A, i128 B, i128 C, int64_t P) {
    CubicRoots cr;
    int64_t a = (int64_t)mod_floor(A, P), b = (int64_t)mod_floor(B, P), c = (int64_t)mod_floor(C, P);
    for (int64_t r = 0; r < P; ++r) {
        // divide T - r out repeatedly
        int mult = 0;
        int64_t ca = a, cb = b, cc = c;
        for (;;) {
            int64_t v = (int64_t)(((i128)r * r % P * r + (i128)ca * r % P * r + (i128)cb * r + cc) % P);
            // value of current monic poly of degree 3-mult at r; for lower degrees handled below
            if (mult == 0) {
                if (v != 0) break;
                // deflate: T^3+aT^2+bT+c = (T-r)(T^2 + (a+r)T + (b + r(a+r)))
                cb = (int64_t)mod_floor((i128)b + (i128)r * (a + r), P);
                ca = (int64_t)mod_floor((i128)a + r, P);
                mult = 1;
                continue;
            }
            if (mult == 1) {
                int64_t q = (int64_t)mod_floor((i128)r * r + (i128)ca * r + cb, P);
                if (q != 0) break;
                ca = (int64_t)mod_floor((i128)ca + r, P);
                mult = 2;
                continue;
            }
            if (mult == 2) {
                if (mod_floor((i128)r + ca, P) != 0) break;
                mult = 3;
            }
            break;
        }
        if (mult > 0) {
            ++cr.rational;
            if (mult > cr.max_multiplicity) {
                cr.max_multiplicity = mult;
                cr.multiple_root = r;
            }
        }
    }
    if (cr.max_multiplicity > 1) cr.separable = false;
    // a multiple root of a cubic is always rational, so separability over the
    // closure is decided by the scan
    return cr;
}

// Affine + infinity count of the long Weierstrass curve over F_P.
inline int64_t long_form_count(const WeierstrassCoeffs& w, int64_t P, int64_t budget) {
    require(P <= budget, errc::range, "prime exceeds the point-count budget");
    int64_t A1 = (int64_t)mod_floor(w.a1, P), A2 = (int64_t)mod_floor(w.a2, P),
            A3 = (int64_t)mod_floor(w.a3, P), A4 = (int64_t)mod_floor(w.a4, P),
            A6 = (int64_t)mod_floor(w.a6, P);
    auto f = [&](int64_t x) { return (A6 + x * ((A4 + x * ((A2 + x) % P)) % P)) % P; };
    if (P == 2) {
        int64_t n = 1;
        for (int64_t x = 0; x < 2; ++x)
            for (int64_t y = 0; y < 2; ++y)
                if ((y * y + A1 * x * y + A3 * y - f(x)) % 2 == 0) ++n;
        return n;
    }
    std::vector<int8_t> chi(P, -1);
    chi[0] = 0;
    for (int64_t y = 1; y <= (P - 1) / 2; ++y) chi[y * y % P] = 1;
    int64_t sum = 0;
    for (int64_t x = 0; x < P; ++x) {
        // complete the square: (2y + a1 x + a3)^2 = (a1 x + a3)^2 + 4 f(x)
        int64_t u = (A1 * x + A3) % P;
        int64_t rhs = (u * u + 4 * f(x)) % P;
        sum += chi[rhs];
    }
    return P + 1 + sum;
}

} // namespace tate_detail

inline LocalReductionData tate_oracle(WeierstrassCoeffs w, int64_t P,
                                      int64_t count_budget = kDefaultPointBudget) {
    using namespace tate_detail;
    require(is_prime(P), errc::domain, "tate_oracle needs a prime");
    require(w.discriminant() != 0, errc::domain, "singular curve");

    for (;;) { // restarts only on non-minimal models
        i128 delta = w.discriminant();
        int n = valp(delta, P);
        if (n == 0) {
            int64_t cnt = long_form_count(w, P, count_budget);
            int64_t trace = P + 1 - cnt;
            bool ss = mod_floor(trace, P) == 0;
            return {P, ss ? ReductionClass::good_supersingular : ReductionClass::good_ordinary,
                    KodairaSymbol::I(0), 1, 0, 0};
        }

        // Move the singular point of the reduction to (0,0).  It is unique and
        // rational; locate it by scanning x (y is pinned by the y-partial).
        {
            require(P <= count_budget, errc::range, "bad-fiber analysis exceeds the scan budget");
            int64_t A1 = (int64_t)mod_floor(w.a1, P), A2 = (int64_t)mod_floor(w.a2, P),
                    A3 = (int64_t)mod_floor(w.a3, P), A4 = (int64_t)mod_floor(w.a4, P),
                    A6 = (int64_t)mod_floor(w.a6, P);
            auto fx = [&](int64_t x) { return (A6 + x * ((A4 + x * ((A2 + x) % P)) % P)) % P; };
            bool found = false;
            int64_t r = 0, t = 0;
            if (P == 2) {
                for (int64_t x = 0; x < 2 && !found; ++x)
                    for (int64_t y = 0; y < 2 && !found; ++y) {
                        int64_t F = (y * y + A1 * x * y + A3 * y - fx(x)) % 2;
                        int64_t Fx = (A1 * y - A4 - x * (2 * A2 + 3 * x)) % 2;
                        int64_t Fy = (2 * y + A1 * x + A3) % 2;
                        if (F == 0 && Fx == 0 && Fy == 0) {
                            r = x;
                            t = y;
                            found = true;
                        }
                    }
            } else {
                int64_t inv2 = (int64_t)detail::powmod_u64(2, (uint64_t)(P - 2), (uint64_t)P);
                for (int64_t x = 0; x < P && !found; ++x) {
                    int64_t y = (int64_t)mod_floor(-(A1 * x + A3) % P * inv2, P);
                    int64_t F = (int64_t)mod_floor(y * y + A1 * x % P * y + A3 * y - fx(x), P);
                    int64_t Fx = (int64_t)mod_floor(A1 * y - A4 - x * ((2 * A2 + 3 * x) % P), P);
                    if (F == 0 && Fx == 0) {
                        r = x;
                        t = y;
                        found = true;
                    }
                }
            }
            require(found, errc::internal, "singular point not found on a singular reduction");
            w = translate(w, center(r, P), 0, center(t, P));
            require(valp(w.a3, P) >= 1 && valp(w.a4, P) >= 1 && valp(w.a6, P) >= 1, errc::internal,
                    "singular point move failed");
        }

        // Multiplicative: tangent directions split iff T^2 + a1 T - a2 splits.
        if (valp(w.b2(), P) == 0) {
            QuadRoots q = quad_roots(1, w.a1, checked_neg(w.a2), P);
            bool split = q.rational > 0;
            int64_t c = split ? n : (n % 2 == 0 ? 2 : 1);
            return {P,
                    split ? ReductionClass::split_multiplicative
                          : ReductionClass::nonsplit_multiplicative,
                    KodairaSymbol::I(n), c, 1, n};
        }

        if (valp(w.a6, P) < 2)
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::II, 0}, 1, n, n};
        if (valp(w.b8(), P) < 3)
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::III, 0}, 2, n - 1, n};
        if (valp(w.b6(), P) < 3) {
            QuadRoots q = quad_roots(1, w.a3 / P, checked_neg(w.a6 / checked_mul(P, P)), P);
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::IV, 0},
                    q.rational > 0 ? 3 : 1, n - 2, n};
        }

        // Normalize so that P | a1, a2; P^2 | a3, a4; P^3 | a6.
        {
            bool ok = false;
            i128 bs = 0, bt = 0;
            if (P <= 3) {
                for (int64_t s = 0; s < P && !ok; ++s)
                    for (int64_t t = 0; t < P * P && !ok; ++t) {
                        WeierstrassCoeffs v = translate(w, 0, s, t);
                        if (valp(v.a1, P) >= 1 && valp(v.a2, P) >= 1 && valp(v.a3, P) >= 2 &&
                            valp(v.a4, P) >= 2 && valp(v.a6, P) >= 3) {
                            bs = s;
                            bt = t;
                            ok = true;
                        }
                    }
            } else {
                i128 inv2 = detail::powmod_u64(2, (uint64_t)(P - 2), (uint64_t)P);
                bs = center(checked_mul(checked_neg(w.a1), inv2), P);
                WeierstrassCoeffs v = translate(w, 0, bs, 0);
                // 2 t = -a3 mod P^2
                i128 P2 = checked_mul(P, P);
                i128 a3r = mod_floor(v.a3, P2);
                // invert 2 mod P^2 by lifting: inv2' = inv2 * (2 - 2*inv2) mod P^2
                i128 inv2p2 = mod_floor(checked_mul(inv2, checked_sub(2, checked_mul(2, inv2))), P2);
                bt = center(checked_mul(checked_neg(a3r), inv2p2), P2);
                ok = true;
            }
            w = translate(w, 0, bs, bt);
            require(valp(w.a1, P) >= 1 && valp(w.a2, P) >= 1 && valp(w.a3, P) >= 2 &&
                        valp(w.a4, P) >= 2 && valp(w.a6, P) >= 3,
                    errc::internal, "step-6 normalization failed");
        }

        require(P <= count_budget, errc::range, "additive analysis exceeds the scan budget");
        i128 P2 = checked_mul(P, P), P3 = checked_mul(P2, P);
        CubicRoots cu = cubic_roots(w.a2 / P, w.a4 / P2, w.a6 / P3, P);

        if (cu.separable)
            return {P, ReductionClass::additive, KodairaSymbol::Istar(0), 1 + cu.rational, n - 4, n};

        if (cu.max_multiplicity == 2) {
            // I_m* sub-loop
            w = translate(w, checked_mul(P, center(cu.multiple_root, P)), 0, 0);
            require(valp(w.a2, P) == 1 && valp(w.a3, P) >= 2 && valp(w.a4, P) >= 3 &&
                        valp(w.a6, P) >= 4,
                    errc::internal, "I_m* entry valuations failed");
            i128 pj1 = P2; // P^(j+1)
            for (int j = 1;; ++j) {
                require(2 * j - 1 <= n, errc::internal, "I_m* loop failed to terminate");
                i128 pj2 = checked_mul(pj1, P);   // P^(j+2)
                i128 p2j2 = checked_mul(pj1, pj1); // P^(2j+2)
                // odd m = 2j-1: Y^2 + a_{3,j+1} Y - a_{6,2j+2}
                QuadRoots qy = quad_roots(1, w.a3 / pj1, checked_neg(w.a6 / p2j2), P);
                if (!qy.multiple) {
                    int m = 2 * j - 1;
                    return {P, ReductionClass::additive, KodairaSymbol::Istar(m),
                            qy.rational > 0 ? 4 : 2, n - m - 4, n};
                }
                w = translate(w, 0, 0, checked_mul(pj1, center(qy.root, P)));
                require(valp(w.a3, P) >= j + 2 && valp(w.a6, P) >= 2 * j + 3, errc::internal,
                        "I_m* odd-stage translation failed");
                // even m = 2j: a_{2,1} X^2 + a_{4,j+2} X + a_{6,2j+3}
                i128 p2j3 = checked_mul(p2j2, P);
                QuadRoots qx = quad_roots(w.a2 / P, w.a4 / pj2, w.a6 / p2j3, P);
                if (!qx.multiple) {
                    int m = 2 * j;
                    return {P, ReductionClass::additive, KodairaSymbol::Istar(m),
                            qx.rational > 0 ? 4 : 2, n - m - 4, n};
                }
                w = translate(w, checked_mul(pj1, center(qx.root, P)), 0, 0);
                require(valp(w.a4, P) >= j + 3 && valp(w.a6, P) >= 2 * j + 4, errc::internal,
                        "I_m* even-stage translation failed");
                pj1 = pj2;
            }
        }

        // Triple root: IV*, III*, II*, or a non-minimal model.
        w = translate(w, checked_mul(P, center(cu.multiple_root, P)), 0, 0);
        require(valp(w.a2, P) >= 2 && valp(w.a4, P) >= 3 && valp(w.a6, P) >= 4, errc::internal,
                "triple-root translation failed");
        i128 P4 = checked_mul(P2, P2);
        QuadRoots qy = quad_roots(1, w.a3 / P2, checked_neg(w.a6 / P4), P);
        if (!qy.multiple)
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::IVstar, 0},
                    qy.rational > 0 ? 3 : 1, n - 6, n};
        w = translate(w, 0, 0, checked_mul(P2, center(qy.root, P)));
        require(valp(w.a3, P) >= 3 && valp(w.a6, P) >= 5, errc::internal,
                "IV* double-root translation failed");
        if (valp(w.a4, P) < 4)
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::IIIstar, 0}, 2, n - 7, n};
        if (valp(w.a6, P) < 6)
            return {P, ReductionClass::additive, {KodairaSymbol::Kind::IIstar, 0}, 1, n - 8, n};

        // Non-minimal: scale down by u = P and rerun.
        w.a1 /= P;
        w.a2 /= P2;
        w.a3 /= P3;
        w.a4 /= P4;
        w.a6 /= checked_mul(P4, P2);
    }
}

inline LocalReductionData tate_oracle(const CurveSpec& s, int64_t P,
                                      int64_t count_budget = kDefaultPointBudget) {
    return tate_oracle(long_weierstrass(s), P, count_budget);
}

} // namespace twincurve
