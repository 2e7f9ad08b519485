#pragma once

// Independent brute-force oracles.  Everything here exists to cross-check the
// closed-form implementations and deliberately shares no code path with them:
// plain scans, exhaustive searches, first-principles formulas.  Used by the
// test suites and by the `verify` subcommand only.

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/error.hpp"
#include "twincurve/int128.hpp"

namespace twincurve::oracle {

inline bool trial_division_is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exhaustive quadratic-residue search: does x^2 = a (mod m) have a solution?
inline bool is_square_mod(i128 a, int64_t m) {
    int64_t r = (int64_t)mod_floor(a, m);
    for (int64_t x = 0; x <= m / 2; ++x)
        if ((i128)x * x % m == r) return true;
    return false;
}

// Legendre symbol by exhaustive search (prime m).
inline int legendre_by_search(i128 a, int64_t m) {
    if (mod_floor(a, m) == 0) return 0;
    return is_square_mod(a, m) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Hilbert-symbol solvability search.
//
// (a,b)_l = +1 iff a x^2 + b y^2 = z^2 has a primitive l-adic solution.
// Square factors of a, b are absorbed into x, y first; then a primitive
// solution mod l^k decides the Hensel lift once k > 2*val_l(df/dvar) at the
// unit variable, i.e. k = 5 at l = 2 and k = 3 at odd l suffices.
// ---------------------------------------------------------------------------

inline bool hilbert_solvable_search(i128 a, i128 b, int64_t l) {
    auto strip_squares = [&](i128 x) {
        int v = valuation(x, l);
        return x / checked_pow(l, v - (v & 1));
    };
    a = strip_squares(a);
    b = strip_squares(b);
    int k = (l == 2) ? 5 : 3;
    int64_t M = 1;
    for (int i = 0; i < k; ++i) M *= l;

    int64_t am = (int64_t)mod_floor(a, M), bm = (int64_t)mod_floor(b, M);
    // square_any[w]: w = z^2 mod M for some z; square_unit[w]: some such z with l∤z
    std::vector<uint8_t> square_any(M, 0), square_unit(M, 0);
    for (int64_t z = 0; z < M; ++z) {
        int64_t w = (int64_t)((i128)z * z % M);
        square_any[w] = 1;
        if (z % l != 0) square_unit[w] = 1;
    }
    for (int64_t x = 0; x < M; ++x) {
        int64_t ax2 = (int64_t)((i128)am * x % M * x % M);
        for (int64_t y = 0; y < M; ++y) {
            int64_t w = (int64_t)((ax2 + (i128)bm * y % M * y) % M);
            if (x % l != 0 || y % l != 0) {
                if (square_any[w]) return true;
            } else if (square_unit[w]) {
                return true;
            }
        }
    }
    return false;
}

inline int hilbert_by_search(i128 a, i128 b, int64_t l) {
    return hilbert_solvable_search(a, b, l) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Class-number oracles.  Ideal-side enumerations, organized differently from
// the form machinery: reduced ideals are listed by norm, and for real fields
// the cycle count comes straight from the ideal reduction step, with no
// fundamental-unit reasoning anywhere.
// ---------------------------------------------------------------------------

// Reduced ideals [a, (b+sqrt(d))/2] of an imaginary quadratic field, counted
// by enumerating norms b^2 <= |d|/3 and splitting (b^2-d)/4 = a*c.
inline int64_t imaginary_class_number_by_ideals(i128 d) {
    require(d < 0, errc::domain, "imaginary discriminant expected");
    int64_t count = 0;
    for (i128 b = mod_floor(d, 2); 3 * b * b <= -d; b += 2) {
        i128 m = (b * b - d) / 4;
        for (i128 a = b > 0 ? b : 1; a * a <= m; ++a) {
            if (m % a != 0) continue;
            i128 c = m / a;
            if (gcd128(gcd128(a, b), c) != 1) continue;
            count += (b == 0 || a == b || a == c) ? 1 : 2; // (a,-b,c) is a second ideal
        }
    }
    return count;
}

// Dirichlet's class number formula for d < -4: h = |sum chi_d(k) * k| / |d|.
inline int64_t dirichlet_class_number(i128 d) {
    require(d < -4, errc::domain, "formula variant for d < -4");
    i128 sum = 0;
    for (i128 k = 1; k < -d; ++k) sum += (i128)kronecker_symbol(d, k) * k;
    i128 habs = abs128(sum);
    require(mod_floor(habs, -d) == 0, errc::internal, "character sum must be divisible by |d|");
    return to_i64(habs / -d);
}

// Wide class number of a real quadratic field: cycles of reduced ideals under
// the ideal reduction step (a, b) -> ((d - b^2)/(4a), -b mod ...).
inline int64_t real_class_number_by_ideal_cycles(i128 d) {
    require(d > 0, errc::domain, "real discriminant expected");
    int64_t s = isqrt64(to_i64(d));
    require((i128)s * s != d, errc::domain, "discriminant must not be a square");
    std::vector<std::pair<int64_t, int64_t>> ideals;
    int64_t bmax = s % 2 == (int64_t)mod_floor(d, 2) ? s : s - 1; // largest b <= s, b = d (mod 2)
    for (int64_t a = 1; a <= s; ++a)
        for (int64_t b = bmax; b >= 1; b -= 2) {
            if (b < s + 1 - 2 * a || 2 * a - b > s) continue;
            if (mod_floor((i128)b * b - d, 4 * a) != 0) continue;
            i128 c = ((i128)b * b - d) / (4 * a);
            if (gcd128(gcd128(a, b), c) != 1) continue;
            ideals.emplace_back(a, b);
        }
    std::map<std::pair<int64_t, int64_t>, int> seen;
    auto step = [&](std::pair<int64_t, int64_t> I) {
        auto [a, b] = I;
        int64_t a2 = to_i64((d - (i128)b * b) / (4 * a));
        int64_t b2 = s - (int64_t)mod_floor(s + b, 2 * a2);
        return std::pair<int64_t, int64_t>{a2, b2};
    };
    int64_t cycles = 0;
    for (auto& I : ideals) {
        if (seen.count(I)) continue;
        auto J = I;
        while (!seen.count(J)) {
            seen[J] = (int)cycles;
            J = step(J);
        }
        require(J == I, errc::internal, "ideal reduction cycle failed to close");
        ++cycles;
    }
    return cycles;
}

} // namespace twincurve::oracle
