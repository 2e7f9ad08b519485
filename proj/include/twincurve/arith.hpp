#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twincurve/error.hpp"
#include "twincurve/int128.hpp"

namespace twincurve {

// ---------------------------------------------------------------------------
// Primality.
//
// Deterministic Miller-Rabin.  The witness set {2,...,37} is proven complete
// for n < 3.317e24 (Sorenson-Webster), which covers the whole uint64 range;
// inputs beyond 2^63 are rejected so the mulmod below stays exact.
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((u128)a * b % m);
}

inline uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

inline bool is_prime(i128 n) {
    require(n >= 1, errc::domain, "is_prime needs n >= 1");
    require(n <= INT64_MAX, errc::range, "primality supported up to 2^63");
    auto m = (uint64_t)n;
    if (m < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m == p) return true;
        if (m % p == 0) return false;
    }
    uint64_t d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = detail::powmod_u64(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Smallest twin pair (p, p+2) with p >= start.
inline std::pair<int64_t, int64_t> next_twin_prime_pair(int64_t start, int64_t scan_limit = 100000000) {
    require(start >= 3, errc::domain, "twin search starts at 3");
    int64_t p = start | 1; // twins above (3,5) are odd; 3 itself is odd anyway
    for (; p <= scan_limit; p += 2)
        if (is_prime(p) && is_prime(p + 2)) return {p, p + 2};
    fail(errc::exhaustion, "no twin pair below scan limit " + std::to_string(scan_limit));
}

// ---------------------------------------------------------------------------
// Factorization at desk scale (trial division).
// ---------------------------------------------------------------------------

struct FactoredInteger {
    int sign = 1;                                  // +1 or -1
    std::vector<std::pair<int64_t, int>> factors;  // (prime, exponent), primes strictly increasing

    i128 value() const {
        i128 v = sign;
        for (auto [p, e] : factors) v = checked_mul(v, checked_pow(p, e));
        return v;
    }

    bool is_squarefree() const {
        for (auto [p, e] : factors) {
            (void)p;
            if (e > 1) return false;
        }
        return true;
    }

    bool is_odd() const {
        for (auto [p, e] : factors) {
            (void)e;
            if (p == 2) return false;
        }
        return true;
    }

    size_t num_primes() const { return factors.size(); }
};

inline FactoredInteger factorize(i128 n, int64_t trial_limit = 10000000) {
    require(n != 0, errc::domain, "factorize(0)");
    FactoredInteger f;
    if (n < 0) {
        f.sign = -1;
        n = checked_neg(n);
    }
    for (int64_t p = 2; (i128)p * p <= n && p <= trial_limit; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
    }
    if (n > 1) {
        require(n <= INT64_MAX && is_prime(n), errc::range,
                "cofactor " + twincurve::to_string(n) + " too large for trial division");
        f.factors.emplace_back((int64_t)n, 1);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Valuations and quadratic symbols.
// ---------------------------------------------------------------------------

inline int valuation(i128 n, int64_t l) {
    require(n != 0, errc::domain, "valuation of 0");
    require(l >= 2, errc::domain, "valuation needs l >= 2");
    int e = 0;
    while (n % l == 0) {
        n /= l;
        ++e;
    }
    return e;
}

// Jacobi symbol (a/m), m odd positive.  Equals the Legendre symbol for
// prime m; 0 iff gcd(a, m) > 1.
inline int jacobi_symbol(i128 a, i128 m) {
    require(m >= 1 && m % 2 == 1, errc::domain, "jacobi needs odd positive modulus");
    a = mod_floor(a, m);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i128 r = m % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) t = -t;
        a = mod_floor(a, m);
    }
    return m == 1 ? t : 0;
}

// Kronecker symbol (a/n) for arbitrary integers.
inline int kronecker_symbol(i128 a, i128 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int t = 1;
    if (n < 0) {
        n = checked_neg(n);
        if (a < 0) t = -t;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        i128 r = mod_floor(a, 8);
        if ((v & 1) && (r == 3 || r == 5)) t = -t;
    }
    return t * jacobi_symbol(a, n);
}

inline bool is_fundamental_discriminant(i128 d) {
    if (d == 1) return false; // unit, not a field discriminant
    i128 r = mod_floor(d, 4);
    if (r == 1) return factorize(d).is_squarefree();
    if (r != 0) return false;
    i128 m = d / 4;
    i128 rm = mod_floor(m, 4);
    if (rm != 2 && rm != 3) return false;
    return factorize(m).is_squarefree();
}

// chi_K(n) for the quadratic field of fundamental discriminant d.
inline int kronecker_character(i128 d, i128 n) {
    require(is_fundamental_discriminant(d), errc::domain,
            twincurve::to_string(d) + " is not a fundamental discriminant");
    return kronecker_symbol(d, n);
}

// ---------------------------------------------------------------------------
// Hilbert symbol (a,b)_l over Q_l, via the unit/valuation case formulas
// (Serre, A Course in Arithmetic, ch. III).  The modular solvability search
// lives in oracles.hpp and is test-only.
// ---------------------------------------------------------------------------

inline int hilbert_symbol_local(i128 a, i128 b, int64_t l) {
    require(a != 0 && b != 0, errc::domain, "hilbert symbol needs nonzero args");
    require(is_prime(l), errc::domain, "hilbert symbol needs prime l");
    int alpha = valuation(a, l), beta = valuation(b, l);
    i128 u = a / checked_pow(l, alpha);
    i128 v = b / checked_pow(l, beta);
    alpha &= 1;
    beta &= 1; // symbol only depends on square classes
    if (l == 2) {
        auto eps = [](i128 x) { return (int)mod_floor((x - 1) / 2, 2); };
        auto omg = [](i128 x) { return (int)mod_floor((checked_mul(x, x) - 1) / 8, 2); };
        int e = eps(u) * eps(v) + alpha * omg(v) + beta * omg(u);
        return (e & 1) ? -1 : 1;
    }
    int e = alpha * beta * (int)mod_floor((l - 1) / 2, 2);
    int s = (e & 1) ? -1 : 1;
    if (beta) s *= jacobi_symbol(u, l);
    if (alpha) s *= jacobi_symbol(v, l);
    return s;
}

} // namespace twincurve
