#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "twincurve/error.hpp"

namespace twincurve {

// All exact arithmetic runs at fixed signed 128-bit width with explicit
// overflow checks; anything that would wrap fails loudly with errc::range.
using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) fail(errc::range, "128-bit add overflow");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) fail(errc::range, "128-bit sub overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) fail(errc::range, "128-bit mul overflow");
    return r;
}

inline i128 checked_neg(i128 a) { return checked_sub(0, a); }

inline i128 abs128(i128 a) { return a < 0 ? checked_neg(a) : a; }

inline i128 checked_pow(i128 base, int exp) {
    require(exp >= 0, errc::domain, "negative exponent");
    i128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Floor division and the matching nonnegative remainder.
inline i128 floor_div(i128 a, i128 b) {
    i128 q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline i128 mod_floor(i128 a, i128 b) {
    i128 r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? (u128)0 - (u128)v : (u128)v;
    char buf[48];
    int i = 48;
    while (u > 0) {
        buf[--i] = char('0' + (int)(u % 10));
        u /= 10;
    }
    std::string s(buf + i, 48 - i);
    return neg ? "-" + s : s;
}

inline i128 parse_i128(std::string_view s) {
    require(!s.empty(), errc::domain, "empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    require(i < s.size(), errc::domain, "empty integer literal");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        require(s[i] >= '0' && s[i] <= '9', errc::domain, "bad digit in integer literal");
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    }
    return neg ? checked_neg(v) : v;
}

inline int64_t isqrt64(int64_t n) {
    require(n >= 0, errc::domain, "isqrt of negative");
    if (n == 0) return 0;
    auto r = (int64_t)__builtin_sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square64(int64_t n, int64_t* root = nullptr) {
    if (n < 0) return false;
    int64_t r = isqrt64(n);
    if (root) *root = r;
    return r * r == n;
}

// Fits-check before narrowing an i128 into int64.
inline int64_t to_i64(i128 v) {
    require(v >= INT64_MIN && v <= INT64_MAX, errc::range, "value exceeds 64 bits");
    return (int64_t)v;
}

} // namespace twincurve
