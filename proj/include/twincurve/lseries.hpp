#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/curves.hpp"
#include "twincurve/error.hpp"
#include "twincurve/localdata.hpp"
#include "twincurve/normindex.hpp"

namespace twincurve {

// ---------------------------------------------------------------------------
// Root numbers.
// ---------------------------------------------------------------------------

struct RootNumberData {
    int omega_inf = -1;
    int omega_2 = 1;
    int omega_p = 1;
    int omega_q = 1;
    int omega_good = 1; // +1 at every good prime
    int global = 1;
    int64_t coker_size = 2; // #coker(phi_2) entering the sign at 2
    int hilbert_factor = 1; // (eps(p+q), -pq)_2
};

// Closed table for the sign of the functional equation of E (D = 1).
inline int root_number(const CurveSpec& s) {
    require(s.d_abs() == 1, errc::unsupported, "closed root number is for D = 1; twist instead");
    int64_t r = s.p % 8;
    if (s.epsilon == 1) return (r == 5 || r == 7) ? 1 : -1;
    return (r == 3 || r == 5) ? 1 : -1;
}

// Constructive local product: omega = omega_inf * omega_2 * omega_p * omega_q,
// with omega_2 = (-1)^(1 + ord_2 #coker phi_2) * (eps(p+q), -pq)_2 and the
// cokernel size read off the Tamagawa numbers of the 2-isogeny.
inline RootNumberData root_number_constructive(const CurveSpec& s) {
    require(s.d_abs() == 1, errc::unsupported, "constructive root number is for D = 1");
    RootNumberData out;
    out.omega_p = jacobi_symbol(2 * s.epsilon, s.p) == 1 ? -1 : 1;  // -1 iff split
    out.omega_q = jacobi_symbol(-2 * s.epsilon, s.q) == 1 ? -1 : 1;
    // #coker phi_2 = #E(Q_2)[phi_2] * c_2(E') / c_2(E) = 2 * c_2(E') / 2
    int64_t c2E = reduction_data(s, 2).tamagawa;
    int64_t c2Ep = isogenous_local_data(s, 2).tamagawa;
    out.coker_size = 2 * c2Ep / c2E;
    out.hilbert_factor = hilbert_symbol_local(s.epsilon * (s.p + s.q), -s.p * s.q, 2);
    out.omega_2 = ((1 + valuation(out.coker_size, 2)) % 2 == 0 ? 1 : -1) * out.hilbert_factor;
    out.global = out.omega_inf * out.omega_2 * out.omega_p * out.omega_q;
    return out;
}

// Sign for the twist E_(mu*D) via the quadratic character of K = Q(sqrt(mu*D));
// only the discriminants coprime to 2N are covered, i.e. mu*D = 1 (mod 4).
inline int twisted_root_number(const CurveSpec& s, const TwistField& k) {
    require(s.d_abs() == 1, errc::unsupported, "twisted root number twists the base curve");
    require(k.d_value() % s.p != 0 && k.d_value() % s.q != 0, errc::domain,
            "twist must be coprime to pq");
    require(mod_floor(k.twist(), 4) == 1, errc::unsupported,
            "only twists with mu*D = 1 (mod 4) are covered");
    int chi = kronecker_character(k.disc(), -2 * s.p * s.q);
    return chi * root_number(s);
}

// ---------------------------------------------------------------------------
// Dirichlet coefficients a(1..N): traces at good primes, +-1 at split/nonsplit
// multiplicative primes, 0 at additive ones, extended by the Euler product.
// ---------------------------------------------------------------------------

inline std::vector<int64_t> an_coefficients(const CurveSpec& s, int64_t n_max,
                                            int64_t budget = kDefaultPointBudget) {
    require(n_max >= 1 && n_max <= budget, errc::range, "coefficient range exceeds the budget");
    std::vector<int64_t> a(n_max + 1, 0);
    a[1] = 1;
    std::vector<int32_t> spf(n_max + 1, 0);
    for (int64_t i = 2; i <= n_max; ++i)
        if (spf[i] == 0)
            for (int64_t j = i; j <= n_max; j += i)
                if (spf[j] == 0) spf[j] = (int32_t)i;
    for (int64_t l = 2; l <= n_max; ++l) {
        if (spf[l] != l) continue; // primes only
        enum { good, mult, add } kind;
        int64_t al;
        if (l == 2 || s.d_abs() % l == 0) {
            kind = add;
            al = 0;
        } else if (l == s.p || l == s.q) {
            kind = mult;
            int sgn = l == s.p ? 1 : -1;
            al = jacobi_symbol(2 * sgn * s.epsilon * s.d_value(), l) == 1 ? 1 : -1;
        } else {
            kind = good;
            al = l + 1 - reduced_point_count(s, l, budget);
        }
        a[l] = al;
        i128 prev2 = 1, prev1 = al; // a(l^(e-2)), a(l^(e-1))
        for (i128 pe = (i128)l * l; pe <= n_max; pe *= l) {
            i128 cur = kind == good ? al * prev1 - (i128)l * prev2
                      : kind == mult ? al * prev1
                                     : 0;
            a[(int64_t)pe] = to_i64(cur);
            prev2 = prev1;
            prev1 = cur;
        }
    }
    for (int64_t n = 2; n <= n_max; ++n) {
        int64_t l = spf[n], pe = l, m = n / l;
        while (m % l == 0) {
            pe *= l;
            m /= l;
        }
        if (m > 1) a[n] = a[pe] * a[m];
    }
    return a;
}

// ---------------------------------------------------------------------------
// Truncated L-values.
// ---------------------------------------------------------------------------

struct LSeriesApprox {
    double value = 0.0;
    int64_t truncation = 0;
    double tail_bound = 0.0;
    std::string formula_tag;
};

namespace lseries_detail {

// series damping constant: exp(-n * pi / (2 sqrt(2pq))) = exp(-2 n pi / sqrt(N))
inline double damping(const CurveSpec& s, int64_t twist_abs = 1) {
    return M_PI / (2.0 * (double)twist_abs * std::sqrt(2.0 * (double)s.p * (double)s.q));
}

// geometric tail with |a(n)| <= n: sum_{n > N} exp(-n c) = exp(-(N+1)c)/(1-exp(-c))
inline double geometric_tail(double c, int64_t n_max) {
    return std::exp(-c * (double)(n_max + 1)) / (1.0 - std::exp(-c));
}

// Gauss-Legendre nodes on [-1, 1], computed by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// integrate f over [lo, hi] with composite 16-point Gauss-Legendre on k panels
template <class F>
inline double composite_gl(const F& f, double lo, double hi, int panels) {
    static std::vector<double> x, w;
    if (x.empty()) gauss_legendre(16, x, w);
    double total = 0.0;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h, mid = a + h / 2, half = h / 2;
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
        total += half * acc;
    }
    return total;
}

} // namespace lseries_detail

// L(E/Q, 1) by the exponentially damped series; exactly 0 when the sign of the
// functional equation is -1.
inline LSeriesApprox l_value_at_1(const CurveSpec& s, int64_t n_max = 2000,
                                  int64_t budget = kDefaultPointBudget) {
    require(s.d_abs() == 1, errc::unsupported, "series evaluation is for D = 1");
    if (root_number(s) == -1) return {0.0, n_max, 0.0, "vanishes-by-sign"};
    auto a = an_coefficients(s, n_max, budget);
    double c = lseries_detail::damping(s);
    double v = 0.0;
    for (int64_t n = n_max; n >= 1; --n)
        v += (double)a[n] / (double)n * std::exp(-c * (double)n);
    return {2.0 * v, n_max, 2.0 * lseries_detail::geometric_tail(c, n_max), "series"};
}

// r-th derivative of L at 1 by quadrature of the log-kernel integral
//   L^(r)(1) = 2 pi sum_n a(n) int_{1/sqrt(N)}^inf (log^r t + w (-1)^r log^r(Nt)) e^{-2 n pi t} dt.
// For r = 0 the integral collapses to the series form; the quadrature is still
// run and must agree, which keeps the machinery honest.
inline LSeriesApprox l_derivative_at_1(const CurveSpec& s, int r, int64_t n_max = 2000,
                                       int64_t budget = kDefaultPointBudget) {
    require(s.d_abs() == 1, errc::unsupported, "series evaluation is for D = 1");
    require(r >= 0 && r <= 2, errc::domain, "derivative order supported up to 2");
    int w = root_number(s);
    double sign = w * ((r % 2 == 0) ? 1.0 : -1.0);
    double bigN = 32.0 * (double)s.p * (double)s.q;
    double t0 = 1.0 / std::sqrt(bigN);
    double t1 = t0 + 8.0; // e^(-2 pi t) < 2e-22 past the cut
    auto a = an_coefficients(s, n_max, budget);
    // effective truncation: terms with e^(-2 pi n t0) below noise are dropped
    int64_t n_eff = n_max;
    while (n_eff > 1 && -2.0 * M_PI * (double)n_eff * t0 < -55.0) --n_eff;
    auto series_at = [&](double t) {
        double x = std::exp(-2.0 * M_PI * t), acc = 0.0, xn = 1.0;
        for (int64_t n = 1; n <= n_eff; ++n) {
            xn *= x;
            if (xn == 0.0) break;
            acc += (double)a[n] * xn;
        }
        return acc;
    };
    auto integrand = [&](double t) {
        double lt = std::log(t), lnt = std::log(bigN * t);
        double bracket = 1.0 + sign;
        if (r == 1) bracket = lt + sign * lnt;
        if (r == 2) bracket = lt * lt + sign * lnt * lnt;
        return bracket * series_at(t);
    };
    double prev = lseries_detail::composite_gl(integrand, t0, t1, 24);
    double cur = 0.0;
    int panels = 48;
    bool converged = false;
    for (; panels <= 768; panels *= 2) {
        cur = lseries_detail::composite_gl(integrand, t0, t1, panels);
        if (std::abs(cur - prev) <= 1e-12 * (std::abs(cur) + 1.0)) {
            converged = true;
            break;
        }
        prev = cur;
    }
    require(converged, errc::numeric,
            "quadrature failed to converge at step-halving (last delta " +
                std::to_string(std::abs(cur - prev)) + ")");
    double value = 2.0 * M_PI * cur;
    // crude tail over the discarded n: |bracket| * sum_{n > n_eff} e^(-2 pi n t0)
    double bmax = 2.0 * (std::pow(std::abs(std::log(t0)), r) + std::pow(std::log(bigN * t1), r));
    double tail = bmax * lseries_detail::geometric_tail(2.0 * M_PI * t0, n_eff);
    if (r == 0) {
        // closed form of the r = 0 integral: (1 + w) e^(-2 n pi t0) / (2 n pi)
        double closed = 0.0, c = 2.0 * M_PI * t0;
        for (int64_t n = n_eff; n >= 1; --n)
            closed += (double)a[n] / (double)n * std::exp(-c * (double)n);
        closed *= (1.0 + (double)w);
        require(std::abs(value - closed) <= 1e-9 * (std::abs(closed) + 1e-30) + 1e-12,
                errc::numeric, "quadrature and closed form disagree at r = 0");
        return {closed, n_max, tail, "closed-form"};
    }
    return {value, n_max, tail, "quadrature"};
}

// L(E_muD/Q, 1) through the character-twisted series with the sign prefactor
// 1 + omega_E * chi_K(-2pq); exact 0 when the prefactor vanishes.
inline LSeriesApprox twisted_l_value(const CurveSpec& s, const TwistField& k,
                                     int64_t n_max = 4000, int64_t budget = kDefaultPointBudget) {
    require(s.d_abs() == 1, errc::unsupported, "twisted series twists the base curve");
    require(mod_floor(k.twist(), 4) == 1, errc::domain,
            "twisted value needs D = mu (mod 4)");
    require(k.d_value() % s.p != 0 && k.d_value() % s.q != 0, errc::domain,
            "twist must be coprime to pq");
    int chi = kronecker_character(k.disc(), -2 * s.p * s.q);
    int prefactor = 1 + root_number(s) * chi;
    if (prefactor == 0) return {0.0, n_max, 0.0, "vanishes-by-sign"};
    auto a = an_coefficients(s, n_max, budget);
    double c = lseries_detail::damping(s, k.d_value());
    double v = 0.0;
    for (int64_t n = n_max; n >= 1; --n) {
        int chin = kronecker_character(k.disc(), n);
        if (chin == 0) continue;
        v += (double)(a[n] * chin) / (double)n * std::exp(-c * (double)n);
    }
    return {prefactor * v, n_max, prefactor * lseries_detail::geometric_tail(c, n_max),
            "twisted-series"};
}

// ---------------------------------------------------------------------------
// Parity bookkeeping against the known rank families.
// ---------------------------------------------------------------------------

enum class ParityVerdict { consistent, inconsistent, rank_unknown };

struct ParityCheck {
    ParityVerdict verdict = ParityVerdict::rank_unknown;
    int omega = 1;
    int rank = -1; // -1 when no family applies
    std::string family;
};

// Search q = a1^2 + a2^2 (all sign and order variants) for a witness with
// (a1 + e1)^2 + (a2 + e2)^2 a perfect square, e_i in {1, -1}.
inline bool sum_of_squares_witness(int64_t q) {
    for (int64_t u = 1; u * u <= q; ++u) {
        int64_t v2 = q - u * u, v;
        if (!is_perfect_square64(v2, &v)) continue;
        for (int64_t a1 : {u, -u, v, -v})
            for (int64_t a2 : {u, -u, v, -v}) {
                if (a1 * a1 + a2 * a2 != q) continue;
                for (int64_t e1 : {1, -1})
                    for (int64_t e2 : {1, -1})
                        if (is_perfect_square64((a1 + e1) * (a1 + e1) + (a2 + e2) * (a2 + e2)))
                            return true;
            }
    }
    return false;
}

inline ParityCheck parity_check(const CurveSpec& s) {
    require(s.d_abs() == 1, errc::unsupported, "parity families are stated for D = 1");
    ParityCheck out;
    out.omega = root_number(s);
    int64_t r8 = s.p % 8;
    if (s.epsilon == 1 && r8 == 5) {
        out.rank = 0;
        out.family = "rank0-plus";
    } else if (s.epsilon == -1 && (r8 == 3 || r8 == 5)) {
        out.rank = 0;
        out.family = "rank0-minus";
    } else if (s.epsilon == 1 && r8 == 3) {
        if (sum_of_squares_witness(s.q)) {
            out.rank = 1;
            out.family = "rank1-witness";
        } else {
            out.family = "rank1-family-no-witness";
            return out;
        }
    } else {
        return out;
    }
    bool even_rank = out.rank % 2 == 0;
    out.verdict = (even_rank == (out.omega == 1)) ? ParityVerdict::consistent
                                                  : ParityVerdict::inconsistent;
    return out;
}

// ---------------------------------------------------------------------------
// Heegner congruence and the supersingular Sha-order exponent.
// ---------------------------------------------------------------------------

// Is disc a square modulo 4N? (exhaustive residue search)
inline bool heegner_congruence(const CurveSpec& s, i128 disc) {
    require(disc < 0, errc::domain, "Heegner discriminants are negative");
    i128 m = checked_mul(4, invariants(s).conductor);
    require(m <= 100000000, errc::range, "modulus too large for the residue search");
    i128 target = mod_floor(disc, m);
    for (i128 x = 0; 2 * x <= m; ++x)
        if (mod_floor(x * x, m) == target) return true;
    return false;
}

// e_n = floor(l^(n+1)/(l^2 - 1) - n/2), the exponent in the predicted order
// l^(e_n) of the l-primary Sha over the n-th cyclotomic layer.
inline int64_t iwasawa_e_n(int64_t l, int64_t n) {
    require(l >= 2, errc::domain, "l must be at least 2");
    require(n >= 0, errc::domain, "layer index must be nonnegative");
    i128 num = checked_sub(checked_mul(2, checked_pow(l, (int)n + 1)),
                           checked_mul(n, checked_sub(checked_mul(l, l), 1)));
    i128 den = checked_mul(2, checked_sub(checked_mul(l, l), 1));
    return to_i64(floor_div(num, den));
}

} // namespace twincurve
