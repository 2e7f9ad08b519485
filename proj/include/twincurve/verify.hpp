#pragma once

// The executable content of the library's contracts: per-module property
// suites plus the acceptance criteria, all as named checks.  Both the CLI
// `verify` subcommand and the acceptance binary run these.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twincurve/oracles.hpp"
#include "twincurve/report.hpp"

namespace twincurve {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

namespace verify_detail {

struct Counter {
    int64_t run = 0;
    int64_t bad = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++run;
        if (!ok) {
            ++bad;
            if (first_failure.empty()) first_failure = what;
        }
    }

    std::string summary() const {
        std::string s = std::to_string(run) + " checks";
        if (bad) s += ", " + std::to_string(bad) + " failed (first: " + first_failure + ")";
        return s;
    }
};

inline const std::vector<int64_t>& twin_ps_1000() {
    static const std::vector<int64_t> ps = report_detail::twin_ps_below(1000);
    return ps;
}

template <class F>
inline CheckResult timed(const std::string& name, double limit_seconds, const F& body) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    Counter c;
    try {
        body(c);
        r.pass = c.bad == 0;
        r.detail = c.summary();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && r.seconds >= limit_seconds) {
        r.pass = false;
        r.detail += " [over the " + std::to_string((int)limit_seconds) + "s limit]";
    }
    return r;
}

} // namespace verify_detail

// ---------------------------------------------------------------------------
// Module property suites.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_property_suites(const Budgets& budgets = {}) {
    using namespace verify_detail;
    std::vector<CheckResult> out;

    out.push_back(timed("arith/jacobi-multiplicative", 0, [](Counter& c) {
        for (int64_t m = 1; m <= 199; m += 2)
            for (i128 a = -200; a <= 200; ++a)
                for (i128 b : {(i128)-3, (i128)2, (i128)45, (i128)143})
                    c.expect(jacobi_symbol(a * b, m) == jacobi_symbol(a, m) * jacobi_symbol(b, m),
                             "jacobi multiplicativity at a=" + to_string(a));
    }));
    out.push_back(timed("arith/jacobi-vs-square-search", 0, [](Counter& c) {
        for (int64_t m = 3; m <= 199; m += 2) {
            if (!is_prime(m)) continue;
            for (i128 a = -50; a <= 50; ++a)
                c.expect(jacobi_symbol(a, m) == oracle::legendre_by_search(a, m),
                         "legendre at (" + to_string(a) + "/" + std::to_string(m) + ")");
        }
    }));
    out.push_back(timed("arith/hilbert-symmetry-bimultiplicative", 0, [](Counter& c) {
        const std::vector<i128> set = {1, -1, 3, -3, 5, -5, 2, -2, 6, -6, 10, -10};
        for (i128 a : set)
            for (i128 b : set) {
                c.expect(hilbert_symbol_local(a, b, 2) == hilbert_symbol_local(b, a, 2),
                         "hilbert symmetry");
                for (i128 d : set)
                    c.expect(hilbert_symbol_local(a, b * d, 2) ==
                                 hilbert_symbol_local(a, b, 2) * hilbert_symbol_local(a, d, 2),
                             "hilbert bimultiplicativity");
            }
    }));
    out.push_back(timed("arith/hilbert-vs-solvability-search", 0, [](Counter& c) {
        const std::vector<i128> set = {1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10};
        for (int64_t l : {2, 3, 5, 7})
            for (i128 a : set)
                for (i128 b : set)
                    c.expect(hilbert_symbol_local(a, b, l) == oracle::hilbert_by_search(a, b, l),
                             "hilbert search at l=" + std::to_string(l));
    }));

    out.push_back(timed("curves/discriminant-recomputation", 0, [](Counter& c) {
        for (int64_t p : report_detail::twin_ps_below(500))
            for (int64_t d : {1, -1, 5, 7, -13, 35, -141}) {
                if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
                for (int eps : {1, -1}) {
                    auto s = validate(eps, p, p + 2, d);
                    auto w = long_weierstrass(s);
                    i128 c4 = w.c4(), c6 = w.c6();
                    i128 disc = invariants(s).discriminant;
                    c.expect(checked_mul(1728, disc) ==
                                 checked_sub(checked_mul(c4, checked_mul(c4, c4)),
                                             checked_mul(c6, c6)),
                             "c4/c6 discriminant at p=" + std::to_string(p));
                    c.expect(disc == w.discriminant(), "b-invariant discriminant");
                }
            }
    }));
    out.push_back(timed("curves/minus-twist-involution", 0, [](Counter& c) {
        for (int64_t p : report_detail::twin_ps_below(500))
            for (int64_t d : {1, 5, -13, 35}) {
                if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
                auto s = validate(1, p, p + 2, d);
                auto t = minus_twist(minus_twist(s));
                c.expect(t.epsilon == s.epsilon && t.p == s.p && t.d_value() == s.d_value(),
                         "involution at p=" + std::to_string(p));
            }
    }));
    out.push_back(timed("curves/two-torsion-on-curve", 0, [](Counter& c) {
        int done = 0;
        uint64_t state = 88172645463325252ull;
        auto rnd = [&] {
            state ^= state << 7;
            state ^= state >> 9;
            return state;
        };
        const std::vector<int64_t> ps = report_detail::twin_ps_below(500);
        const std::vector<int64_t> ds = {1, -1, 3, 5, -7, 11, 15, -21, 35, 105, -143};
        while (done < 100) {
            int64_t p = ps[rnd() % ps.size()];
            int64_t d = ds[rnd() % ds.size()];
            if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
            auto s = validate(rnd() % 2 ? 1 : -1, p, p + 2, d);
            auto w = long_weierstrass(s);
            for (i128 x : {(i128)0, (i128)(-s.epsilon * s.p * d), (i128)(-s.epsilon * s.q * d)}) {
                i128 fx = checked_mul(checked_add(checked_mul(checked_add(x, w.a2), x), w.a4), x);
                c.expect(fx == 0, "two-torsion point off curve");
            }
            ++done;
        }
    }));

    out.push_back(timed("localdata/predicted-vs-bruteforce", 0, [&](Counter& c) {
        int pairs = 0;
        for (int64_t p : report_detail::twin_ps_below(500)) {
            ++pairs;
            for (int64_t d : {1, 5, 7, 11, 13, 35}) {
                if (d % p == 0 || d % (p + 2) == 0) continue;
                for (int eps : {1, -1}) {
                    auto s = validate(eps, p, p + 2, d);
                    std::vector<int64_t> ls = {2, s.p, s.q};
                    for (auto [di, e] : s.D.factors) {
                        (void)e;
                        ls.push_back(di);
                    }
                    for (int64_t l : {3, 5, 7})
                        if (s.p % l != 0 && s.q % l != 0 && d % l != 0) ls.push_back(l);
                    for (int64_t l : ls)
                        c.expect(predicted_count(s, l) ==
                                     reduced_point_count(s, l, budgets.point_budget),
                                 "count table at l=" + std::to_string(l) +
                                     " p=" + std::to_string(p));
                }
            }
        }
        c.expect(pairs >= 20, "need at least 20 twin pairs");
    }));
    out.push_back(timed("localdata/multiplicative-count-consistency", 0, [&](Counter& c) {
        for (int64_t p : report_detail::twin_ps_below(500))
            for (int64_t d : {1, 5, -13})
                for (int eps : {1, -1}) {
                    if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
                    auto s = validate(eps, p, p + 2, d);
                    int64_t at_p = reduced_point_count(s, s.p, budgets.point_budget);
                    bool split_p = reduction_data(s, s.p).cls == ReductionClass::split_multiplicative;
                    c.expect((at_p == s.p) == split_p, "count=p iff split at p");
                    c.expect(at_p == s.p || at_p == s.p + 2, "count at p is p or p+2");
                    int64_t at_q = reduced_point_count(s, s.q, budgets.point_budget);
                    bool split_q = reduction_data(s, s.q).cls == ReductionClass::split_multiplicative;
                    c.expect((at_q == s.q) == split_q, "count=q iff split at q");
                }
    }));
    out.push_back(timed("localdata/count-divisible-by-4", 0, [&](Counter& c) {
        for (auto [p, d] : std::vector<std::pair<int64_t, int64_t>>{
                 {3, 1}, {11, -7}, {41, 15}, {101, 35}, {191, -1}})
            for (int64_t l = 3; l <= 300; l += 2) {
                auto s = validate(1, p, p + 2, d);
                if (!is_prime(l) || s.divides_conductor(l)) continue;
                c.expect(count_points(s, l, budgets.point_budget).count % 4 == 0,
                         "4 | count at l=" + std::to_string(l));
            }
    }));
    out.push_back(timed("localdata/supersingular-iff-trace-zero", 0, [&](Counter& c) {
        for (auto [p, d] : std::vector<std::pair<int64_t, int64_t>>{
                 {3, 1}, {5, 11}, {11, -7}, {29, 13}, {101, 35}, {197, 1}}) {
            auto s = validate(1, p, p + 2, d);
            for (int64_t l = 5; l <= 200; ++l) {
                if (!is_prime(l) || s.divides_conductor(l)) continue;
                c.expect(is_supersingular(s, l) ==
                             (count_points(s, l, budgets.point_budget).trace == 0),
                         "supersingular criterion at l=" + std::to_string(l));
            }
        }
    }));
    out.push_back(timed("localdata/tate-agrees-with-tables", 0, [&](Counter& c) {
        for (int64_t p : {3, 5, 11, 17, 29, 41, 59, 71, 101})
            for (int64_t d : {1, -1, 7, 15, 35}) {
                if (std::abs(d) % p == 0 || std::abs(d) % (p + 2) == 0) continue;
                auto s = validate(p % 3 == 0 ? 1 : -1, p, p + 2, d);
                std::vector<int64_t> bad = {2, s.p, s.q};
                for (auto [di, e] : s.D.factors) {
                    (void)e;
                    bad.push_back(di);
                }
                for (int64_t l : bad) {
                    auto expect = reduction_data(s, l);
                    auto got = tate_oracle(s, l, budgets.point_budget);
                    c.expect(got.kodaira == expect.kodaira && got.tamagawa == expect.tamagawa &&
                                 got.conductor_exponent == expect.conductor_exponent &&
                                 got.disc_valuation == expect.disc_valuation &&
                                 got.cls == expect.cls,
                             "tate at l=" + std::to_string(l) + " p=" + std::to_string(p));
                }
                c.expect(tate_oracle(s, 23 % p == 0 ? 37 : 23, budgets.point_budget)
                                 .conductor_exponent == 0,
                         "tate at a good prime");
            }
    }));

    out.push_back(timed("localdata/tate-conductor-discriminant-formula", 0, [&](Counter& c) {
        // f = ord(min disc) - (components) + 1 on random curves at every
        // prime, wild ones included
        auto components = [](const KodairaSymbol& k) {
            using Kind = KodairaSymbol::Kind;
            switch (k.kind) {
                case Kind::I: return std::max(1, k.m);
                case Kind::Istar: return k.m + 5;
                case Kind::II: return 1;
                case Kind::III: return 2;
                case Kind::IV: return 3;
                case Kind::IVstar: return 7;
                case Kind::IIIstar: return 8;
                case Kind::IIstar: return 9;
            }
            return 0;
        };
        uint64_t state = 0xdeadbeefcafef00dull;
        auto rnd = [&] {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        int tried = 0;
        while (tried < 150) {
            auto pick = [&] { return (i128)(rnd() % 41) - 20; };
            WeierstrassCoeffs w{pick(), pick(), pick(), pick(), pick()};
            if (w.discriminant() == 0) continue;
            ++tried;
            for (int64_t P : {2, 3, 5, 7}) {
                auto r = tate_oracle(w, P, budgets.point_budget);
                c.expect(r.conductor_exponent ==
                             r.disc_valuation - components(r.kodaira) + 1,
                         "conductor-discriminant formula");
            }
        }
    }));

    out.push_back(timed("galois/ramification-closed-form", 0, [](Counter& c) {
        for (auto s : {validate(1, 3, 5, 1), validate(-1, 29, 31, 7), validate(1, 41, 43, -15)})
            for (int64_t l = 2; l <= 50; ++l) {
                if (!is_prime(l)) continue;
                c.expect(torsion_ramified_at(s, l, s.p).ramified == (l > 2 && l != s.p),
                         "ramification at p");
                c.expect(torsion_ramified_at(s, l, s.q).ramified == (l > 2 && l != s.q),
                         "ramification at q");
            }
    }));
    out.push_back(timed("galois/surjectivity-monotone", 0, [](Counter& c) {
        auto s = validate(1, 5, 7, 1);
        bool base = rho_surjective(s, 3109).status == SurjectivityStatus::surjective;
        c.expect(base, "large-prime clause fires");
        for (int64_t l : {3119, 3121, 4001, 4003, 7919})
            if (is_prime(l))
                c.expect(rho_surjective(s, l).status == SurjectivityStatus::surjective,
                         "monotone in l");
    }));

    out.push_back(timed("normindex/partition-consistency-bounds", 0, [&](Counter& c) {
        auto sweep = run_sweep(200, 150, {SweepCheck::delta, SweepCheck::partition}, budgets);
        c.expect(sweep.all_passed(), "norm-index sweep rows");
        c.run += sweep.run;
    }));
    out.push_back(timed("normindex/parity-equals-selmer-shift", 0, [](Counter& c) {
        for (int64_t p : {3, 11, 29, 101, 197})
            for (int64_t d : {5, 7, 11, 19, 21, 73, 141})
                for (int mu : {1, -1}) {
                    if (d % p == 0 || d % (p + 2) == 0) continue;
                    auto base = validate(1, p, p + 2, 1);
                    auto k = make_twist_field(mu, d);
                    auto pr = parity_relation(base, k);
                    c.expect(pr.beta == selmer_parity_shift(base, k).shift,
                             "parity shift at d=" + std::to_string(d));
                    c.expect(pr.beta == delta_components(base, k).total % 2, "beta = delta mod 2");
                }
    }));

    out.push_back(timed("classgroup/composition-axioms", 0, [](Counter& c) {
        using namespace formgroup_detail;
        for (i128 d : {(i128)-479, (i128)-420, (i128)229, (i128)60}) {
            auto G = build_group(d, {});
            int n = (int)G.narrow_order();
            for (int i = 0; i < n; ++i) {
                c.expect(G.mul(G.identity, i) == i, "identity");
                c.expect(G.mul(i, G.inverse(i)) == G.identity, "inverse");
                for (int j = i; j < n; j += 2)
                    for (int k = j; k < n; k += 3)
                        c.expect(G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k)), "associativity");
            }
        }
    }));
    out.push_back(timed("classgroup/dirichlet-formula", 0, [&](Counter& c) {
        for (i128 d = -5; d > -2000; --d) {
            if (!is_fundamental_discriminant(d)) continue;
            c.expect(class_group(d, budgets.class_budget()).h == oracle::dirichlet_class_number(d),
                     "Dirichlet h at d=" + to_string(d));
        }
    }));
    out.push_back(timed("classgroup/s-bounds", 0, [&](Counter& c) {
        auto E = validate(1, 11, 13, 1);
        for (i128 d : {(i128)5, (i128)17, (i128)21, (i128)37, (i128)73, (i128)105, (i128)141}) {
            auto rb = rank_bound(E, factorize(d), budgets.class_budget());
            c.expect(rb.sharp <= rb.headline, "sharp <= headline");
            c.expect(rb.s_data.s_two_rank <= rb.s_data.base.two_rank, "s-rank <= rank");
            c.expect(rb.s_data.s_set_size <= 8, "#S_K <= 8");
        }
    }));

    out.push_back(timed("lseries/hasse-and-crude-bounds", 0, [&](Counter& c) {
        auto s = validate(1, 11, 13, 1);
        auto a = an_coefficients(s, 10000, budgets.point_budget);
        for (int64_t l = 3; l <= 10000; ++l) {
            if (!is_prime(l) || s.divides_conductor(l)) continue;
            c.expect((double)a[l] * a[l] <= 4.0 * l, "Hasse at l=" + std::to_string(l));
        }
        for (int64_t n = 1; n <= 10000; ++n)
            c.expect(std::abs(a[n]) <= n, "crude bound at n=" + std::to_string(n));
    }));
    out.push_back(timed("lseries/clause-dichotomy", 0, [](Counter& c) {
        for (int64_t p : verify_detail::twin_ps_1000())
            for (int eps : {1, -1}) {
                auto s = validate(eps, p, p + 2, 1);
                bool clause1 = (eps == 1 && (p % 8 == 5 || p % 8 == 7)) ||
                               (eps == -1 && (p % 8 == 3 || p % 8 == 5));
                c.expect(clause1 == (root_number(s) == 1), "clause iff sign");
            }
    }));
    out.push_back(timed("lseries/twisted-vanishing", 0, [&](Counter& c) {
        auto s = validate(1, 11, 13, 1);
        for (int64_t d : {5, 17, 21, 29, 33, 37, 41, 53, 57, 61})
            for (int mu : {1, -1}) {
                if (d % 11 == 0 || d % 13 == 0) continue;
                if (mod_floor((i128)mu * d, 4) != 1) continue;
                auto k = make_twist_field(mu, d);
                auto lv = twisted_l_value(s, k, 2500, budgets.point_budget);
                bool vanishes = lv.formula_tag == "vanishes-by-sign";
                c.expect(vanishes == (twisted_root_number(s, k) == -1),
                         "twisted zero iff sign -1 at d=" + std::to_string(d));
            }
    }));

    return out;
}

// ---------------------------------------------------------------------------
// Acceptance criteria.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_acceptance(const Budgets& budgets = {}) {
    using namespace verify_detail;
    std::vector<CheckResult> out;

    out.push_back(timed("criterion-01/point-count-tables", 10, [&](Counter& c) {
        auto sweep = run_sweep(500, 35, {SweepCheck::counts}, budgets);
        c.expect(sweep.all_passed(),
                 "count-table sweep: " + std::to_string(sweep.failures.size()) + " failures");
        c.run += sweep.run;
    }));

    out.push_back(timed("criterion-02/anomalous-primes", 60, [&](Counter& c) {
        int specs = 0;
        for (auto [p, d] : std::vector<std::pair<int64_t, int64_t>>{
                 {3, 1}, {11, 7}, {29, 35}, {41, 1}, {59, 7}})
            for (int eps : {1, -1}) {
                ++specs;
                auto s = validate(eps, p, p + 2, d);
                auto found = anomalous_scan(s, 10000, budgets.point_budget);
                c.expect(found.empty(), "anomalous primes found at p=" + std::to_string(p));
            }
        c.expect(specs == 10, "exactly ten specs");
    }));

    out.push_back(timed("criterion-03/norm-index-consistency", 30, [&](Counter& c) {
        auto sweep = run_sweep(200, 150, {SweepCheck::delta, SweepCheck::partition}, budgets);
        c.expect(sweep.all_passed(),
                 "norm-index sweep: " + std::to_string(sweep.failures.size()) + " failures");
        c.run += sweep.run;
    }));

    out.push_back(timed("criterion-04/root-numbers", 5, [&](Counter& c) {
        auto sweep = run_sweep(1000, 1, {SweepCheck::rootnumbers}, budgets);
        c.expect(sweep.all_passed(),
                 "root-number sweep: " + std::to_string(sweep.failures.size()) + " failures");
        c.run += sweep.run;
    }));

    out.push_back(timed("criterion-05/worked-example", 0, [&](Counter& c) {
        for (int eps : {1, -1}) {
            auto s = validate(eps, 3, 5, 1);
            auto r = curve_report_json(s, {}, budgets, -119);
            c.expect(r["invariants"]["conductor"]["value"] == "480", "conductor 480");
            c.expect(r["root_number"]["global"]["value"] == -eps, "omega = -eps");
            c.expect(r["torsion"]["group"] == "Z/2 x Z/2", "Klein four torsion");
            c.expect(r["heegner"]["satisfied"] == true, "-119 = 61^2 mod 1920");
            c.expect(heegner_congruence(s, -119), "direct congruence check");
        }
    }));

    out.push_back(timed("criterion-06/tate-crosscheck", 0, [&](Counter& c) {
        int specs = 0;
        for (int64_t p : {3, 5, 11, 17, 29, 41, 59, 71, 101, 107, 137, 149, 179})
            for (int eps : {1, -1})
                for (int64_t d : {1, 7, 15}) {
                    if (d % p == 0 || d % (p + 2) == 0) continue;
                    if (specs >= 50) break;
                    ++specs;
                    auto s = validate(eps, p, p + 2, d);
                    std::vector<int64_t> bad = {2, s.p, s.q};
                    for (auto [di, e] : s.D.factors) {
                        (void)e;
                        bad.push_back(di);
                    }
                    for (int64_t l : bad) {
                        auto expect = reduction_data(s, l);
                        auto got = tate_oracle(s, l, budgets.point_budget);
                        c.expect(got.kodaira == expect.kodaira && got.tamagawa == expect.tamagawa &&
                                     got.conductor_exponent == expect.conductor_exponent &&
                                     got.cls == expect.cls,
                                 "family table at l=" + std::to_string(l));
                    }
                    if (d == 1) {
                        auto w = isogenous_curve(s);
                        for (int64_t l : {(int64_t)2, s.p, s.q}) {
                            auto expect = isogenous_local_data(s, l);
                            auto got = tate_oracle(w, l, budgets.point_budget);
                            c.expect(got.kodaira == expect.kodaira &&
                                         got.tamagawa == expect.tamagawa &&
                                         got.conductor_exponent == expect.conductor_exponent &&
                                         got.cls == expect.cls,
                                     "2-isogenous table at l=" + std::to_string(l));
                        }
                    }
                }
        c.expect(specs >= 50, "at least 50 specs");
    }));

    out.push_back(timed("criterion-07/class-groups", 60, [&](Counter& c) {
        for (i128 d = -3; d > -2000; --d) {
            if (!is_fundamental_discriminant(d)) continue;
            auto g = class_group(d, budgets.class_budget());
            c.expect(g.h == oracle::imaginary_class_number_by_ideals(d),
                     "imaginary h at d=" + to_string(d));
            c.expect(g.two_rank == (int)factorize(d).num_primes() - 1,
                     "genus 2-rank at d=" + to_string(d));
        }
        for (i128 d = 5; d < 500; ++d) {
            if (!is_fundamental_discriminant(d)) continue;
            c.expect(class_group(d, budgets.class_budget()).h ==
                         oracle::real_class_number_by_ideal_cycles(d),
                     "real h at d=" + to_string(d));
        }
    }));

    out.push_back(timed("criterion-08/l-value-formulas", 30, [&](Counter& c) {
        // vanishing clause: exact zeros
        for (auto s : {validate(1, 3, 5, 1), validate(1, 17, 19, 1), validate(-1, 17, 19, 1),
                       validate(-1, 71, 73, 1)}) {
            auto lv = l_value_at_1(s, 400, budgets.point_budget);
            c.expect(lv.value == 0.0 && lv.formula_tag == "vanishes-by-sign", "exact zero");
        }
        // series clause: Cauchy stability under doubling for ten specs
        int stable = 0;
        for (auto [eps, p] : std::vector<std::pair<int, int64_t>>{{1, 5},
                                                                  {1, 29},
                                                                  {1, 71},
                                                                  {1, 101},
                                                                  {1, 149},
                                                                  {-1, 3},
                                                                  {-1, 11},
                                                                  {-1, 59},
                                                                  {-1, 101},
                                                                  {-1, 227}}) {
            auto s = validate(eps, p, p + 2, 1);
            auto v1 = l_value_at_1(s, 4000, budgets.point_budget);
            auto v2 = l_value_at_1(s, 8000, budgets.point_budget);
            c.expect(std::abs(v1.value - v2.value) <= v1.tail_bound + 1e-15,
                     "stability at p=" + std::to_string(p));
            ++stable;
        }
        c.expect(stable == 10, "ten stability specs");
        // r = 0 integral form vs series form
        for (auto s : {validate(1, 5, 7, 1), validate(-1, 3, 5, 1), validate(1, 3, 5, 1),
                       validate(-1, 17, 19, 1)}) {
            auto series = l_value_at_1(s, 1200, budgets.point_budget);
            auto integral = l_derivative_at_1(s, 0, 1200, budgets.point_budget);
            c.expect(std::abs(integral.value - series.value) <=
                         1e-9 * (std::abs(series.value) + 1e-30) + 1e-12,
                     "r=0 integral vs series");
        }
    }));

    out.push_back(timed("criterion-09/parity-suite", 0, [&](Counter& c) {
        for (int64_t p : report_detail::twin_ps_below(500))
            for (int eps : {1, -1}) {
                auto pc = parity_check(validate(eps, p, p + 2, 1));
                c.expect(pc.verdict != ParityVerdict::inconsistent,
                         "inconsistent at p=" + std::to_string(p));
                bool family12 = (eps == 1 && p % 8 == 5) || (eps == -1 && (p % 8 == 3 || p % 8 == 5));
                if (family12)
                    c.expect(pc.verdict == ParityVerdict::consistent,
                             "rank-0 family must be consistent");
            }
    }));

    return out;
}

// Everything: property suites, acceptance criteria, and the aggregate
// criterion that the property suites themselves stay green and fast.
inline std::vector<CheckResult> run_verification(const Budgets& budgets = {}) {
    auto props = run_property_suites(budgets);
    auto acc = run_acceptance(budgets);
    double prop_seconds = 0;
    bool prop_pass = true;
    for (auto& r : props) {
        prop_seconds += r.seconds;
        prop_pass = prop_pass && r.pass;
    }
    CheckResult agg;
    agg.name = "criterion-10/property-suites";
    agg.pass = prop_pass && prop_seconds < 300.0;
    agg.seconds = prop_seconds;
    agg.detail = std::to_string(props.size()) + " suites" + (prop_pass ? "" : ", some failed");
    std::vector<CheckResult> out;
    out.insert(out.end(), props.begin(), props.end());
    out.insert(out.end(), acc.begin(), acc.end());
    out.push_back(agg);
    return out;
}

} // namespace twincurve
