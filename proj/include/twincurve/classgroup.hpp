#pragma once

// Class groups of quadratic fields via binary quadratic forms: reduced-form
// enumeration and Gauss composition for imaginary discriminants, reduced
// cycles for real ones (narrow group first, then the quotient to the wide
// group, with the fundamental-unit norm cross-checked against the continued
// fraction of the radicand).  Composition follows the ideal-multiplication
// formulas as in Cohen, A Course in Computational Algebraic Number Theory.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "twincurve/arith.hpp"
#include "twincurve/curves.hpp"
#include "twincurve/error.hpp"

namespace twincurve {

struct ClassGroupBudget {
    i128 imaginary_bound = 1000000;
    i128 real_bound = 100000;
};

struct ClassGroupData {
    i128 disc = 0;
    int64_t h = 1;                            // class number (wide/ordinary)
    std::vector<int64_t> elementary_divisors; // d_1 | d_2 | ..., product h
    int two_rank = 0;                         // count of even divisors
    // real-quadratic extras (narrow_h = h, unit_norm = 0 for imaginary discs)
    int64_t narrow_h = 1;
    int unit_norm = 0;
};

enum class SplitType { split, inert, ramified };

struct SPlace {
    int64_t over = 0; // the rational prime below
    SplitType type = SplitType::inert;
};

struct SClassData {
    ClassGroupData base;
    std::vector<SPlace> s_primes; // finite places over {2, p, q}
    int s_two_rank = 0;
    int s_set_size = 0; // #S_K, infinite places included
};

// ---------------------------------------------------------------------------
// Forms.
// ---------------------------------------------------------------------------

struct Form {
    i128 a = 1, b = 0, c = 0;
    auto operator<=>(const Form&) const = default;
};

namespace formgroup_detail {

struct Xgcd {
    i128 g, x, y; // g = x*u + y*v
};

inline Xgcd xgcd(i128 u, i128 v) {
    if (v == 0) return {u < 0 ? -u : u, u < 0 ? (i128)-1 : (i128)1, 0};
    i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    i128 a = u, b = v;
    while (b != 0) {
        i128 q = a / b;
        i128 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

inline i128 form_c(i128 a, i128 b, i128 disc) {
    i128 num = checked_sub(checked_mul(b, b), disc);
    require(mod_floor(num, checked_mul(4, a)) == 0, errc::internal, "form coefficient not integral");
    return num / (4 * a);
}

inline bool primitive(const Form& f) {
    return gcd128(gcd128(abs128(f.a), abs128(f.b)), abs128(f.c)) == 1;
}

// Gauss reduction of a positive definite form (disc < 0).
inline Form reduce_imaginary(Form f, i128 disc) {
    require(f.a > 0, errc::internal, "positive definite form expected");
    for (;;) {
        // normalize b into (-a, a]
        i128 b = mod_floor(f.b, 2 * f.a);
        if (b > f.a) b -= 2 * f.a;
        f.b = b;
        f.c = form_c(f.a, f.b, disc);
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            f = Form{f.c, -f.b, f.a};
            continue;
        }
        return f;
    }
}

inline bool is_reduced_indefinite(const Form& f, int64_t s) {
    i128 ta = 2 * abs128(f.a);
    return f.b >= 1 && f.b <= s && f.b >= s + 1 - ta && ta - f.b <= s;
}

// rho step for indefinite forms: (a,b,c) -> (c, r, ...) with r = -b (mod 2|c|)
// in the reduction window.
inline Form rho_indefinite(const Form& f, i128 disc, int64_t s) {
    i128 ac = abs128(f.c);
    i128 r;
    if (ac > s) {
        r = mod_floor(-f.b, 2 * ac);
        if (r > ac) r -= 2 * ac;
    } else {
        r = (i128)s - mod_floor((i128)s + f.b, 2 * ac);
    }
    return Form{f.c, r, form_c(f.c, r, disc)};
}

inline Form reduce_indefinite(Form f, i128 disc, int64_t s) {
    int guard = 0;
    while (!is_reduced_indefinite(f, s)) {
        f = rho_indefinite(f, disc, s);
        require(++guard < 100000, errc::internal, "indefinite reduction failed to terminate");
    }
    return f;
}

// Composition through ideal multiplication:
//   I_i = [a_i, (b_i + sqrt(disc))/2],  I_1 I_2 = g * [a3, (b3 + sqrt(disc))/2]
// with g = gcd(a1, a2, (b1+b2)/2).
inline Form compose_raw(const Form& f1, const Form& f2, i128 disc) {
    i128 s = (f1.b + f2.b) / 2;
    auto e1 = xgcd(f1.a, f2.a);
    auto e2 = xgcd(e1.g, s);
    i128 g = e2.g;
    i128 y = checked_mul(e2.x, e1.y); // coefficient of a2 in g = x*a1 + y*a2 + z*s
    i128 z = e2.y;
    i128 a3 = checked_mul(f1.a / g, f2.a / g);
    i128 c2 = form_c(f2.a, f2.b, disc);
    i128 t = checked_sub(checked_mul(y, checked_sub(f1.b, f2.b)), checked_mul(2, checked_mul(z, c2)));
    i128 b3 = mod_floor(checked_add(f2.b, checked_mul(f2.a / g, t)), 2 * a3);
    Form out{a3, b3, form_c(a3, b3, disc)};
    require(primitive(out), errc::internal, "composition lost primitivity");
    return out;
}

// The class group presented on explicit representatives with composition.
struct FormGroup {
    i128 disc = 0;
    int64_t sqrt_disc = 0;             // isqrt(disc) for real discs
    std::vector<Form> reps;            // one canonical form per narrow class
    std::map<Form, int> class_of_form; // every reduced form -> narrow class id
    int identity = 0;
    // wide structure (real discs): classes glued by the negated principal form
    int neg_principal = 0; // narrow class of the norm(-1)-marker
    int unit_norm = -1;    // +1 or -1

    int64_t narrow_order() const { return (int64_t)reps.size(); }

    int klass(Form f) const {
        Form r = disc < 0 ? reduce_imaginary(std::move(f), disc)
                          : reduce_indefinite(std::move(f), disc, sqrt_disc);
        auto it = class_of_form.find(r);
        require(it != class_of_form.end(), errc::internal, "reduced form missing from the table");
        return it->second;
    }

    Form principal_form() const {
        i128 b0 = mod_floor(disc, 2);
        return Form{1, b0, form_c(1, b0, disc)};
    }

    int mul(int i, int j) const { return klass(compose_raw(reps[i], reps[j], disc)); }

    int pw(int i, i128 e) const {
        int acc = identity, base = i;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    int inverse(int i) const {
        Form f = reps[i];
        return klass(Form{f.a, -f.b, f.c});
    }
};

inline std::vector<Form> enumerate_reduced_imaginary(i128 disc) {
    std::vector<Form> out;
    for (i128 a = 1; 3 * a * a <= -disc; ++a) {
        for (i128 b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - disc, 2) != 0) continue;
            i128 num = b * b - disc;
            if (mod_floor(num, 4 * a) != 0) continue;
            i128 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            Form f{a, b, c};
            if (primitive(f)) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Form> enumerate_reduced_indefinite(i128 disc) {
    int64_t s = isqrt64(to_i64(disc));
    std::vector<Form> out;
    for (i128 b = 1; b <= s; ++b) {
        if (mod_floor(b - disc, 2) != 0) continue;
        i128 num = b * b - disc; // negative: a*c = num/4 < 0
        for (i128 a = 1; 2 * a <= s + b; ++a) {
            if (b < s + 1 - 2 * a || 2 * a - b > s) continue;
            if (mod_floor(num, 4 * a) != 0) continue;
            i128 c = num / (4 * a);
            for (i128 sign : {(i128)1, (i128)-1}) {
                Form f{sign * a, b, sign < 0 ? -c : c};
                // same reduction window for negative leading coefficient
                if (primitive(f)) out.push_back(f);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Period parity of the continued fraction of sqrt(m) decides the norm of the
// fundamental unit of Z[sqrt(m)], which matches the maximal order's because
// the unit index is odd.
inline int unit_norm_by_continued_fraction(i128 disc) {
    i128 m = mod_floor(disc, 4) == 0 ? disc / 4 : disc;
    int64_t m64 = to_i64(m);
    int64_t a0 = isqrt64(m64);
    int64_t P = a0, Q = m64 - a0 * a0;
    require(Q != 0, errc::domain, "discriminant must not be a square");
    int len = 1;
    while (Q != 1) {
        int64_t a = (a0 + P) / Q;
        P = a * Q - P;
        Q = (m64 - P * P) / Q;
        ++len;
    }
    return len % 2 == 0 ? 1 : -1;
}

inline FormGroup build_group(i128 disc, const ClassGroupBudget& budget) {
    require(is_fundamental_discriminant(disc), errc::domain,
            to_string(disc) + " is not a fundamental discriminant");
    FormGroup G;
    G.disc = disc;
    if (disc < 0) {
        require(-disc <= budget.imaginary_bound, errc::range, "imaginary discriminant over budget");
        G.reps = enumerate_reduced_imaginary(disc);
        for (size_t i = 0; i < G.reps.size(); ++i) G.class_of_form[G.reps[i]] = (int)i;
        G.identity = G.klass(G.principal_form());
        G.neg_principal = G.identity;
        G.unit_norm = 0;
        return G;
    }
    require(disc <= budget.real_bound, errc::range, "real discriminant over budget");
    G.sqrt_disc = isqrt64(to_i64(disc));
    auto forms = enumerate_reduced_indefinite(disc);
    // partition into rho-cycles: one narrow class per cycle
    std::map<Form, int> cycle_of;
    int ncycles = 0;
    for (const auto& f : forms) {
        if (cycle_of.count(f)) continue;
        std::vector<Form> cycle;
        Form g = f;
        while (!cycle_of.count(g)) {
            cycle_of[g] = ncycles;
            cycle.push_back(g);
            g = rho_indefinite(g, disc, G.sqrt_disc);
            require(is_reduced_indefinite(g, G.sqrt_disc), errc::internal,
                    "rho left the reduced set");
        }
        require(g == f, errc::internal, "rho cycles must close at their starting form");
        G.reps.push_back(*std::min_element(cycle.begin(), cycle.end()));
        ++ncycles;
    }
    G.class_of_form = std::move(cycle_of);
    // canonical representatives need positive leading coefficient for the
    // ideal-style composition
    for (auto& rep : G.reps)
        if (rep.a < 0) {
            Form g = rep;
            do g = rho_indefinite(g, disc, G.sqrt_disc);
            while (g.a < 0);
            rep = g;
        }
    G.identity = G.klass(G.principal_form());
    i128 b0 = mod_floor(disc, 2);
    G.neg_principal = G.klass(Form{-1, b0, -form_c(1, b0, disc)});
    G.unit_norm = G.neg_principal == G.identity ? -1 : 1;
    require(G.unit_norm == unit_norm_by_continued_fraction(disc), errc::internal,
            "fundamental unit norm: cycle route and continued fraction disagree");
    return G;
}

// wide classes = narrow classes glued by the negated-principal marker
struct WideGroup {
    const FormGroup* G = nullptr;
    std::vector<int> wide_id_of_narrow;
    std::vector<int> rep_narrow; // a narrow representative per wide class
    int identity = 0;

    int64_t order() const { return (int64_t)rep_narrow.size(); }
    int mul(int i, int j) const {
        return wide_id_of_narrow[G->mul(rep_narrow[i], rep_narrow[j])];
    }
    int pw(int i, i128 e) const {
        int acc = identity, base = i;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }
};

inline WideGroup build_wide(const FormGroup& G) {
    WideGroup W;
    W.G = &G;
    W.wide_id_of_narrow.assign(G.narrow_order(), -1);
    for (int i = 0; i < (int)G.narrow_order(); ++i) {
        if (W.wide_id_of_narrow[i] >= 0) continue;
        int id = (int)W.rep_narrow.size();
        W.wide_id_of_narrow[i] = id;
        int partner = G.mul(i, G.neg_principal);
        require(W.wide_id_of_narrow[partner] < 0 || partner == i, errc::internal,
                "wide gluing must pair fresh classes");
        W.wide_id_of_narrow[partner] = id;
        W.rep_narrow.push_back(i);
    }
    W.identity = W.wide_id_of_narrow[G.identity];
    return W;
}

// Elementary divisors of a finite abelian group from solution counts of
// x^(P^k) = e; the counts determine the P-part partitions uniquely.
template <class MulPow>
inline std::vector<int64_t> divisors_by_counting(int64_t order, const MulPow& pw, int identity) {
    std::vector<std::pair<int64_t, std::vector<int>>> parts; // (P, exponents, largest first)
    for (auto [P, e] : factorize(order).factors) {
        (void)e;
        std::vector<int> r; // r[k-1] = #cyclic factors with P-exponent >= k
        int64_t nprev = 1;
        i128 pk = P;
        for (;;) {
            int64_t nk = 0;
            for (int x = 0; x < order; ++x)
                if (pw(x, pk) == identity) ++nk;
            if (nk == nprev) break;
            require(nk % nprev == 0, errc::internal, "solution counts must divide");
            int64_t ratio = nk / nprev;
            int rk = 0;
            while (ratio > 1) {
                require(ratio % P == 0, errc::internal, "solution-count ratio must be a P power");
                ratio /= P;
                ++rk;
            }
            r.push_back(rk);
            nprev = nk;
            pk = checked_mul(pk, P);
        }
        require(!r.empty(), errc::internal, "prime divides the order but has no torsion");
        std::vector<int> exps(r[0], 0);
        for (size_t k = 0; k < r.size(); ++k)
            for (int j = 0; j < r[k]; ++j) ++exps[j];
        parts.emplace_back(P, std::move(exps));
    }
    size_t maxlen = 0;
    for (auto& [P, exps] : parts) {
        (void)P;
        maxlen = std::max(maxlen, exps.size());
    }
    // align largest exponents together, then flip to the ascending chain
    std::vector<int64_t> divisors(maxlen, 1);
    for (auto& [P, exps] : parts)
        for (size_t j = 0; j < exps.size(); ++j)
            divisors[j] = to_i64(checked_mul(divisors[j], checked_pow(P, exps[j])));
    std::reverse(divisors.begin(), divisors.end());
    i128 prod = 1;
    for (auto d : divisors) prod = checked_mul(prod, d);
    require(prod == order, errc::internal, "elementary divisors must multiply to the order");
    return divisors;
}

} // namespace formgroup_detail

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

inline ClassGroupData class_group(i128 disc, const ClassGroupBudget& budget = {}) {
    using namespace formgroup_detail;
    auto G = build_group(disc, budget);
    ClassGroupData out;
    out.disc = disc;
    out.narrow_h = G.narrow_order();
    out.unit_norm = G.unit_norm;
    if (disc < 0) {
        out.h = G.narrow_order();
        out.elementary_divisors = divisors_by_counting(
            out.h, [&](int x, i128 e) { return G.pw(x, e); }, G.identity);
    } else {
        auto W = build_wide(G);
        out.h = W.order();
        out.elementary_divisors = divisors_by_counting(
            out.h, [&](int x, i128 e) { return W.pw(x, e); }, W.identity);
    }
    out.two_rank = (int)std::count_if(out.elementary_divisors.begin(),
                                      out.elementary_divisors.end(),
                                      [](int64_t d) { return d % 2 == 0; });
    // genus theory: 2-rank is t-1 (imaginary) or t-1 / t-2 (real), t = #primes | disc
    int t = (int)factorize(disc).num_primes();
    if (disc < 0)
        require(out.two_rank == t - 1, errc::internal, "genus-theory 2-rank failed (imaginary)");
    else
        require(out.two_rank == t - 1 || out.two_rank == t - 2, errc::internal,
                "genus-theory 2-rank failed (real)");
    return out;
}

inline SClassData s_class_group(i128 disc, int64_t p, int64_t q,
                                const ClassGroupBudget& budget = {}) {
    using namespace formgroup_detail;
    auto G = build_group(disc, budget);
    auto W = disc > 0 ? build_wide(G) : WideGroup{};
    auto wide_of = [&](int narrow) { return disc > 0 ? W.wide_id_of_narrow[narrow] : narrow; };
    int64_t order = disc > 0 ? W.order() : G.narrow_order();
    int identity = disc > 0 ? W.identity : G.identity;
    auto mul = [&](int i, int j) {
        if (disc < 0) return G.mul(i, j);
        return W.mul(i, j);
    };

    SClassData out;
    out.base = class_group(disc, budget);
    std::set<int> gens;
    for (int64_t l : {(int64_t)2, p, q}) {
        int chi = kronecker_symbol(disc, l);
        if (chi == -1) {
            out.s_primes.push_back({l, SplitType::inert}); // (l) is principal
            continue;
        }
        out.s_primes.push_back({l, chi == 0 ? SplitType::ramified : SplitType::split});
        if (chi == 1) out.s_primes.push_back({l, SplitType::split}); // the conjugate place
        // the prime over l corresponds to a form (l, b, *)
        bool found = false;
        for (i128 b = 0; b < 2 * l && !found; ++b) {
            if (mod_floor(b - disc, 2) != 0) continue;
            i128 num = b * b - disc;
            if (mod_floor(num, 4 * l) != 0) continue;
            Form f{l, b, num / (4 * l)};
            if (!primitive(f)) continue;
            gens.insert(wide_of(G.klass(f)));
            found = true;
        }
        require(found, errc::internal, "no form represents the prime over l");
    }
    // subgroup generated by the prime classes
    std::set<int> H{identity};
    for (;;) {
        std::set<int> next = H;
        for (int x : H)
            for (int g : gens) next.insert(mul(x, g));
        if (next.size() == H.size()) break;
        H = std::move(next);
    }
    require(order % (int64_t)H.size() == 0, errc::internal, "subgroup order must divide h");
    int64_t quotient_order = order / (int64_t)H.size();
    // 2-rank of the quotient: #{x : x^2 in H} = |H| * 2^rank
    int64_t sq_in_H = 0;
    for (int x = 0; x < order; ++x) {
        int xx = mul(x, x);
        if (H.count(xx)) ++sq_in_H;
    }
    require(sq_in_H % (int64_t)H.size() == 0, errc::internal, "square-count must be divisible");
    int64_t ratio = sq_in_H / (int64_t)H.size();
    int rank = 0;
    while (ratio > 1) {
        require(ratio % 2 == 0, errc::internal, "square-count ratio must be a 2-power");
        ratio /= 2;
        ++rank;
    }
    out.s_two_rank = rank;
    require(out.s_two_rank <= out.base.two_rank, errc::internal,
            "quotient 2-rank exceeds the group 2-rank");
    (void)quotient_order;
    out.s_set_size = (disc < 0 ? 1 : 2);
    for (auto& pl : out.s_primes) {
        (void)pl;
        ++out.s_set_size;
    }
    require(out.s_set_size <= 8, errc::internal, "#S_K must be at most 8");
    return out;
}

struct RankBound {
    int64_t headline = 14; // 14 + 2 * s_two_rank
    int64_t sharp = 14;    // 2 * (#S_K + s_two_rank) - 2
    SClassData s_data;
};

// Descent bound on rank E(K), K = Q(sqrt(D)) with positive square-free D.
inline RankBound rank_bound(const CurveSpec& s, const FactoredInteger& D,
                            const ClassGroupBudget& budget = {}) {
    i128 d = D.value();
    require(d > 1 && D.is_squarefree() && D.is_odd(), errc::domain,
            "rank bound needs positive odd square-free D > 1");
    require(mod_floor(d, s.p) != 0 && mod_floor(d, s.q) != 0, errc::domain,
            "twist must be coprime to pq");
    i128 disc = mod_floor(d, 4) == 1 ? d : checked_mul(4, d);
    RankBound out;
    out.s_data = s_class_group(disc, s.p, s.q, budget);
    out.headline = 14 + 2 * out.s_data.s_two_rank;
    out.sharp = 2 * (out.s_data.s_set_size + out.s_data.s_two_rank) - 2;
    return out;
}

} // namespace twincurve
