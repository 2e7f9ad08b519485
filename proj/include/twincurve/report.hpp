#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "twincurve/classgroup.hpp"
#include "twincurve/curves.hpp"
#include "twincurve/galois.hpp"
#include "twincurve/localdata.hpp"
#include "twincurve/lseries.hpp"
#include "twincurve/normindex.hpp"
#include "twincurve/tate.hpp"

namespace twincurve {

using json = nlohmann::ordered_json;

// Runtime budgets; the CLI populates this from the config file and flags.
struct Budgets {
    int64_t point_budget = 100000;
    i128 classgroup_imaginary = 1000000;
    i128 classgroup_real = 100000;
    int64_t series_budget = 100000;
    unsigned workers = std::thread::hardware_concurrency();

    ClassGroupBudget class_budget() const { return {classgroup_imaginary, classgroup_real}; }
};

namespace report_detail {

// Every numeric field carries its provenance: closed table vs brute force vs
// formula, so reports stay auditable.
inline json tagged(const json& value, const char* provenance) {
    return json{{"value", value}, {"provenance", provenance}};
}

inline json tagged_big(i128 value, const char* provenance) {
    return tagged(to_string(value), provenance);
}

inline json local_to_json(const LocalReductionData& d, const char* provenance) {
    return json{{"l", d.l},
                {"class", reduction_class_name(d.cls)},
                {"kodaira", d.kodaira.str()},
                {"tamagawa", tagged(d.tamagawa, provenance)},
                {"conductor_exponent", tagged(d.conductor_exponent, provenance)},
                {"disc_valuation", tagged(d.disc_valuation, provenance)}};
}

} // namespace report_detail

// Root number of E^eps_D itself for any valid spec, obtained by normalizing
// the twist to the discriminant-coprime case (mu*D = 1 mod 4) and flipping
// eps for the sign.
inline int root_number_of_spec(const CurveSpec& s) {
    int64_t d = s.d_value();
    if (d == 1) return root_number(s);
    if (d == -1) return root_number(validate(-s.epsilon, s.p, s.q, 1));
    int64_t t = mod_floor(d, 4) == 1 ? d : -d;
    int eps = mod_floor(d, 4) == 1 ? s.epsilon : -s.epsilon;
    auto base = validate(eps, s.p, s.q, 1);
    return twisted_root_number(base, make_twist_field(t > 0 ? 1 : -1, std::abs(t)));
}

inline json curve_report_json(const CurveSpec& s, const std::vector<int>& mus = {},
                              const Budgets& budgets = {}, i128 heegner_disc = 0) {
    using report_detail::local_to_json;
    using report_detail::tagged;
    using report_detail::tagged_big;
    json out;
    out["spec"] = {{"epsilon", s.epsilon}, {"p", s.p}, {"q", s.q}, {"D", s.d_value()}};

    auto inv = invariants(s);
    out["invariants"] = {{"discriminant", tagged_big(inv.discriminant, "closed-form")},
                         {"conductor", tagged_big(inv.conductor, "closed-form")},
                         {"j_numerator", tagged_big(inv.j_numerator, "closed-form")},
                         {"j_denominator", tagged_big(inv.j_denominator, "closed-form")}};

    json locals = json::array();
    std::vector<int64_t> bad = {2, s.p, s.q};
    for (auto [di, e] : s.D.factors) {
        (void)e;
        bad.push_back(di);
    }
    for (int64_t l : bad) locals.push_back(local_to_json(reduction_data(s, l), "closed-table"));
    out["local_data"] = locals;

    out["torsion"] = {{"group", torsion_group(s).name()}, {"provenance", "verified-by-search"}};

    json rn;
    rn["global"] = tagged(root_number_of_spec(s), s.d_abs() == 1 ? "closed-table" : "character-twist");
    if (s.d_abs() == 1) {
        auto c = root_number_constructive(s);
        rn["constructive"] = {{"omega_inf", c.omega_inf},
                              {"omega_2", c.omega_2},
                              {"omega_p", c.omega_p},
                              {"omega_q", c.omega_q},
                              {"coker_size", c.coker_size},
                              {"hilbert_factor", c.hilbert_factor},
                              {"global", c.global},
                              {"provenance", "constructive-product"}};
    }
    out["root_number"] = rn;

    if (s.d_abs() == 1) {
        auto pc = parity_check(s);
        out["parity"] = {{"verdict", pc.verdict == ParityVerdict::consistent  ? "consistent"
                                     : pc.verdict == ParityVerdict::inconsistent ? "inconsistent"
                                                                                 : "rank-unknown"},
                         {"rank", pc.rank},
                         {"family", pc.family},
                         {"provenance", "imported-rank-table"}};
        auto lv = l_value_at_1(s, 2000, budgets.point_budget);
        out["l_value"] = {{"value", lv.value},
                          {"truncation", lv.truncation},
                          {"tail_bound", lv.tail_bound},
                          {"formula", lv.formula_tag},
                          {"provenance", "series"}};
    } else {
        out["parity"] = {{"verdict", "rank-unknown"}, {"rank", -1}, {"family", ""},
                         {"provenance", "imported-rank-table"}};
    }

    json surj;
    for (int64_t l : {3, 5, 7})
        surj[std::to_string(l)] =
            rho_surjective(s, l).status == SurjectivityStatus::surjective ? "surjective" : "unknown";
    out["galois"] = {{"surjectivity", surj}, {"provenance", "sufficient-criteria"}};

    if (heegner_disc != 0)
        out["heegner"] = {{"disc", to_string(heegner_disc)},
                          {"satisfied", heegner_congruence(s, heegner_disc)},
                          {"provenance", "exhaustive-search"}};

    if (!mus.empty()) {
        json nis = json::array();
        auto base = validate(s.epsilon, s.p, s.q, 1);
        for (int mu : mus) {
            require(s.d_abs() > 1 || mu == -1, errc::domain,
                    "norm index over Q(sqrt(mu D)) needs |D| > 1 or mu = -1");
            auto k = make_twist_field(mu, s.d_abs());
            auto comp = delta_components(base, k);
            auto pr = parity_relation(base, k);
            nis.push_back({{"mu", mu},
                           {"disc", tagged_big(k.disc(), "closed-form")},
                           {"delta_inf", comp.delta_inf},
                           {"delta_g", comp.delta_g},
                           {"delta_m", comp.delta_m},
                           {"delta_a", tagged(comp.delta_a, "kramer-tunnell")},
                           {"total", comp.total},
                           {"case", comp.case_label},
                           {"parity_beta", pr.beta},
                           {"parity_clause", pr.clause},
                           {"provenance", "component-formulas"}});
        }
        out["norm_index"] = nis;
    }
    return out;
}

inline std::string curve_report_text(const json& r) {
    std::ostringstream os;
    auto& spec = r["spec"];
    os << "curve: eps=" << spec["epsilon"].get<int>() << " p=" << spec["p"].get<int64_t>()
       << " q=" << spec["q"].get<int64_t>() << " D=" << spec["D"].get<int64_t>() << "\n";
    os << "conductor: " << r["invariants"]["conductor"]["value"].get<std::string>()
       << "  discriminant: " << r["invariants"]["discriminant"]["value"].get<std::string>() << "\n";
    os << "torsion: " << r["torsion"]["group"].get<std::string>() << "\n";
    os << "root number: " << r["root_number"]["global"]["value"].get<int>() << "\n";
    os << "parity: " << r["parity"]["verdict"].get<std::string>() << "\n";
    for (auto& ld : r["local_data"])
        os << "  at " << ld["l"].get<int64_t>() << ": " << ld["kodaira"].get<std::string>()
           << " c=" << ld["tamagawa"]["value"].get<int64_t>()
           << " f=" << ld["conductor_exponent"]["value"].get<int>() << " ("
           << ld["class"].get<std::string>() << ")\n";
    if (r.contains("l_value"))
        os << "L(1) = " << r["l_value"]["value"].get<double>() << " (" <<
            r["l_value"]["formula"].get<std::string>() << ")\n";
    if (r.contains("heegner"))
        os << "Heegner congruence for disc " << r["heegner"]["disc"].get<std::string>() << ": "
           << (r["heegner"]["satisfied"].get<bool>() ? "holds" : "fails") << "\n";
    if (r.contains("norm_index"))
        for (auto& ni : r["norm_index"])
            os << "norm index mu=" << ni["mu"].get<int>() << ": total " << ni["total"].get<int>()
               << " case " << ni["case"].get<std::string>() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Sweeps.
// ---------------------------------------------------------------------------

enum class SweepCheck { counts, delta, rootnumbers, anomalous, partition };

inline SweepCheck sweep_check_from_name(const std::string& name) {
    if (name == "counts") return SweepCheck::counts;
    if (name == "delta") return SweepCheck::delta;
    if (name == "rootnumbers") return SweepCheck::rootnumbers;
    if (name == "anomalous") return SweepCheck::anomalous;
    if (name == "partition") return SweepCheck::partition;
    fail(errc::domain, "unknown sweep check: " + name);
}

struct SweepRow {
    int epsilon = 0; // 0 when not applicable
    int64_t p = 0, q = 0, d = 0;
    int mu = 0; // 0 when not applicable
    std::string check;
    std::string expected;
    std::string actual;
    bool pass = true;
};

struct SweepResult {
    int64_t p_max = 0, d_max = 0;
    std::vector<std::string> checks;
    int64_t run = 0;
    int64_t passed = 0;
    std::vector<SweepRow> failures;
    std::vector<SweepRow> rows;

    bool all_passed() const { return failures.empty(); }

    std::string csv() const {
        std::ostringstream os;
        os << "epsilon,p,q,D,mu,check,expected,actual,pass\n";
        for (const auto& r : rows) {
            if (r.epsilon)
                os << r.epsilon;
            os << ',' << r.p << ',' << r.q << ',' << r.d << ',';
            if (r.mu) os << r.mu;
            os << ',' << r.check << ',' << r.expected << ',' << r.actual << ','
               << (r.pass ? 1 : 0) << "\n";
        }
        return os.str();
    }
};

namespace report_detail {

template <class F>
inline void parallel_for(size_t n, unsigned workers, const F& f) {
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    unsigned count = std::min<size_t>(workers, n);
    for (unsigned w = 0; w < count; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    for (auto& t : pool) t.join();
}

inline std::vector<int64_t> twin_ps_below(int64_t p_max) {
    std::vector<int64_t> out;
    for (int64_t p = 3; p < p_max; p += 2)
        if (is_prime(p) && is_prime(p + 2)) out.push_back(p);
    return out;
}

inline std::vector<int64_t> squarefree_odd_below(int64_t d_max) {
    std::vector<int64_t> out;
    for (int64_t d = 1; d <= d_max; d += 2)
        if (factorize(d).is_squarefree()) out.push_back(d);
    return out;
}

} // namespace report_detail

inline SweepResult run_sweep(int64_t p_max, int64_t d_max, const std::set<SweepCheck>& checks,
                             const Budgets& budgets = {}) {
    using namespace report_detail;
    require(p_max >= 3 && p_max <= kMaxP, errc::range, "p_max outside the supported window");
    require(d_max >= 1 && d_max <= kMaxAbsD, errc::range, "d_max outside the supported window");
    SweepResult out;
    out.p_max = p_max;
    out.d_max = d_max;
    auto ps = twin_ps_below(p_max);

    // each task fills its own row bucket; buckets are concatenated in order
    std::vector<std::vector<SweepRow>> buckets;
    std::vector<std::function<void(std::vector<SweepRow>&)>> tasks;

    if (checks.count(SweepCheck::counts)) {
        out.checks.push_back("counts");
        for (int64_t p : ps)
            for (int64_t d : {1, 5, 7, 11, 13, 17, 35}) {
                if (d > d_max || d % p == 0 || d % (p + 2) == 0) continue;
                for (int eps : {1, -1})
                    tasks.push_back([=, &budgets](std::vector<SweepRow>& rows) {
                        auto s = validate(eps, p, p + 2, d);
                        std::vector<int64_t> ls = {2};
                        for (auto [di, e] : s.D.factors) {
                            (void)e;
                            ls.push_back(di);
                        }
                        for (int64_t l : {3, 5, 7})
                            if (s.p % l != 0 && s.q % l != 0 && s.d_abs() % l != 0) ls.push_back(l);
                        for (int64_t l : ls) {
                            int64_t want = predicted_count(s, l);
                            int64_t got = reduced_point_count(s, l, budgets.point_budget);
                            rows.push_back({eps, p, p + 2, d, 0, "counts:l=" + std::to_string(l),
                                            std::to_string(want), std::to_string(got), want == got});
                        }
                    });
            }
    }
    if (checks.count(SweepCheck::delta) || checks.count(SweepCheck::partition)) {
        bool do_delta = checks.count(SweepCheck::delta);
        bool do_part = checks.count(SweepCheck::partition);
        if (do_delta) out.checks.push_back("delta");
        if (do_part) out.checks.push_back("partition");
        auto ds = squarefree_odd_below(d_max);
        for (int64_t p : ps)
            for (int64_t d : ds) {
                if (d % p == 0 || d % (p + 2) == 0) continue;
                for (int mu : {1, -1}) {
                    if (mu == 1 && d == 1) continue;
                    tasks.push_back([=](std::vector<SweepRow>& rows) {
                        auto base = validate(1, p, p + 2, 1);
                        auto k = make_twist_field(mu, d);
                        if (do_part) {
                            std::string label = "none", expected = "unique-clause";
                            bool ok = true;
                            try {
                                label = delta_case(base, k).label;
                            } catch (const error&) {
                                ok = false;
                            }
                            rows.push_back({0, p, p + 2, d, mu, "partition", expected,
                                            ok ? "clause " + label : "violation", ok});
                        }
                        if (do_delta) {
                            auto cl = delta_case(base, k);
                            auto comp = delta_components(base, k);
                            rows.push_back({0, p, p + 2, d, mu, "delta", std::to_string(cl.total),
                                            std::to_string(comp.total), cl.total == comp.total});
                        }
                    });
                }
            }
    }
    if (checks.count(SweepCheck::rootnumbers)) {
        out.checks.push_back("rootnumbers");
        for (int64_t p : ps)
            for (int eps : {1, -1})
                tasks.push_back([=](std::vector<SweepRow>& rows) {
                    auto s = validate(eps, p, p + 2, 1);
                    int table = root_number(s);
                    int built = root_number_constructive(s).global;
                    rows.push_back({eps, p, p + 2, 1, 0, "rootnumbers", std::to_string(table),
                                    std::to_string(built), table == built});
                });
    }
    if (checks.count(SweepCheck::anomalous)) {
        out.checks.push_back("anomalous");
        int64_t bound = std::min<int64_t>(10000, budgets.point_budget);
        for (int64_t p : ps)
            for (int64_t d : {1, 7, 35}) {
                if (d > d_max || d % p == 0 || d % (p + 2) == 0) continue;
                for (int eps : {1, -1})
                    tasks.push_back([=, &budgets](std::vector<SweepRow>& rows) {
                        auto s = validate(eps, p, p + 2, d);
                        auto found = anomalous_scan(s, bound, budgets.point_budget);
                        rows.push_back({eps, p, p + 2, d, 0,
                                        "anomalous:bound=" + std::to_string(bound), "[]",
                                        found.empty() ? "[]" : std::to_string(found.size()) + " primes",
                                        found.empty()});
                    });
            }
    }

    buckets.resize(tasks.size());
    report_detail::parallel_for(tasks.size(), budgets.workers,
                                [&](size_t i) { tasks[i](buckets[i]); });
    for (auto& b : buckets)
        for (auto& r : b) {
            ++out.run;
            if (r.pass)
                ++out.passed;
            else
                out.failures.push_back(r);
            out.rows.push_back(std::move(r));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Advisor: machine-checks every hypothesis it can, takes the rest as
// user-asserted facts, and emits only conclusions whose hypotheses are
// covered one way or the other.
// ---------------------------------------------------------------------------

struct AdvisorConclusion {
    std::string id;
    std::string statement;
    std::vector<std::string> verified;
    std::vector<std::string> asserted;
};

inline const std::set<std::string>& advisor_vocabulary() {
    static const std::set<std::string> vocab = {
        "selp-trivial",   "selq-trivial", "sel5-trivial", "sel7-trivial",
        "e5-irreducible", "e7-irreducible", "sel5-order-5", "sel7-order-7",
        "sha2-square",    "lvalue-3-unit", "lvalue-7-unit"};
    return vocab;
}

inline std::vector<AdvisorConclusion> advise(const CurveSpec& s,
                                             const std::set<std::string>& facts, int mu = 0) {
    for (const auto& f : facts)
        require(advisor_vocabulary().count(f), errc::domain, "unknown fact token: " + f);
    std::vector<AdvisorConclusion> out;
    auto coprime = [&](int64_t l) {
        return s.p % l != 0 && s.q % l != 0 && s.d_abs() % l != 0;
    };

    // rank 0 via a trivial Selmer group at a large multiplicative prime
    for (auto [fact, at] : {std::pair<const char*, int64_t>{"selp-trivial", s.p},
                            {"selq-trivial", s.q}}) {
        if (!facts.count(fact) || s.p <= 37) continue;
        AdvisorConclusion c;
        c.id = std::string("rank0-selmer-") + (at == s.p ? "p" : "q");
        c.statement = "rank(E(Q)) = analytic rank = 0";
        c.verified = {"p > 37 (mod-" + std::to_string(at) + " representation irreducible)",
                      "multiplicative reduction at p and q",
                      "torsion module ramified at the companion prime"};
        require(torsion_ramified_at(s, at, at == s.p ? s.q : s.p).ramified, errc::internal,
                "ramification hypothesis failed unexpectedly");
        c.asserted = {fact};
        out.push_back(std::move(c));
    }
    // rank 0 via trivial 5- or 7-Selmer at a good ordinary prime
    if (facts.count("sel5-trivial") && facts.count("e5-irreducible") && coprime(5) &&
        !is_supersingular(s, 5)) {
        out.push_back({"rank0-selmer-5",
                       "rank(E(Q)) = analytic rank = 0",
                       {"5 coprime to pqD", "good ordinary reduction at 5",
                        "5-torsion ramified at p"},
                       {"e5-irreducible", "sel5-trivial"}});
    }
    if (facts.count("sel7-trivial") && facts.count("e7-irreducible") && coprime(7) &&
        (s.p % 7 == 1 || s.p % 7 == 4) && !is_supersingular(s, 7)) {
        out.push_back({"rank0-selmer-7",
                       "rank(E(Q)) = analytic rank = 0",
                       {"7 coprime to pqD", "p = 1, 4 (mod 7)", "good ordinary reduction at 7",
                        "7-torsion ramified at p"},
                       {"e7-irreducible", "sel7-trivial"}});
    }
    // rank 1 via Selmer groups of prime order
    if (facts.count("sel5-order-5") && facts.count("e5-irreducible") && coprime(5) &&
        !is_supersingular(s, 5)) {
        out.push_back({"rank1-selmer-5",
                       "rank(E(Q)) = analytic rank = 1",
                       {"5 coprime to pqD", "good ordinary reduction at 5",
                        "5-torsion ramified at the two order-one conductor primes p, q",
                        "conductor exactly divisible by p and q"},
                       {"e5-irreducible", "sel5-order-5"}});
    }
    if (facts.count("sel7-order-7") && facts.count("e7-irreducible") && coprime(7) &&
        (s.p % 7 == 1 || s.p % 7 == 4) && !is_supersingular(s, 7)) {
        out.push_back({"rank1-selmer-7",
                       "rank(E(Q)) = analytic rank = 1",
                       {"7 coprime to pqD", "p = 1, 4 (mod 7)", "good ordinary reduction at 7",
                        "7-torsion ramified at the two order-one conductor primes p, q",
                        "conductor exactly divisible by p and q"},
                       {"e7-irreducible", "sel7-order-7"}});
    }
    // supersingular tower prediction: at l = 3 (always supersingular away from
    // pqD) or l = 7 with p = 2, 3, 6 (mod 7), an l-adically unit L-value pins
    // the Mordell-Weil group and the l-part of Sha over every cyclotomic layer
    for (auto [fact, l] : {std::pair<const char*, int64_t>{"lvalue-3-unit", 3},
                           {"lvalue-7-unit", 7}}) {
        if (!facts.count(fact) || !coprime(l)) continue;
        if (l == 7 && !(s.p % 7 == 2 || s.p % 7 == 3 || s.p % 7 == 6)) continue;
        AdvisorConclusion c;
        c.id = "supersingular-tower-" + std::to_string(l);
        std::string orders;
        for (int64_t n = 0; n <= 4; ++n)
            orders += (n ? ", " : "") + std::to_string(l) + "^" + std::to_string(iwasawa_e_n(l, n));
        c.statement = "over every layer Q_n of the cyclotomic Z_" + std::to_string(l) +
                      "-tower: rank 0, E(Q_n) = Z/2 x Z/2, and #Sha(E/Q_n)[" + std::to_string(l) +
                      "^inf] for n = 0..4 is " + orders;
        c.verified = {std::to_string(l) + " coprime to pqD",
                      "good supersingular reduction at " + std::to_string(l),
                      "Tamagawa numbers prime to " + std::to_string(l),
                      "mod-" + std::to_string(l) + " representation surjective"};
        require(is_supersingular(s, l), errc::internal, "supersingularity hypothesis failed");
        require(rho_surjective(s, l).status == SurjectivityStatus::surjective, errc::internal,
                "surjectivity hypothesis failed");
        c.asserted = {fact};
        out.push_back(std::move(c));
    }
    // positive rank over K = Q(sqrt(mu D)) from an odd norm index and square Sha[2]
    if (facts.count("sha2-square") && mu != 0 && s.d_abs() > 1) {
        auto base = validate(s.epsilon, s.p, s.q, 1);
        auto k = make_twist_field(mu, s.d_abs());
        auto pr = parity_relation(base, k);
        bool odd_delta = delta_components(base, k).total % 2 == 1;
        if (odd_delta) {
            out.push_back({"positive-rank-over-K",
                           "rank(E(K)) > 0 for K = Q(sqrt(" + to_string(k.twist()) + "))",
                           {"norm index delta(E, Q, K) is odd (parity clause " + pr.clause + ")"},
                           {"sha2-square"}});
        }
    }
    return out;
}

inline json advisor_json(const CurveSpec& s, const std::set<std::string>& facts, int mu = 0) {
    json out;
    out["spec"] = {{"epsilon", s.epsilon}, {"p", s.p}, {"q", s.q}, {"D", s.d_value()}};
    out["asserted_facts"] = facts;
    json cs = json::array();
    for (auto& c : advise(s, facts, mu))
        cs.push_back({{"id", c.id},
                      {"statement", c.statement},
                      {"verified_hypotheses", c.verified},
                      {"asserted_hypotheses", c.asserted}});
    out["conclusions"] = cs;
    return out;
}

} // namespace twincurve
