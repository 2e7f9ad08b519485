// Command-line surface: per-curve reports, identity-verification sweeps,
// L-value evaluation, class-group queries, the hypothesis advisor, and the
// full verification suite.
//
// Exit codes: 0 success / all checks passed, 1 check failure, 2 input
// validation, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twincurve/report.hpp"
#include "twincurve/verify.hpp"

namespace {

using namespace twincurve;

int exit_code_for(const error& e) {
    switch (e.code()) {
        case errc::validation:
        case errc::domain:
        case errc::unsupported: return 2;
        case errc::range:
        case errc::exhaustion: return 3;
        default: return 1;
    }
}

struct BudgetFlags {
    std::string config_path;
    int64_t point_budget = -1;
    int64_t imaginary_bound = -1;
    int64_t real_bound = -1;
    int64_t series_budget = -1;
    int workers = -1;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_path, "JSON config file with budget defaults");
        app.add_option("--point-budget", point_budget, "largest prime for brute-force counting");
        app.add_option("--classgroup-imaginary-bound", imaginary_bound,
                       "largest |disc| for imaginary class groups");
        app.add_option("--classgroup-real-bound", real_bound,
                       "largest disc for real class groups");
        app.add_option("--series-budget", series_budget, "largest series truncation");
        app.add_option("--workers", workers, "sweep worker threads");
    }

    // config file first, then flags win
    Budgets resolve() const {
        Budgets b;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            require(in.good(), errc::validation, "cannot open config file " + config_path);
            json cfg = json::parse(in, nullptr, true, true);
            if (cfg.contains("point_budget")) b.point_budget = cfg["point_budget"].get<int64_t>();
            if (cfg.contains("classgroup_imaginary_bound"))
                b.classgroup_imaginary = cfg["classgroup_imaginary_bound"].get<int64_t>();
            if (cfg.contains("classgroup_real_bound"))
                b.classgroup_real = cfg["classgroup_real_bound"].get<int64_t>();
            if (cfg.contains("series_budget")) b.series_budget = cfg["series_budget"].get<int64_t>();
            if (cfg.contains("workers")) b.workers = cfg["workers"].get<unsigned>();
        }
        if (point_budget >= 0) b.point_budget = point_budget;
        if (imaginary_bound >= 0) b.classgroup_imaginary = imaginary_bound;
        if (real_bound >= 0) b.classgroup_real = real_bound;
        if (series_budget >= 0) b.series_budget = series_budget;
        if (workers >= 0) b.workers = (unsigned)workers;
        if (b.workers == 0) b.workers = 1;
        return b;
    }
};

struct CurveFlags {
    int epsilon = 1;
    int64_t p = 3, q = 5;
    int64_t d = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("-e,--epsilon", epsilon, "sign of the family (+1 or -1)")->required();
        cmd.add_option("-p", p, "smaller twin prime")->required();
        cmd.add_option("-q", q, "larger twin prime (p + 2)")->required();
        cmd.add_option("-D", d, "odd square-free twist, coprime to pq")->default_val(1);
    }

    CurveSpec spec() const { return validate(epsilon, p, q, d); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic of the twin-prime curve family y^2 = x(x+e p D)(x+e q D)"};
    app.require_subcommand(1);
    BudgetFlags budget_flags;
    budget_flags.add_to(app);

    // report
    auto* rep = app.add_subcommand("report", "invariants and local data of one curve");
    CurveFlags rep_curve;
    rep_curve.add_to(*rep);
    std::vector<int> rep_mus;
    int64_t rep_heegner = 0;
    bool rep_json = false;
    rep->add_option("--mu", rep_mus, "include the norm-index breakdown over Q(sqrt(mu |D|))");
    rep->add_option("--heegner-disc", rep_heegner,
                    "include the Heegner congruence test for this negative discriminant");
    rep->add_flag("--json", rep_json, "machine-readable output");
    rep->add_flag("--text", [](int64_t) {}, "human-readable output (default)");

    // sweep
    auto* swp = app.add_subcommand("sweep", "exhaustive identity-verification sweeps");
    int64_t p_max = 200, d_max = 150;
    std::vector<std::string> check_names = {"counts", "delta", "rootnumbers", "anomalous",
                                            "partition"};
    std::string csv_path;
    swp->add_option("--p-max", p_max, "upper bound for the twin prime p");
    swp->add_option("--d-max", d_max, "upper bound for the twist D");
    swp->add_option("--checks", check_names,
                    "subset of counts, delta, rootnumbers, anomalous, partition");
    swp->add_option("--csv", csv_path, "write the per-check CSV here (default: stdout)");

    // lvalue
    auto* lvl = app.add_subcommand("lvalue", "truncated L-values and derivatives at s = 1");
    CurveFlags lvl_curve;
    lvl_curve.add_to(*lvl);
    int lvl_r = 0;
    int64_t lvl_nmax = 2000;
    int lvl_twist_mu = 0;
    int64_t lvl_twist_d = 0;
    bool lvl_json = false;
    lvl->add_option("-r", lvl_r, "derivative order (0..2)");
    lvl->add_option("--n-max", lvl_nmax, "series truncation");
    lvl->add_option("--twist-mu", lvl_twist_mu, "evaluate the twisted series: sign");
    lvl->add_option("--twist-d", lvl_twist_d, "evaluate the twisted series: positive odd D");
    lvl->add_flag("--json", lvl_json, "machine-readable output");

    // classgroup
    auto* cgr = app.add_subcommand("classgroup", "class groups of quadratic fields");
    int64_t cg_disc = 0;
    int64_t cg_p = 0, cg_q = 0;
    bool cg_json = false;
    cgr->add_option("--disc", cg_disc, "fundamental discriminant")->required();
    cgr->add_option("-p", cg_p, "twin prime p for S-class data");
    cgr->add_option("-q", cg_q, "twin prime q for S-class data");
    cgr->add_flag("--json", cg_json, "machine-readable output");

    // advisor
    auto* adv = app.add_subcommand("advisor", "conditional conclusions from asserted facts");
    CurveFlags adv_curve;
    adv_curve.add_to(*adv);
    std::vector<std::string> adv_facts;
    int adv_mu = 0;
    adv->add_option("--assert", adv_facts, "asserted facts (e.g. sel5-trivial, sha2-square)");
    adv->add_option("--mu", adv_mu, "twist sign for conclusions over Q(sqrt(mu |D|))");

    // verify
    auto* ver = app.add_subcommand("verify", "run every property suite and acceptance criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        Budgets budgets = budget_flags.resolve();

        if (*rep) {
            auto j = curve_report_json(rep_curve.spec(), rep_mus, budgets, rep_heegner);
            if (rep_json)
                std::cout << j.dump(2) << "\n";
            else
                std::cout << curve_report_text(j);
            return 0;
        }

        if (*swp) {
            std::set<SweepCheck> checks;
            for (const auto& n : check_names) checks.insert(sweep_check_from_name(n));
            auto result = run_sweep(p_max, d_max, checks, budgets);
            std::ostream* csv_out = &std::cout;
            std::ofstream file;
            if (!csv_path.empty()) {
                file.open(csv_path);
                require(file.good(), errc::validation, "cannot write " + csv_path);
                csv_out = &file;
            }
            *csv_out << result.csv();
            std::ostream& summary = csv_path.empty() ? std::cerr : std::cout;
            summary << "sweep: " << result.run << " checks, " << result.passed << " passed, "
                    << result.failures.size() << " failed\n";
            for (const auto& f : result.failures)
                summary << "  FAIL " << f.check << " at eps=" << f.epsilon << " p=" << f.p
                        << " D=" << f.d << " mu=" << f.mu << ": expected " << f.expected
                        << ", got " << f.actual << "\n";
            return result.all_passed() ? 0 : 1;
        }

        if (*lvl) {
            auto s = lvl_curve.spec();
            LSeriesApprox v;
            if (lvl_twist_d != 0) {
                require(lvl_twist_mu == 1 || lvl_twist_mu == -1, errc::validation,
                        "--twist-mu must be +1 or -1");
                v = twisted_l_value(s, make_twist_field(lvl_twist_mu, lvl_twist_d),
                                    std::min(lvl_nmax, budgets.series_budget),
                                    budgets.point_budget);
            } else if (lvl_r == 0) {
                v = l_value_at_1(s, std::min(lvl_nmax, budgets.series_budget),
                                 budgets.point_budget);
            } else {
                v = l_derivative_at_1(s, lvl_r, std::min(lvl_nmax, budgets.series_budget),
                                      budgets.point_budget);
            }
            if (lvl_json) {
                json j{{"value", v.value},
                       {"truncation", v.truncation},
                       {"tail_bound", v.tail_bound},
                       {"formula", v.formula_tag}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "value " << v.value << "  (truncation " << v.truncation
                          << ", tail bound " << v.tail_bound << ", " << v.formula_tag << ")\n";
            }
            return 0;
        }

        if (*cgr) {
            auto g = class_group(cg_disc, budgets.class_budget());
            json j{{"disc", to_string(g.disc)},
                   {"h", g.h},
                   {"elementary_divisors", g.elementary_divisors},
                   {"two_rank", g.two_rank}};
            if (g.disc > 0) {
                j["narrow_h"] = g.narrow_h;
                j["fundamental_unit_norm"] = g.unit_norm;
            }
            if (cg_p != 0 || cg_q != 0) {
                require(cg_q == cg_p + 2, errc::validation, "S-class data needs a twin pair");
                auto sd = s_class_group(cg_disc, cg_p, cg_q, budgets.class_budget());
                json places = json::array();
                for (auto& pl : sd.s_primes)
                    places.push_back({{"over", pl.over},
                                      {"type", pl.type == SplitType::split      ? "split"
                                               : pl.type == SplitType::ramified ? "ramified"
                                                                                : "inert"}});
                j["s_class"] = {{"finite_places", places},
                                {"s_two_rank", sd.s_two_rank},
                                {"s_set_size", sd.s_set_size}};
                if (cg_disc > 1) {
                    int64_t twist = mod_floor(cg_disc, 4) == 1 ? cg_disc : cg_disc / 4;
                    if (twist > 1 && twist % 2 == 1 && twist % cg_p != 0 && twist % cg_q != 0 &&
                        factorize(twist).is_squarefree()) {
                        auto rb = rank_bound(validate(1, cg_p, cg_q, 1), factorize(twist),
                                             budgets.class_budget());
                        j["rank_bound"] = {{"headline", rb.headline}, {"sharp", rb.sharp}};
                    }
                }
            }
            if (cg_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "disc " << to_string(g.disc) << ": h = " << g.h << ", structure";
                if (g.elementary_divisors.empty()) std::cout << " trivial";
                for (auto d : g.elementary_divisors) std::cout << " Z/" << d;
                std::cout << ", 2-rank " << g.two_rank << "\n";
                if (j.contains("s_class"))
                    std::cout << "S-class 2-rank " << j["s_class"]["s_two_rank"].get<int>()
                              << ", #S_K = " << j["s_class"]["s_set_size"].get<int>() << "\n";
                if (j.contains("rank_bound"))
                    std::cout << "rank bound: " << j["rank_bound"]["headline"].get<int64_t>()
                              << " (sharp " << j["rank_bound"]["sharp"].get<int64_t>() << ")\n";
            }
            return 0;
        }

        if (*adv) {
            std::set<std::string> facts(adv_facts.begin(), adv_facts.end());
            auto j = advisor_json(adv_curve.spec(), facts, adv_mu);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*ver) {
            auto results = run_verification(budgets);
            bool all = true;
            for (const auto& r : results) {
                std::printf("%s %-42s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.seconds, r.detail.c_str());
                all = all && r.pass;
            }
            std::printf("%s\n", all ? "all checks passed" : "FAILURES present");
            return all ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
