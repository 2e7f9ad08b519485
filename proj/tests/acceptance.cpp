// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit status 0 iff everything passed.

#include <cstdio>

#include "twincurve/verify.hpp"

int main() {
    twincurve::Budgets budgets;
    auto results = twincurve::run_verification(budgets);
    bool all = true;
    int criteria = 0;
    std::printf("== property suites ==\n");
    for (const auto& r : results) {
        bool is_criterion = r.name.rfind("criterion-", 0) == 0;
        if (is_criterion && criteria++ == 0) std::printf("== acceptance criteria ==\n");
        std::printf("%s %-42s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "all checks passed" : "FAILURES present");
    return all ? 0 : 1;
}
