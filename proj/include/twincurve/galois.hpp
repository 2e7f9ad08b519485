#pragma once

#include <cstdint>

#include "twincurve/curves.hpp"
#include "twincurve/error.hpp"
#include "twincurve/localdata.hpp"

namespace twincurve {

// Predicates about the mod-l Galois representations of the family.

struct RamificationVerdict {
    int64_t l = 0;  // torsion level
    int64_t at = 0; // the place, one of p, q
    bool ramified = false;
};

enum class SurjectivityStatus { surjective, unknown };

struct SurjectivityVerdict {
    int64_t l = 0;
    SurjectivityStatus status = SurjectivityStatus::unknown;
};

// Whether E[l] is ramified at the multiplicative place `at`.  For l != at this
// comes from the criterion at a place of multiplicative reduction: E[l] is
// ramified there iff l does not divide ord(Delta) = 2, so iff l > 2.  At
// l == at the same closed form applies.
inline RamificationVerdict torsion_ramified_at(const CurveSpec& s, int64_t l, int64_t at) {
    require(at == s.p || at == s.q, errc::domain, "ramification verdicts live at p and q only");
    require(is_prime(l), errc::domain, "torsion level must be prime");
    bool closed = l > 2 && l != at;
    if (l != at) {
        int ord = reduction_data(s, at).disc_valuation;
        require((ord % l != 0) == closed, errc::internal, "ramification criterion disagrees");
    }
    return {l, at, closed};
}

// Sufficient surjectivity criteria for rho_l; never claims "not surjective".
inline SurjectivityVerdict rho_surjective(const CurveSpec& s, int64_t l) {
    require(is_prime(l), errc::domain, "rho level must be prime");
    auto divides_pqD = [&](int64_t m) {
        return s.p % m == 0 || s.q % m == 0 || s.d_abs() % m == 0;
    };
    bool three_coprime = !divides_pqD(3);
    if (l == 3 && three_coprime) return {l, SurjectivityStatus::surjective};
    if (l == 7 && !divides_pqD(7) && (s.p % 7 == 2 || s.p % 7 == 3 || s.p % 7 == 6))
        return {l, SurjectivityStatus::surjective};
    if (three_coprime && l > 3105 && !divides_pqD(l)) return {l, SurjectivityStatus::surjective};
    return {l, SurjectivityStatus::unknown};
}

} // namespace twincurve
