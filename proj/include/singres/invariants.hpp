// Numerical invariants read off a resolution: multiplicity, log canonical
// threshold, Lefschetz numbers of monodromy iterates, and the minimal
// multiplicity-m discrepancy md_m with its log-discrepancy variant.
#pragma once

#include <map>
#include <set>

#include "singres/model.hpp"

namespace singres {

// Whether a subset mixing the star divisor with exceptional ones is an
// admissible md_m support. The singleton {star} is never admissible.
enum class StarPolicy { allow_mixed, exclude_star };

// min ord over non-star divisors
long long multiplicity(const ResolutionData& data);

// min over all divisors of (discrepancy + 1) / ord; the star term is 1
Rational lct(const ResolutionData& data);

// non-star divisors whose ord divides m
std::set<DivisorId> s_m(const ResolutionData& data, long long m);

// Lefschetz number of the m-th monodromy iterate: sum of ord * euler_open
// over s_m. Throws missing_data naming a divisor without euler_open.
long long lefschetz(const ResolutionData& data, long long m);

// order value -> -(sum of euler_open over non-star divisors of that order);
// the exponents of the monodromy zeta function's cyclotomic-style factors
std::map<long long, long long> monodromy_zeta(const ResolutionData& data);

// Euler characteristic of the Floer cohomology of the m-th iterate:
// (-1)^n * lefschetz
long long hf_euler(const ResolutionData& data, long long m);

struct MdWitness {
    std::set<DivisorId> subset;
    std::map<DivisorId, long long> coefficients; // all >= 1
    long long value = 0;                         // sum of k_j * discrepancy_j

    friend bool operator==(const MdWitness&, const MdWitness&) = default;
};

struct MdResult {
    ExtendedNat value;
    std::optional<MdWitness> witness; // present iff value is finite
};

// Minimal sum of k_j * a_j over admissible supports I (nonempty strata) and
// coefficient tuples k >= 1 with sum of k_j * ord_j equal to m.
MdResult md(const ResolutionData& data, long long m, StarPolicy policy = StarPolicy::allow_mixed);

// Same value by exhaustive enumeration; independent of the dynamic program.
// Throws bound_exceeded when m > bound.
ExtendedNat md_bruteforce(const ResolutionData& data, long long m,
                          StarPolicy policy = StarPolicy::allow_mixed, long long bound = 64);

// Log-discrepancy variant: minimizes sum of k_j * (a_j + 1); the star term
// costs 1 per unit. Equals mu_m on a multiplicity-m separating resolution.
ExtendedNat md_plus(const ResolutionData& data, long long m);

} // namespace singres
