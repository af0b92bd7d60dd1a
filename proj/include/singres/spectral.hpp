// The E1 page of the fixed-point-Floer spectral sequence on a separating
// resolution, the top-degree extraction lemma, and the Floer-side recipes
// recovering multiplicity and log canonical threshold.
#pragma once

#include <map>
#include <optional>

#include "singres/model.hpp"

namespace singres {

// min over divisors with ord | m of (m/ord) * (discrepancy + 1); requires a
// multiplicity-m separating resolution (throws not_separating)
ExtendedNat mu(const ResolutionData& data, long long m);

// n - 2*mu, or nullopt when the Floer group vanishes (mu infinite)
std::optional<long long> nu(const ResolutionData& data, long long m);

struct E1Entry {
    long long p = 0; // column: -k_i * w_i
    long long q = 0;
    DivisorId divisor;
    long long homology_degree = 0; // d with rank = cover_betti[d]
    long long rank = 0;

    friend bool operator==(const E1Entry&, const E1Entry&) = default;
};

struct E1Page {
    long long m = 1;
    long long n = 1;
    bool default_weights_used = false; // some divisor fell back to weight 1
    std::vector<E1Entry> entries;      // sorted by (p, q, divisor, degree)
};

// One entry per divisor with ord | m and per nonzero Betti degree of its
// cover, at p = -k*w and q = n - p - 2k(a+1) - degree.
// Weight lookup order: explicit map, then the record's weight, then 1.
E1Page e1_page(const ResolutionData& data, long long m,
               const std::map<DivisorId, long long>* weights = nullptr);

// (alternating rank sum of the page, whether it equals hf_euler(data, m))
std::pair<long long, bool> e1_euler_check(const E1Page& page, const ResolutionData& data);

struct DegenerationReport {
    std::optional<long long> top_total_degree; // nullopt on an empty page
    std::map<long long, long long> column_tops;
    bool hypothesis_holds = true; // no column top equals top - 1
    enum class Conclusion { nonzero_at_top, vanishes, inconclusive } conclusion =
        Conclusion::vanishes;
};

// Applies the support-only degeneration argument: when no column top sits one
// below the global top, the limit group is nonzero exactly at the top degree.
DegenerationReport degeneration_check(const E1Page& page);

// smallest m > 0 whose Floer group is nonzero; equals the multiplicity
long long multiplicity_via_floer(const ResolutionData& data);

// min over 1 <= m <= m_max of min(1, md_plus(m) / m)
Rational lct_via_floer(const ResolutionData& data, long long m_max);

} // namespace singres
