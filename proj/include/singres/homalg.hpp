// Exact integer homological algebra: Smith normal form, homology of finite
// free complexes, the spectral sequence of a filtered complex, and the
// u-truncated collapse lemma for split differentials.
#pragma once

#include <map>
#include <vector>

#include "singres/rational.hpp"

namespace singres {

struct IntegerMatrix {
    long long rows = 0;
    long long cols = 0;
    std::vector<Int> data; // row-major

    IntegerMatrix() = default;
    IntegerMatrix(long long r, long long c) : rows(r), cols(c), data(static_cast<size_t>(r * c)) {}

    Int& at(long long r, long long c) { return data[static_cast<size_t>(r * cols + c)]; }
    const Int& at(long long r, long long c) const { return data[static_cast<size_t>(r * cols + c)]; }

    static IntegerMatrix identity(long long n);

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

// rank over the rationals (= free rank of the image), by fraction-free
// Gaussian elimination
long long matrix_rank(const IntegerMatrix& m);

Int determinant(const IntegerMatrix& m); // Bareiss; square input

struct SmithResult {
    IntegerMatrix d; // diagonal, nonnegative, divisibility chain
    IntegerMatrix u; // unimodular, u * input * v == d
    IntegerMatrix v;
    long long rank = 0;

    std::vector<Int> diagonal() const;
};

SmithResult smith_normal_form(const IntegerMatrix& input);

// columns spanning ker(m) over Z (a saturated basis, from the SNF)
IntegerMatrix kernel_basis(const IntegerMatrix& m);

enum class Convention { homological, cohomological };

// boundaries[d] maps degree d to d-1 (homological) or d+1 (cohomological);
// missing matrices are zero maps
struct ChainComplex {
    Convention convention = Convention::homological;
    std::map<long long, long long> ranks;
    std::map<long long, IntegerMatrix> boundaries;
};

struct DegreeHomology {
    long long rank = 0;
    std::vector<Int> torsion; // divisibility-sorted, each > 1

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

// only degrees with nonzero homology appear
using HomologySummary = std::map<long long, DegreeHomology>;

std::string homology_to_string(const HomologySummary& summary, Convention convention);

// throws not_a_complex when dimensions mismatch or a composition is nonzero
HomologySummary homology(const ChainComplex& complex);

// filtration[d][i] is the level of generator i in degree d; the boundary may
// never decrease levels (so each F_p is a subcomplex)
struct FilteredComplex {
    ChainComplex complex;
    std::map<long long, std::vector<long long>> filtration;
};

struct PageEntry {
    long long p = 0;
    long long q = 0; // total cohomological degree = p + q
    long long rank = 0;
    std::vector<Int> torsion; // populated on pages 0 and 1 only

    friend bool operator==(const PageEntry&, const PageEntry&) = default;
};

using Page = std::vector<PageEntry>; // sorted by (p, q), zero entries omitted

// Pages E_0 .. E_r_max of the filtration spectral sequence. E_0 and E_1 are
// computed integrally (graded pieces and their homology); later pages carry
// rational ranks from the standard cycle/boundary subquotients.
std::vector<Page> filtration_pages(const FilteredComplex& filtered, long long r_max);

// A u-truncated model of a differential on (A_- + A_+) tensor Z[u] split as
// d0 (u-power preserving, with d0(A_-) inside A_-) plus d1 (drops one u-power,
// vanishing on u^0). Generators carry a cohomological degree and a filtration
// level; u has degree -2.
struct CollapseInstance {
    std::vector<long long> minus_degree, minus_level;
    std::vector<long long> plus_degree, plus_level;
    long long truncation = 1; // largest retained u-power
    IntegerMatrix d0;         // (s+t) x (s+t), degree +1
    IntegerMatrix d1;         // (s+t) x (s+t), degree -1 as a map on generators
};

// Verifies that the level-wise blocks of d1 from uA_- to A_+ are unimodular
// (throws hypothesis_failed naming the level otherwise), then compares the
// homology of the truncated total complex with H(A_-, d0) in every degree the
// truncation cannot disturb. Throws truncation_too_small when that window
// does not cover the A_- degrees.
std::pair<bool, HomologySummary> collapse_check(const CollapseInstance& instance);

// JSON exchange format for the CLI homalg subcommand:
// { "convention": str, "ranks": {"<deg>": int},
//   "boundaries": {"<deg>": {"rows": int, "cols": int, "data": [int...]}},
//   "filtration": {"<deg>": [int...]} (optional) }
FilteredComplex filtered_complex_from_json_text(const std::string& text);
bool has_filtration(const FilteredComplex& f);

} // namespace singres
