// Shared fixtures, random generators and independent oracles for the test
// suites and the acceptance runner.
#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "singres/homalg.hpp"
#include "singres/invariants.hpp"
#include "singres/model.hpp"
#include "singres/newton.hpp"
#include "singres/separating.hpp"

namespace testsupport {

using namespace singres;

// --- corpus -------------------------------------------------------------------

inline std::string corpus_dir() {
#ifdef SINGRES_CORPUS_DIR
    return SINGRES_CORPUS_DIR;
#else
    return "corpus";
#endif
}

inline ResolutionData load_corpus(const std::string& name) {
    std::ifstream in(corpus_dir() + "/" + name, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "missing corpus file " + name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_resolution(buffer.str());
}

inline std::vector<std::string> corpus_names() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
        if (entry.path().extension() == ".json")
            names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

// hand-blowup resolution of the cusp x^2 + y^3 (three point blowups)
inline ResolutionData cusp_hand() { return load_corpus("cusp.json"); }
inline ResolutionData node_hand() { return load_corpus("node.json"); }

// --- independent oracles --------------------------------------------------------

// Lefschetz numbers of the cusp monodromy from the eigenvalues of its action
// on H_1 of the Milnor fiber (primitive 6th roots of unity on a rank-2 group):
// trace of phi^m on H_* is 1 - 2cos(m pi / 3).
inline long long cusp_lefschetz_eigenvalue_oracle(long long m) {
    switch (m % 6) {
        case 0: return 1 - 2;
        case 1: case 5: return 1 - 1;
        case 2: case 4: return 1 + 1;
        default: return 1 + 2; // m % 6 == 3
    }
}

// expands the zeta factorization back into a Lefschetz number
inline long long lefschetz_from_zeta(const std::map<long long, long long>& factors, long long m) {
    long long sum = 0;
    for (const auto& [order, exponent] : factors)
        if (m % order == 0)
            sum += order * (-exponent);
    return sum;
}

// gcd of all k x k minors (the determinant-divisor oracle for Smith forms)
inline Int minor_gcd(const IntegerMatrix& m, long long k) {
    std::vector<long long> row_subset(static_cast<size_t>(k));
    std::vector<long long> col_subset(static_cast<size_t>(k));
    Int result = 0;
    auto choose = [&](auto&& self, std::vector<long long>& subset, long long limit, long long index,
                      long long start, const auto& done) -> void {
        if (index == k) {
            done();
            return;
        }
        for (long long v = start; v < limit; ++v) {
            subset[static_cast<size_t>(index)] = v;
            self(self, subset, limit, index + 1, v + 1, done);
        }
    };
    choose(choose, row_subset, m.rows, 0, 0, [&]() {
        choose(choose, col_subset, m.cols, 0, 0, [&]() {
            IntegerMatrix sub(k, k);
            for (long long i = 0; i < k; ++i)
                for (long long j = 0; j < k; ++j)
                    sub.at(i, j) = m.at(row_subset[static_cast<size_t>(i)],
                                        col_subset[static_cast<size_t>(j)]);
            result = gcd(result, determinant(sub));
        });
    });
    return abs(result);
}

// --- random resolutions ----------------------------------------------------------

inline long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// Structurally valid resolution data with arbitrary orders/discrepancies.
// Suitable for oracle-equality tests; not necessarily realizable geometry.
inline ResolutionData random_valid_resolution(std::mt19937_64& rng, long long max_divisors = 5,
                                              bool allow_surfaces_only = false) {
    ResolutionData data;
    data.n = (!allow_surfaces_only && pick(rng, 0, 2) == 0) ? 2 : 1;
    long long exceptional = pick(rng, 1, max_divisors - 1);
    for (long long i = 0; i < exceptional; ++i) {
        DivisorRecord d;
        d.id = "D" + std::to_string(i + 1);
        d.ord = pick(rng, 1, 8);
        d.discrepancy = pick(rng, 1, 6);
        d.euler_open = pick(rng, -3, 2);
        data.divisors.push_back(std::move(d));
    }
    DivisorRecord star;
    star.id = "star";
    star.ord = 1;
    star.discrepancy = 0;
    star.is_star = true;
    data.divisors.push_back(std::move(star));

    // random spanning tree keeps the intersection graph connected
    std::vector<DivisorId> ids;
    for (const auto& d : data.divisors)
        ids.push_back(d.id);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (size_t i = 1; i < ids.size(); ++i) {
        DivisorId other = ids[pick(rng, 0, static_cast<long long>(i) - 1)];
        data.nerve.strata[make_stratum_key({ids[i], other})] = pick(rng, 1, 2);
    }
    for (long long extra = pick(rng, 0, 2); extra > 0; --extra) {
        DivisorId a = ids[pick(rng, 0, static_cast<long long>(ids.size()) - 1)];
        DivisorId b = ids[pick(rng, 0, static_cast<long long>(ids.size()) - 1)];
        if (a != b)
            data.nerve.strata.emplace(make_stratum_key({a, b}), pick(rng, 1, 2));
    }
    if (data.n >= 2) {
        // add triples above existing triangles to exercise larger supports
        std::vector<StratumKey> pairs;
        for (const auto& [key, c] : data.nerve.strata) {
            (void)c;
            pairs.push_back(key);
        }
        for (const auto& pair : pairs)
            for (const auto& id : ids) {
                if (id == pair[0] || id == pair[1])
                    continue;
                StratumKey ab = make_stratum_key({pair[0], id});
                StratumKey bb = make_stratum_key({pair[1], id});
                if (data.nerve.contains(ab) && data.nerve.contains(bb) && pick(rng, 0, 1) == 0)
                    data.nerve.strata.emplace(make_stratum_key({pair[0], pair[1], id}),
                                              pick(rng, 1, 2));
            }
    }
    data = normalized(std::move(data));
    if (!validate(data).empty())
        throw Error(ErrorCode::invalid_argument, "random generator produced invalid data");
    return data;
}

// Random convenient Newton-nondegenerate polynomial (pure powers on both axes
// plus a few interior terms, retried until every edge polynomial is squarefree).
inline LatticePolynomial random_curve_poly(std::mt19937_64& rng) {
    while (true) {
        LatticePolynomial poly;
        long long a = pick(rng, 2, 6);
        long long b = pick(rng, 2, 6);
        poly.terms[{a, 0}] = Rational(pick(rng, 0, 1) ? 1 : -1);
        poly.terms[{0, b}] = Rational(1);
        for (long long extra = pick(rng, 0, 2); extra > 0; --extra) {
            long long p = pick(rng, 1, a);
            long long q = pick(rng, 1, b);
            Rational coefficient(pick(rng, 1, 3) * (pick(rng, 0, 1) ? 1 : -1));
            poly.terms[{p, q}] = coefficient;
        }
        try {
            if (nondegeneracy_check(poly).nondegenerate)
                return poly;
        } catch (const Error&) {
            // not convenient after hull pruning is impossible here, but retry anyway
        }
    }
}

// Geometrically consistent n = 1 resolution: a toric curve resolution followed
// by a few random pair blowups (so Lemma-style invariance statements apply).
inline ResolutionData random_geometric_resolution(std::mt19937_64& rng, long long max_blowups = 2) {
    ResolutionData data = resolution_from_curve(random_curve_poly(rng));
    for (long long step = pick(rng, 0, max_blowups); step > 0; --step) {
        std::vector<StratumKey> pairs;
        for (const auto& [key, c] : data.nerve.strata) {
            (void)c;
            if (key.size() == 2)
                pairs.push_back(key);
        }
        if (pairs.empty())
            break;
        data = blow_up_pair(data, pairs[pick(rng, 0, static_cast<long long>(pairs.size()) - 1)]);
    }
    return data;
}

// --- random homological algebra ---------------------------------------------------

inline IntegerMatrix random_matrix(std::mt19937_64& rng, long long rows, long long cols,
                                   long long magnitude = 4) {
    IntegerMatrix m(rows, cols);
    for (auto& entry : m.data)
        entry = pick(rng, -magnitude, magnitude);
    return m;
}

// chain complex with guaranteed d^2 = 0: each next boundary factors through
// the kernel of the previous one
inline ChainComplex random_chain_complex(std::mt19937_64& rng, long long degrees = 4) {
    ChainComplex complex;
    complex.convention = Convention::homological;
    std::vector<long long> ranks;
    for (long long d = 0; d < degrees; ++d)
        ranks.push_back(pick(rng, 1, 4));
    for (long long d = 0; d < degrees; ++d)
        complex.ranks[d] = ranks[static_cast<size_t>(d)];
    IntegerMatrix previous = random_matrix(rng, ranks[0], ranks[1], 3);
    complex.boundaries[1] = previous;
    for (long long d = 2; d < degrees; ++d) {
        IntegerMatrix kernel = kernel_basis(previous);
        IntegerMatrix mix = random_matrix(rng, kernel.cols, ranks[static_cast<size_t>(d)], 2);
        previous = multiply(kernel, mix);
        complex.boundaries[d] = previous;
    }
    return complex;
}

// filtered cohomological complex: levels assigned from the top degree down so
// the boundary never decreases them
inline FilteredComplex random_filtered_complex(std::mt19937_64& rng, long long degrees = 4,
                                               long long max_level = 3) {
    FilteredComplex filtered;
    filtered.complex.convention = Convention::cohomological;
    std::vector<long long> ranks;
    for (long long d = 0; d < degrees; ++d)
        ranks.push_back(pick(rng, 1, 4));
    for (long long d = 0; d < degrees; ++d)
        filtered.complex.ranks[d] = ranks[static_cast<size_t>(d)];
    IntegerMatrix previous = random_matrix(rng, ranks[static_cast<size_t>(degrees - 1)],
                                           ranks[static_cast<size_t>(degrees - 2)], 3);
    filtered.complex.boundaries[degrees - 2] = previous;
    for (long long d = degrees - 3; d >= 0; --d) {
        IntegerMatrix kernel = kernel_basis(previous);
        IntegerMatrix mix = random_matrix(rng, kernel.cols, ranks[static_cast<size_t>(d)], 2);
        previous = multiply(kernel, mix);
        filtered.complex.boundaries[d] = previous;
    }

    // top degree levels are free; below, a generator's level is capped by its
    // targets
    std::map<long long, std::vector<long long>> levels;
    levels[degrees - 1] = {};
    for (long long j = 0; j < ranks[static_cast<size_t>(degrees - 1)]; ++j)
        levels[degrees - 1].push_back(pick(rng, 0, max_level));
    for (long long d = degrees - 2; d >= 0; --d) {
        const IntegerMatrix& matrix = filtered.complex.boundaries[d];
        std::vector<long long> row;
        for (long long j = 0; j < ranks[static_cast<size_t>(d)]; ++j) {
            long long cap = max_level;
            for (long long i = 0; i < matrix.rows; ++i)
                if (matrix.at(i, j) != 0)
                    cap = std::min(cap, levels[d + 1][static_cast<size_t>(i)]);
            row.push_back(pick(rng, 0, cap));
        }
        levels[d] = std::move(row);
    }
    filtered.filtration = std::move(levels);
    return filtered;
}

// rational rank of gr_p H^s computed directly from cycles and boundaries;
// independent of the page recursion in filtration_pages
inline std::map<std::pair<long long, long long>, long long>
associated_graded_ranks(const FilteredComplex& filtered) {
    const ChainComplex& complex = filtered.complex;
    if (complex.convention != Convention::cohomological)
        throw Error(ErrorCode::invalid_argument, "oracle expects a cohomological complex");

    auto rank_at = [&](long long degree) {
        auto it = complex.ranks.find(degree);
        return it == complex.ranks.end() ? 0 : it->second;
    };
    auto matrix_at = [&](long long degree) {
        auto it = complex.boundaries.find(degree);
        if (it != complex.boundaries.end())
            return it->second;
        return IntegerMatrix(rank_at(degree + 1), rank_at(degree));
    };

    long long max_level = 0;
    for (const auto& [degree, row] : filtered.filtration)
        for (long long level : row)
            max_level = std::max(max_level, level);

    std::map<std::pair<long long, long long>, long long> out;
    for (const auto& [degree, rank] : complex.ranks) {
        if (rank == 0)
            continue;
        IntegerMatrix outgoing = matrix_at(degree);
        IntegerMatrix incoming = matrix_at(degree - 1);
        const auto& levels = filtered.filtration.at(degree);

        // K_p: kernel vectors supported on generators of level >= p
        auto filtered_kernel_rank_with_boundaries = [&](long long p) {
            std::vector<long long> columns;
            for (long long j = 0; j < rank; ++j)
                if (levels[static_cast<size_t>(j)] >= p)
                    columns.push_back(j);
            IntegerMatrix restricted(outgoing.rows, static_cast<long long>(columns.size()));
            for (long long i = 0; i < outgoing.rows; ++i)
                for (size_t j = 0; j < columns.size(); ++j)
                    restricted.at(i, static_cast<long long>(j)) = outgoing.at(i, columns[j]);
            IntegerMatrix kernel = kernel_basis(restricted);
            IntegerMatrix combined(rank, kernel.cols + incoming.cols);
            for (long long j = 0; j < kernel.cols; ++j)
                for (size_t i = 0; i < columns.size(); ++i)
                    combined.at(columns[i], j) = kernel.at(static_cast<long long>(i), j);
            for (long long j = 0; j < incoming.cols; ++j)
                for (long long i = 0; i < rank; ++i)
                    combined.at(i, kernel.cols + j) = incoming.at(i, j);
            return matrix_rank(combined);
        };

        for (long long p = 0; p <= max_level; ++p) {
            long long graded =
                filtered_kernel_rank_with_boundaries(p) - filtered_kernel_rank_with_boundaries(p + 1);
            if (graded != 0)
                out[{p, degree}] = graded;
        }
    }
    return out;
}

// --- collapse lemma instances -------------------------------------------------------

// Builds a hypothesis-satisfying instance: A_+ mirrors A_-, d1 is a random
// per-level unimodular pairing, and d0 on A_+ is conjugated so the total
// differential squares to zero.
inline CollapseInstance random_collapse_instance(std::mt19937_64& rng) {
    CollapseInstance instance;
    long long s = pick(rng, 1, 4);
    for (long long g = 0; g < s; ++g) {
        instance.minus_degree.push_back(pick(rng, -2, 2));
        instance.minus_level.push_back(pick(rng, 0, 2));
    }
    std::set<long long> level_set(instance.minus_level.begin(), instance.minus_level.end());

    // d0 on A_-: a matching of degree-compatible, level-monotone arrows
    IntegerMatrix d0_minus(s, s);
    std::vector<bool> used(static_cast<size_t>(s), false);
    for (long long j = 0; j < s; ++j) {
        if (used[static_cast<size_t>(j)] || pick(rng, 0, 1) == 0)
            continue;
        for (long long i = 0; i < s; ++i) {
            if (i == j || used[static_cast<size_t>(i)])
                continue;
            if (instance.minus_degree[static_cast<size_t>(i)] !=
                instance.minus_degree[static_cast<size_t>(j)] + 1)
                continue;
            if (instance.minus_level[static_cast<size_t>(i)] <
                instance.minus_level[static_cast<size_t>(j)])
                continue;
            d0_minus.at(i, j) = pick(rng, 1, 3) * (pick(rng, 0, 1) ? 1 : -1);
            used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = true;
            break;
        }
    }

    // mirror generators one degree down, same levels
    for (long long g = 0; g < s; ++g) {
        instance.plus_degree.push_back(instance.minus_degree[static_cast<size_t>(g)] - 1);
        instance.plus_level.push_back(instance.minus_level[static_cast<size_t>(g)]);
    }

    // unimodular pairing: identity plus a few elementary operations allowed by
    // degree equality and level monotonicity, with the inverse tracked
    IntegerMatrix u = IntegerMatrix::identity(s);
    IntegerMatrix u_inverse = IntegerMatrix::identity(s);
    for (long long ops = pick(rng, 0, 4); ops > 0; --ops) {
        long long i = pick(rng, 0, s - 1);
        long long j = pick(rng, 0, s - 1);
        if (i == j)
            continue;
        if (instance.minus_degree[static_cast<size_t>(i)] !=
            instance.minus_degree[static_cast<size_t>(j)])
            continue;
        if (instance.minus_level[static_cast<size_t>(i)] <
            instance.minus_level[static_cast<size_t>(j)])
            continue;
        Int c = pick(rng, 1, 2) * (pick(rng, 0, 1) ? 1 : -1);
        for (long long col = 0; col < s; ++col)
            u.at(i, col) += c * u.at(j, col); // row_i += c row_j
        for (long long row = 0; row < s; ++row)
            u_inverse.at(row, j) -= c * u_inverse.at(row, i); // inverse column op
    }

    long long total = 2 * s;
    instance.d0 = IntegerMatrix(total, total);
    instance.d1 = IntegerMatrix(total, total);
    for (long long i = 0; i < s; ++i)
        for (long long j = 0; j < s; ++j)
            instance.d0.at(i, j) = d0_minus.at(i, j);
    // d0 on A_+ is -u d0 u^-1 in mirror coordinates, forcing anticommutation
    IntegerMatrix d0_plus = multiply(multiply(u, d0_minus), u_inverse);
    for (long long i = 0; i < s; ++i)
        for (long long j = 0; j < s; ++j)
            instance.d0.at(s + i, s + j) = -d0_plus.at(i, j);
    for (long long i = 0; i < s; ++i)
        for (long long j = 0; j < s; ++j)
            instance.d1.at(s + i, j) = u.at(i, j);

    instance.truncation = static_cast<long long>(level_set.size()) + 1 + pick(rng, 2, 4);
    return instance;
}

} // namespace testsupport
