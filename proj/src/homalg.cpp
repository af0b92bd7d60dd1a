#include "singres/homalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "singres/error.hpp"

namespace singres {

IntegerMatrix IntegerMatrix::identity(long long n) {
    IntegerMatrix m(n, n);
    for (long long i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols != b.rows)
        throw Error(ErrorCode::invalid_argument, "matrix dimensions do not compose");
    IntegerMatrix out(a.rows, b.cols);
    for (long long i = 0; i < a.rows; ++i)
        for (long long k = 0; k < a.cols; ++k) {
            const Int& left = a.at(i, k);
            if (left == 0)
                continue;
            for (long long j = 0; j < b.cols; ++j)
                out.at(i, j) += left * b.at(k, j);
        }
    return out;
}

long long matrix_rank(const IntegerMatrix& input) {
    IntegerMatrix m = input;
    long long rank = 0;
    long long row = 0;
    for (long long col = 0; col < m.cols && row < m.rows; ++col) {
        long long pivot = -1;
        for (long long i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        for (long long j = 0; j < m.cols; ++j)
            std::swap(m.at(row, j), m.at(pivot, j));
        for (long long i = row + 1; i < m.rows; ++i) {
            if (m.at(i, col) == 0)
                continue;
            Int a = m.at(row, col);
            Int b = m.at(i, col);
            Int g = gcd(a, b);
            Int fa = a / g;
            Int fb = b / g;
            for (long long j = col; j < m.cols; ++j)
                m.at(i, j) = fa * m.at(i, j) - fb * m.at(row, j);
        }
        ++rank;
        ++row;
    }
    return rank;
}

Int determinant(const IntegerMatrix& input) {
    if (input.rows != input.cols)
        throw Error(ErrorCode::invalid_argument, "determinant of a non-square matrix");
    long long n = input.rows;
    if (n == 0)
        return 1;
    IntegerMatrix m = input;
    Int previous = 1;
    long long sign = 1;
    for (long long k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            long long pivot = -1;
            for (long long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                return 0;
            for (long long j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(pivot, j));
            sign = -sign;
        }
        for (long long i = k + 1; i < n; ++i)
            for (long long j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / previous;
        previous = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace {

struct SnfWorkspace {
    IntegerMatrix a, u, v;

    void swap_rows(long long i, long long j) {
        if (i == j)
            return;
        for (long long c = 0; c < a.cols; ++c)
            std::swap(a.at(i, c), a.at(j, c));
        for (long long c = 0; c < u.cols; ++c)
            std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(long long i, long long j) {
        if (i == j)
            return;
        for (long long r = 0; r < a.rows; ++r)
            std::swap(a.at(r, i), a.at(r, j));
        for (long long r = 0; r < v.rows; ++r)
            std::swap(v.at(r, i), v.at(r, j));
    }
    // row i -= q * row j
    void row_sub(long long i, long long j, const Int& q) {
        for (long long c = 0; c < a.cols; ++c)
            a.at(i, c) -= q * a.at(j, c);
        for (long long c = 0; c < u.cols; ++c)
            u.at(i, c) -= q * u.at(j, c);
    }
    // col i -= q * col j
    void col_sub(long long i, long long j, const Int& q) {
        for (long long r = 0; r < a.rows; ++r)
            a.at(r, i) -= q * a.at(r, j);
        for (long long r = 0; r < v.rows; ++r)
            v.at(r, i) -= q * v.at(r, j);
    }
    void negate_row(long long i) {
        for (long long c = 0; c < a.cols; ++c)
            a.at(i, c) = -a.at(i, c);
        for (long long c = 0; c < u.cols; ++c)
            u.at(i, c) = -u.at(i, c);
    }
};

} // namespace

SmithResult smith_normal_form(const IntegerMatrix& input) {
    SnfWorkspace w{input, IntegerMatrix::identity(input.rows), IntegerMatrix::identity(input.cols)};
    long long limit = std::min(input.rows, input.cols);

    for (long long t = 0; t < limit; ++t) {
        // pivot: minimal absolute nonzero entry in the trailing block,
        // rows-first tie-break, so outputs are reproducible
        while (true) {
            long long pr = -1, pc = -1;
            for (long long i = t; i < w.a.rows; ++i)
                for (long long j = t; j < w.a.cols; ++j)
                    if (w.a.at(i, j) != 0 &&
                        (pr < 0 || abs(w.a.at(i, j)) < abs(w.a.at(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) {
                t = limit; // trailing block is zero
                break;
            }
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);

            bool reduced = true;
            for (long long i = t + 1; i < w.a.rows; ++i) {
                if (w.a.at(i, t) == 0)
                    continue;
                Int q = w.a.at(i, t) / w.a.at(t, t);
                if (q != 0)
                    w.row_sub(i, t, q);
                if (w.a.at(i, t) != 0)
                    reduced = false; // remainder is smaller than the pivot
            }
            for (long long j = t + 1; j < w.a.cols; ++j) {
                if (w.a.at(t, j) == 0)
                    continue;
                Int q = w.a.at(t, j) / w.a.at(t, t);
                if (q != 0)
                    w.col_sub(j, t, q);
                if (w.a.at(t, j) != 0)
                    reduced = false;
            }
            if (!reduced)
                continue;

            // pivot must divide the trailing block for the divisibility chain
            bool divides = true;
            for (long long i = t + 1; i < w.a.rows && divides; ++i)
                for (long long j = t + 1; j < w.a.cols && divides; ++j)
                    if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                        w.row_sub(t, i, Int(-1)); // pull the offending row in
                        divides = false;
                    }
            if (divides)
                break;
        }
        if (t >= limit)
            break;
        if (w.a.at(t, t) < 0)
            w.negate_row(t);
    }

    SmithResult result;
    result.u = std::move(w.u);
    result.v = std::move(w.v);
    result.d = std::move(w.a);
    for (long long t = 0; t < limit; ++t)
        if (result.d.at(t, t) != 0)
            ++result.rank;
    return result;
}

std::vector<Int> SmithResult::diagonal() const {
    std::vector<Int> out;
    for (long long t = 0; t < std::min(d.rows, d.cols); ++t)
        out.push_back(d.at(t, t));
    return out;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m) {
    SmithResult snf = smith_normal_form(m);
    IntegerMatrix basis(m.cols, m.cols - snf.rank);
    for (long long j = snf.rank; j < m.cols; ++j)
        for (long long i = 0; i < m.cols; ++i)
            basis.at(i, j - snf.rank) = snf.v.at(i, j);
    return basis;
}

namespace {

long long rank_of(const std::map<long long, long long>& ranks, long long degree) {
    auto it = ranks.find(degree);
    return it == ranks.end() ? 0 : it->second;
}

// degree of the target of the boundary leaving `degree`
long long target_degree(Convention convention, long long degree) {
    return convention == Convention::homological ? degree - 1 : degree + 1;
}

// matrix of the boundary leaving `degree` (zero map when absent)
IntegerMatrix boundary_from(const ChainComplex& complex, long long degree) {
    auto it = complex.boundaries.find(degree);
    if (it != complex.boundaries.end())
        return it->second;
    return IntegerMatrix(rank_of(complex.ranks, target_degree(complex.convention, degree)),
                         rank_of(complex.ranks, degree));
}

void check_complex(const ChainComplex& complex) {
    for (const auto& [degree, matrix] : complex.boundaries) {
        long long source = rank_of(complex.ranks, degree);
        long long target = rank_of(complex.ranks, target_degree(complex.convention, degree));
        if (matrix.cols != source || matrix.rows != target)
            throw Error(ErrorCode::not_a_complex,
                        "boundary at degree " + std::to_string(degree) + " is " +
                            std::to_string(matrix.rows) + "x" + std::to_string(matrix.cols) +
                            ", expected " + std::to_string(target) + "x" + std::to_string(source));
    }
    for (const auto& [degree, matrix] : complex.boundaries) {
        long long next = target_degree(complex.convention, degree);
        auto it = complex.boundaries.find(next);
        if (it == complex.boundaries.end())
            continue;
        IntegerMatrix square = multiply(it->second, matrix);
        for (const Int& entry : square.data)
            if (entry != 0)
                throw Error(ErrorCode::not_a_complex,
                            "boundary composition from degree " + std::to_string(degree) +
                                " is nonzero");
    }
}

} // namespace

HomologySummary homology(const ChainComplex& complex) {
    check_complex(complex);
    HomologySummary summary;
    for (const auto& [degree, rank] : complex.ranks) {
        if (rank == 0)
            continue;
        long long incoming_degree =
            complex.convention == Convention::homological ? degree + 1 : degree - 1;
        IntegerMatrix outgoing = boundary_from(complex, degree);
        IntegerMatrix incoming = boundary_from(complex, incoming_degree);
        SmithResult snf_in = smith_normal_form(incoming);
        DegreeHomology h;
        h.rank = rank - matrix_rank(outgoing) - snf_in.rank;
        for (const Int& d : snf_in.diagonal())
            if (d > 1)
                h.torsion.push_back(d);
        if (h.rank != 0 || !h.torsion.empty())
            summary[degree] = std::move(h);
    }
    return summary;
}

std::string homology_to_string(const HomologySummary& summary, Convention convention) {
    std::ostringstream out;
    const char* name = convention == Convention::homological ? "H_" : "H^";
    if (summary.empty())
        out << "trivial homology\n";
    for (const auto& [degree, h] : summary) {
        out << name << degree << " = ";
        bool first = true;
        if (h.rank > 0) {
            out << "Z";
            if (h.rank > 1)
                out << "^" << h.rank;
            first = false;
        }
        for (const Int& t : h.torsion) {
            if (!first)
                out << " + ";
            out << "Z/" << t.str();
            first = false;
        }
        if (first)
            out << "0";
        out << "\n";
    }
    return out.str();
}

// --- filtration spectral sequence -------------------------------------------

namespace {

// Cohomological reindexing of a filtered complex: generators are (degree,
// index) pairs carrying a filtration level; the differential raises degree.
struct GradedFiltered {
    std::map<long long, long long> ranks;              // cohomological degree -> rank
    std::map<long long, IntegerMatrix> differentials;  // degree d -> matrix into d+1
    std::map<long long, std::vector<long long>> levels;
    long long max_level = 0;

    long long rank(long long degree) const { return rank_of(ranks, degree); }

    const IntegerMatrix* differential(long long degree) const {
        auto it = differentials.find(degree);
        return it == differentials.end() ? nullptr : &it->second;
    }

    long long level(long long degree, long long index) const {
        return levels.at(degree)[static_cast<size_t>(index)];
    }
};

GradedFiltered prepare(const FilteredComplex& filtered) {
    check_complex(filtered.complex);
    const ChainComplex& complex = filtered.complex;
    bool homological = complex.convention == Convention::homological;
    auto to_coh = [&](long long degree) { return homological ? -degree : degree; };

    GradedFiltered out;
    for (const auto& [degree, rank] : complex.ranks)
        out.ranks[to_coh(degree)] = rank;
    for (const auto& [degree, matrix] : complex.boundaries)
        out.differentials[to_coh(degree)] = matrix;

    for (const auto& [degree, rank] : complex.ranks) {
        auto it = filtered.filtration.find(degree);
        if (it == filtered.filtration.end() || static_cast<long long>(it->second.size()) != rank)
            throw Error(ErrorCode::invalid_filtration,
                        "filtration missing or mis-sized at degree " + std::to_string(degree));
        for (long long level : it->second) {
            if (level < 0)
                throw Error(ErrorCode::invalid_filtration, "filtration levels must be >= 0");
            out.max_level = std::max(out.max_level, level);
        }
        out.levels[to_coh(degree)] = it->second;
    }

    // the boundary may never land in a lower filtration level
    for (const auto& [degree, matrix] : out.differentials) {
        if (matrix.rows == 0 || matrix.cols == 0)
            continue;
        const auto& source_levels = out.levels.at(degree);
        const auto& target_levels = out.levels.at(degree + 1);
        for (long long i = 0; i < matrix.rows; ++i)
            for (long long j = 0; j < matrix.cols; ++j)
                if (matrix.at(i, j) != 0 &&
                    target_levels[static_cast<size_t>(i)] < source_levels[static_cast<size_t>(j)])
                    throw Error(ErrorCode::invalid_filtration,
                                "boundary decreases the filtration level at degree " +
                                    std::to_string(degree));
    }
    return out;
}

// columns: generators of `degree` with level >= p_from;
// rows: generators of degree+1 with level < p_to. The kernel of this matrix
// is Z^{p_from}_{p_to - p_from} in the cycle notation.
IntegerMatrix restricted_differential(const GradedFiltered& g, long long degree, long long p_from,
                                      long long p_to, std::vector<long long>* source_indices) {
    std::vector<long long> sources, targets;
    for (long long j = 0; j < g.rank(degree); ++j)
        if (g.level(degree, j) >= p_from)
            sources.push_back(j);
    for (long long i = 0; i < g.rank(degree + 1); ++i)
        if (g.level(degree + 1, i) < p_to)
            targets.push_back(i);
    const IntegerMatrix* d = g.differential(degree);
    IntegerMatrix out(static_cast<long long>(targets.size()), static_cast<long long>(sources.size()));
    if (d)
        for (size_t i = 0; i < targets.size(); ++i)
            for (size_t j = 0; j < sources.size(); ++j)
                out.at(static_cast<long long>(i), static_cast<long long>(j)) =
                    d->at(targets[i], sources[j]);
    if (source_indices)
        *source_indices = sources;
    return out;
}

// basis of Z_r^{p, degree} = {x in F_p C^degree : dx in F_{p+r}} as full
// coordinate vectors in C^degree
IntegerMatrix cycle_space(const GradedFiltered& g, long long degree, long long p, long long p_to) {
    std::vector<long long> sources;
    IntegerMatrix restricted = restricted_differential(g, degree, p, p_to, &sources);
    IntegerMatrix kernel = kernel_basis(restricted);
    IntegerMatrix full(g.rank(degree), kernel.cols);
    for (long long j = 0; j < kernel.cols; ++j)
        for (size_t i = 0; i < sources.size(); ++i)
            full.at(sources[i], j) = kernel.at(static_cast<long long>(i), j);
    return full;
}

IntegerMatrix apply_differential(const GradedFiltered& g, long long degree,
                                 const IntegerMatrix& vectors) {
    const IntegerMatrix* d = g.differential(degree);
    if (!d)
        return IntegerMatrix(g.rank(degree + 1), vectors.cols);
    return multiply(*d, vectors);
}

IntegerMatrix concat_columns(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows != b.rows)
        throw Error(ErrorCode::invalid_argument, "column blocks of unequal height");
    IntegerMatrix out(a.rows, a.cols + b.cols);
    for (long long i = 0; i < a.rows; ++i) {
        for (long long j = 0; j < a.cols; ++j)
            out.at(i, j) = a.at(i, j);
        for (long long j = 0; j < b.cols; ++j)
            out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

} // namespace

std::vector<Page> filtration_pages(const FilteredComplex& filtered, long long r_max) {
    if (r_max < 0)
        throw Error(ErrorCode::invalid_argument, "r_max must be nonnegative");
    GradedFiltered g = prepare(filtered);

    std::vector<Page> pages;
    for (long long r = 0; r <= r_max; ++r) {
        Page page;
        for (long long p = 0; p <= g.max_level; ++p) {
            for (const auto& [degree, rank] : g.ranks) {
                if (rank == 0)
                    continue;
                PageEntry entry;
                entry.p = p;
                entry.q = degree - p;
                if (r == 0) {
                    // graded piece: generators at level exactly p
                    long long count = 0;
                    for (long long j = 0; j < rank; ++j)
                        if (g.level(degree, j) == p)
                            ++count;
                    entry.rank = count;
                } else if (r == 1) {
                    // integral homology of the level-p graded quotient complex
                    auto graded_block = [&](long long from_degree) {
                        std::vector<long long> sources, targets;
                        for (long long j = 0; j < g.rank(from_degree); ++j)
                            if (g.level(from_degree, j) == p)
                                sources.push_back(j);
                        for (long long i = 0; i < g.rank(from_degree + 1); ++i)
                            if (g.level(from_degree + 1, i) == p)
                                targets.push_back(i);
                        const IntegerMatrix* d = g.differential(from_degree);
                        IntegerMatrix block(static_cast<long long>(targets.size()),
                                            static_cast<long long>(sources.size()));
                        if (d)
                            for (size_t i = 0; i < targets.size(); ++i)
                                for (size_t j = 0; j < sources.size(); ++j)
                                    block.at(static_cast<long long>(i), static_cast<long long>(j)) =
                                        d->at(targets[i], sources[j]);
                        return block;
                    };
                    IntegerMatrix outgoing = graded_block(degree);
                    IntegerMatrix incoming = graded_block(degree - 1);
                    long long graded_rank = outgoing.cols;
                    SmithResult snf_in = smith_normal_form(incoming);
                    entry.rank = graded_rank - matrix_rank(outgoing) - snf_in.rank;
                    for (const Int& d : snf_in.diagonal())
                        if (d > 1)
                            entry.torsion.push_back(d);
                } else {
                    // rational rank of Z_r / (Z_{r-1} one level up + d Z_{r-1})
                    IntegerMatrix z_r = cycle_space(g, degree, p, p + r);
                    IntegerMatrix z_up = cycle_space(g, degree, p + 1, p + r);
                    IntegerMatrix z_low = cycle_space(g, degree - 1, p - r + 1, p);
                    IntegerMatrix hit = apply_differential(g, degree - 1, z_low);
                    entry.rank = matrix_rank(z_r) - matrix_rank(concat_columns(z_up, hit));
                }
                if (entry.rank != 0 || !entry.torsion.empty())
                    page.push_back(std::move(entry));
            }
        }
        std::sort(page.begin(), page.end(), [](const PageEntry& a, const PageEntry& b) {
            return std::tie(a.p, a.q) < std::tie(b.p, b.q);
        });
        pages.push_back(std::move(page));
    }
    return pages;
}

// --- collapse lemma ----------------------------------------------------------

std::pair<bool, HomologySummary> collapse_check(const CollapseInstance& instance) {
    long long s = static_cast<long long>(instance.minus_degree.size());
    long long t = static_cast<long long>(instance.plus_degree.size());
    long long total = s + t;
    if (static_cast<long long>(instance.minus_level.size()) != s ||
        static_cast<long long>(instance.plus_level.size()) != t)
        throw Error(ErrorCode::invalid_argument, "generator degree/level lists of unequal length");
    if (instance.d0.rows != total || instance.d0.cols != total || instance.d1.rows != total ||
        instance.d1.cols != total)
        throw Error(ErrorCode::invalid_argument, "differential matrices must be (s+t) x (s+t)");
    long long n_trunc = instance.truncation;

    auto degree_of = [&](long long g) {
        return g < s ? instance.minus_degree[static_cast<size_t>(g)]
                     : instance.plus_degree[static_cast<size_t>(g - s)];
    };
    auto level_of = [&](long long g) {
        return g < s ? instance.minus_level[static_cast<size_t>(g)]
                     : instance.plus_level[static_cast<size_t>(g - s)];
    };

    // structural invariants of the split differential
    for (long long i = 0; i < total; ++i)
        for (long long j = 0; j < total; ++j) {
            if (instance.d0.at(i, j) != 0) {
                if (degree_of(i) != degree_of(j) + 1)
                    throw Error(ErrorCode::invalid_argument, "d0 is not homogeneous of degree +1");
                if (level_of(i) < level_of(j))
                    throw Error(ErrorCode::invalid_argument, "d0 decreases the filtration level");
                if (j < s && i >= s)
                    throw Error(ErrorCode::invalid_argument, "d0 maps A_- outside A_-");
            }
            if (instance.d1.at(i, j) != 0) {
                if (degree_of(i) != degree_of(j) - 1)
                    throw Error(ErrorCode::invalid_argument,
                                "d1 must lower the generator degree by 1 (u carries degree -2)");
                if (level_of(i) < level_of(j))
                    throw Error(ErrorCode::invalid_argument, "d1 decreases the filtration level");
            }
        }

    std::set<long long> levels;
    for (long long g = 0; g < total; ++g)
        levels.insert(level_of(g));

    // hypothesis: per level, d1 restricted to u * (A_- at that level) is an
    // isomorphism onto A_+ at that level, i.e. the block is unimodular and no
    // same-level A_- component survives
    for (long long level : levels) {
        std::vector<long long> minus_here, plus_here;
        for (long long g = 0; g < s; ++g)
            if (instance.minus_level[static_cast<size_t>(g)] == level)
                minus_here.push_back(g);
        for (long long g = 0; g < t; ++g)
            if (instance.plus_level[static_cast<size_t>(g)] == level)
                plus_here.push_back(s + g);
        for (long long target = 0; target < s; ++target)
            if (instance.minus_level[static_cast<size_t>(target)] == level)
                for (long long source : minus_here)
                    if (instance.d1.at(target, source) != 0)
                        throw Error(ErrorCode::hypothesis_failed,
                                    "level " + std::to_string(level) +
                                        ": d1 keeps an A_- component inside the level");
        if (minus_here.size() != plus_here.size())
            throw Error(ErrorCode::hypothesis_failed,
                        "level " + std::to_string(level) + ": A_- and A_+ ranks differ (" +
                            std::to_string(minus_here.size()) + " vs " +
                            std::to_string(plus_here.size()) + ")");
        IntegerMatrix block(static_cast<long long>(plus_here.size()),
                            static_cast<long long>(minus_here.size()));
        for (size_t i = 0; i < plus_here.size(); ++i)
            for (size_t j = 0; j < minus_here.size(); ++j)
                block.at(static_cast<long long>(i), static_cast<long long>(j)) =
                    instance.d1.at(plus_here[i], minus_here[j]);
        Int det_block = determinant(block);
        if (det_block != 1 && det_block != -1)
            throw Error(ErrorCode::hypothesis_failed,
                        "level " + std::to_string(level) +
                            ": the block of d1 from uA_- to A_+ is not unimodular (determinant " +
                            det_block.str() + ")");
    }

    // the truncation must be deep enough that every degree carrying H(A_-)
    // is unaffected by the missing u-powers
    long long max_degree = degree_of(0);
    for (long long g = 0; g < total; ++g)
        max_degree = std::max(max_degree, degree_of(g));
    long long safe_degree = max_degree - 2 * n_trunc;
    long long min_minus_degree = s > 0 ? instance.minus_degree[0] : max_degree;
    for (long long g = 0; g < s; ++g)
        min_minus_degree = std::min(min_minus_degree, instance.minus_degree[static_cast<size_t>(g)]);
    if (n_trunc <= static_cast<long long>(levels.size()) || safe_degree > min_minus_degree)
        throw Error(ErrorCode::truncation_too_small,
                    "truncation order " + std::to_string(n_trunc) +
                        " cannot certify degrees down to " + std::to_string(min_minus_degree));

    // truncated total complex: generators (g, k) of degree deg(g) - 2k,
    // differential d0 at the same u-power plus d1 one power down
    ChainComplex truncated;
    truncated.convention = Convention::cohomological;
    std::map<long long, std::vector<std::pair<long long, long long>>> by_degree;
    for (long long g = 0; g < total; ++g)
        for (long long k = 0; k <= n_trunc; ++k)
            by_degree[degree_of(g) - 2 * k].push_back({g, k});
    std::map<std::pair<long long, long long>, long long> position;
    for (auto& [degree, gens] : by_degree) {
        truncated.ranks[degree] = static_cast<long long>(gens.size());
        for (size_t i = 0; i < gens.size(); ++i)
            position[gens[i]] = static_cast<long long>(i);
    }
    for (const auto& [degree, gens] : by_degree) {
        auto target_it = by_degree.find(degree + 1);
        IntegerMatrix matrix(
            target_it == by_degree.end() ? 0 : static_cast<long long>(target_it->second.size()),
            static_cast<long long>(gens.size()));
        if (target_it != by_degree.end()) {
            for (size_t j = 0; j < gens.size(); ++j) {
                auto [g, k] = gens[j];
                for (long long i = 0; i < total; ++i) {
                    if (instance.d0.at(i, g) != 0)
                        matrix.at(position.at({i, k}), static_cast<long long>(j)) +=
                            instance.d0.at(i, g);
                    if (k >= 1 && instance.d1.at(i, g) != 0)
                        matrix.at(position.at({i, k - 1}), static_cast<long long>(j)) +=
                            instance.d1.at(i, g);
                }
            }
        }
        truncated.boundaries[degree] = std::move(matrix);
    }

    ChainComplex minus_only;
    minus_only.convention = Convention::cohomological;
    std::map<long long, std::vector<long long>> minus_by_degree;
    for (long long g = 0; g < s; ++g)
        minus_by_degree[instance.minus_degree[static_cast<size_t>(g)]].push_back(g);
    std::map<long long, long long> minus_position;
    for (auto& [degree, gens] : minus_by_degree) {
        minus_only.ranks[degree] = static_cast<long long>(gens.size());
        for (size_t i = 0; i < gens.size(); ++i)
            minus_position[gens[i]] = static_cast<long long>(i);
    }
    for (const auto& [degree, gens] : minus_by_degree) {
        auto target_it = minus_by_degree.find(degree + 1);
        IntegerMatrix matrix(
            target_it == minus_by_degree.end() ? 0 : static_cast<long long>(target_it->second.size()),
            static_cast<long long>(gens.size()));
        if (target_it != minus_by_degree.end())
            for (size_t j = 0; j < gens.size(); ++j)
                for (long long i : target_it->second)
                    matrix.at(minus_position.at(i), static_cast<long long>(j)) =
                        instance.d0.at(i, gens[j]);
        minus_only.boundaries[degree] = std::move(matrix);
    }

    HomologySummary total_homology = homology(truncated); // also checks d^2 = 0
    HomologySummary minus_homology = homology(minus_only);

    bool verdict = true;
    for (long long degree = safe_degree; degree <= max_degree + 1; ++degree) {
        DegreeHomology total_h, minus_h;
        if (auto it = total_homology.find(degree); it != total_homology.end())
            total_h = it->second;
        if (auto it = minus_homology.find(degree); it != minus_homology.end())
            minus_h = it->second;
        if (!(total_h == minus_h))
            verdict = false;
    }
    return {verdict, minus_homology};
}

// --- JSON exchange ------------------------------------------------------------

FilteredComplex filtered_complex_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "top level: expected an object");

    FilteredComplex out;
    std::string convention = doc.value("convention", std::string("homological"));
    if (convention == "homological")
        out.complex.convention = Convention::homological;
    else if (convention == "cohomological")
        out.complex.convention = Convention::cohomological;
    else
        throw Error(ErrorCode::parse_error, "convention must be homological or cohomological");

    if (!doc.contains("ranks") || !doc["ranks"].is_object())
        throw Error(ErrorCode::parse_error, "ranks: expected an object");
    for (auto it = doc["ranks"].begin(); it != doc["ranks"].end(); ++it)
        out.complex.ranks[std::stoll(it.key())] = it.value().get<long long>();

    if (doc.contains("boundaries")) {
        if (!doc["boundaries"].is_object())
            throw Error(ErrorCode::parse_error, "boundaries: expected an object");
        for (auto it = doc["boundaries"].begin(); it != doc["boundaries"].end(); ++it) {
            const auto& mj = it.value();
            if (!mj.is_object() || !mj.contains("rows") || !mj.contains("cols") ||
                !mj.contains("data"))
                throw Error(ErrorCode::parse_error, "boundary matrices need rows, cols, data");
            IntegerMatrix m(mj["rows"].get<long long>(), mj["cols"].get<long long>());
            const auto& data = mj["data"];
            if (!data.is_array() ||
                static_cast<long long>(data.size()) != m.rows * m.cols)
                throw Error(ErrorCode::parse_error, "boundary data has the wrong length");
            for (size_t i = 0; i < data.size(); ++i)
                m.data[i] = Int(data[i].get<long long>());
            out.complex.boundaries[std::stoll(it.key())] = std::move(m);
        }
    }

    if (doc.contains("filtration")) {
        if (!doc["filtration"].is_object())
            throw Error(ErrorCode::parse_error, "filtration: expected an object");
        for (auto it = doc["filtration"].begin(); it != doc["filtration"].end(); ++it) {
            std::vector<long long> levels;
            for (const auto& lj : it.value())
                levels.push_back(lj.get<long long>());
            out.filtration[std::stoll(it.key())] = std::move(levels);
        }
    }
    return out;
}

bool has_filtration(const FilteredComplex& f) { return !f.filtration.empty(); }

} // namespace singres
