#include "singres/spectral.hpp"

#include <algorithm>

#include "singres/invariants.hpp"
#include "singres/separating.hpp"

namespace singres {

namespace {

void require_separating(const ResolutionData& data, long long m) {
    if (!is_separating(data, m))
        throw Error(ErrorCode::not_separating,
                    "resolution is not multiplicity-" + std::to_string(m) +
                        " separating; run separate first");
}

} // namespace

ExtendedNat mu(const ResolutionData& data, long long m) {
    require_separating(data, m);
    ExtendedNat best = ExtendedNat::infinity();
    for (const auto& id : s_m(data, m)) {
        const DivisorRecord& d = data.at(id);
        long long value = (m / d.ord) * (d.discrepancy + 1);
        if (!best.is_finite() || value < best.value())
            best = ExtendedNat(value);
    }
    return best;
}

std::optional<long long> nu(const ResolutionData& data, long long m) {
    ExtendedNat m_mu = mu(data, m);
    if (!m_mu.is_finite())
        return std::nullopt;
    return data.n - 2 * m_mu.value();
}

E1Page e1_page(const ResolutionData& data, long long m,
               const std::map<DivisorId, long long>* weights) {
    require_separating(data, m);
    E1Page page;
    page.m = m;
    page.n = data.n;
    for (const auto& id : s_m(data, m)) {
        const DivisorRecord& d = data.at(id);
        if (!d.cover)
            throw Error(ErrorCode::missing_data,
                        "divisor '" + id + "' lacks cover data, required for the E1 page");
        long long w = 1;
        if (weights && weights->count(id)) {
            w = weights->at(id);
            if (w < 1)
                throw Error(ErrorCode::invalid_argument, "weight for '" + id + "' must be positive");
        } else if (d.weight) {
            w = *d.weight;
        } else {
            page.default_weights_used = true;
        }
        long long k = m / d.ord;
        long long p = -k * w;
        for (size_t degree = 0; degree < d.cover->betti.size(); ++degree) {
            long long rank = d.cover->betti[degree];
            if (rank == 0)
                continue;
            E1Entry entry;
            entry.p = p;
            entry.q = data.n - p - 2 * k * (d.discrepancy + 1) - static_cast<long long>(degree);
            entry.divisor = id;
            entry.homology_degree = static_cast<long long>(degree);
            entry.rank = rank;
            page.entries.push_back(std::move(entry));
        }
    }
    std::sort(page.entries.begin(), page.entries.end(), [](const E1Entry& a, const E1Entry& b) {
        return std::tie(a.p, a.q, a.divisor, a.homology_degree) <
               std::tie(b.p, b.q, b.divisor, b.homology_degree);
    });
    return page;
}

std::pair<long long, bool> e1_euler_check(const E1Page& page, const ResolutionData& data) {
    long long sum = 0;
    for (const auto& entry : page.entries) {
        long long sign = ((entry.p + entry.q) % 2 == 0) ? 1 : -1;
        sum += sign * entry.rank;
    }
    return {sum, sum == hf_euler(data, page.m)};
}

DegenerationReport degeneration_check(const E1Page& page) {
    DegenerationReport report;
    for (const auto& entry : page.entries) {
        long long total = entry.p + entry.q;
        if (!report.top_total_degree || total > *report.top_total_degree)
            report.top_total_degree = total;
        auto it = report.column_tops.find(entry.p);
        if (it == report.column_tops.end() || total > it->second)
            report.column_tops[entry.p] = total;
    }
    if (!report.top_total_degree) {
        report.hypothesis_holds = true;
        report.conclusion = DegenerationReport::Conclusion::vanishes;
        return report;
    }
    for (const auto& [column, top] : report.column_tops) {
        (void)column;
        if (top == *report.top_total_degree - 1)
            report.hypothesis_holds = false;
    }
    report.conclusion = report.hypothesis_holds ? DegenerationReport::Conclusion::nonzero_at_top
                                                : DegenerationReport::Conclusion::inconclusive;
    return report;
}

long long multiplicity_via_floer(const ResolutionData& data) {
    // md_plus is finite first at m = min ord (a singleton witness with k = 1);
    // no mixed support can sum below that
    long long bound = multiplicity(data);
    for (long long m = 1; m <= bound; ++m)
        if (md_plus(data, m).is_finite())
            return m;
    return bound;
}

Rational lct_via_floer(const ResolutionData& data, long long m_max) {
    if (m_max < 1)
        throw Error(ErrorCode::invalid_argument, "m_max must be a positive integer");
    Rational best = 1;
    for (long long m = 1; m <= m_max; ++m) {
        ExtendedNat plus = md_plus(data, m);
        if (!plus.is_finite())
            continue; // the term is min(1, infinity) = 1
        Rational candidate = make_rational(plus.value(), m);
        if (candidate < best)
            best = candidate;
    }
    return best;
}

} // namespace singres
