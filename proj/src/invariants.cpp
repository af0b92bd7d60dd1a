#include "singres/invariants.hpp"

#include <algorithm>
#include <limits>

namespace singres {

namespace {

void require_positive_m(long long m) {
    if (m < 1)
        throw Error(ErrorCode::invalid_argument, "m must be a positive integer");
}

// All admissible md supports: non-star singletons plus the nerve strata,
// filtered by the star policy. Order is deterministic (ids, then nerve keys).
std::vector<StratumKey> admissible_subsets(const ResolutionData& data, StarPolicy policy) {
    std::vector<StratumKey> subsets;
    for (const auto& d : data.divisors)
        if (!d.is_star)
            subsets.push_back({d.id});
    const DivisorId star_id = data.star().id;
    for (const auto& [key, count] : data.nerve.strata) {
        (void)count;
        bool has_star = std::find(key.begin(), key.end(), star_id) != key.end();
        if (has_star && policy == StarPolicy::exclude_star)
            continue;
        subsets.push_back(key);
    }
    return subsets;
}

constexpr long long kUnreachable = std::numeric_limits<long long>::max();

} // namespace

long long multiplicity(const ResolutionData& data) {
    long long best = kUnreachable;
    for (const auto& d : data.divisors)
        if (!d.is_star)
            best = std::min(best, d.ord);
    if (best == kUnreachable)
        throw Error(ErrorCode::invalid_argument, "resolution has no exceptional divisor");
    return best;
}

Rational lct(const ResolutionData& data) {
    if (data.divisors.empty())
        throw Error(ErrorCode::invalid_argument, "resolution has no divisors");
    Rational best = 0;
    bool first = true;
    for (const auto& d : data.divisors) {
        Rational candidate = make_rational(d.discrepancy + 1, d.ord);
        if (first || candidate < best) {
            best = candidate;
            first = false;
        }
    }
    return best;
}

std::set<DivisorId> s_m(const ResolutionData& data, long long m) {
    require_positive_m(m);
    std::set<DivisorId> out;
    for (const auto& d : data.divisors)
        if (!d.is_star && m % d.ord == 0)
            out.insert(d.id);
    return out;
}

long long lefschetz(const ResolutionData& data, long long m) {
    long long sum = 0;
    for (const auto& id : s_m(data, m)) {
        const DivisorRecord& d = data.at(id);
        if (!d.euler_open)
            throw Error(ErrorCode::missing_data,
                        "divisor '" + id + "' lacks euler_open, required by the Lefschetz formula");
        sum += d.ord * *d.euler_open;
    }
    return sum;
}

std::map<long long, long long> monodromy_zeta(const ResolutionData& data) {
    std::map<long long, long long> factors;
    for (const auto& d : data.divisors) {
        if (d.is_star)
            continue;
        if (!d.euler_open)
            throw Error(ErrorCode::missing_data,
                        "divisor '" + d.id + "' lacks euler_open, required by the zeta factorization");
        factors[d.ord] -= *d.euler_open;
    }
    return factors;
}

long long hf_euler(const ResolutionData& data, long long m) {
    long long sign = (data.n % 2 == 0) ? 1 : -1;
    return sign * lefschetz(data, m);
}

namespace {

struct SubsetCost {
    long long total = kUnreachable;
    std::map<DivisorId, long long> coefficients;
};

// Minimal cost over coefficient tuples k >= 1 on a fixed support: peel off the
// mandatory one of each coin, then run an exact-change DP on the residue.
SubsetCost subset_min_cost(const ResolutionData& data, const StratumKey& subset, long long m,
                           bool log_discrepancy) {
    SubsetCost result;
    long long base_ord = 0;
    long long base_cost = 0;
    std::vector<std::pair<long long, long long>> coins; // (ord, cost), subset order
    for (const auto& id : subset) {
        const DivisorRecord& d = data.at(id);
        long long cost = d.discrepancy + (log_discrepancy ? 1 : 0);
        base_ord += d.ord;
        base_cost += cost;
        coins.push_back({d.ord, cost});
    }
    if (base_ord > m)
        return result;
    long long residue = m - base_ord;

    std::vector<long long> dp(static_cast<size_t>(residue) + 1, kUnreachable);
    std::vector<int> choice(static_cast<size_t>(residue) + 1, -1);
    dp[0] = 0;
    for (long long r = 1; r <= residue; ++r)
        for (size_t c = 0; c < coins.size(); ++c) {
            auto [ord, cost] = coins[c];
            if (ord <= r && dp[r - ord] != kUnreachable && dp[r - ord] + cost < dp[r]) {
                dp[r] = dp[r - ord] + cost;
                choice[r] = static_cast<int>(c);
            }
        }
    if (dp[residue] == kUnreachable)
        return result;

    result.total = base_cost + dp[residue];
    for (const auto& id : subset)
        result.coefficients[id] = 1;
    for (long long r = residue; r > 0; r -= coins[static_cast<size_t>(choice[r])].first)
        result.coefficients[subset[static_cast<size_t>(choice[r])]] += 1;
    return result;
}

MdResult md_impl(const ResolutionData& data, long long m, StarPolicy policy, bool log_discrepancy) {
    require_positive_m(m);
    MdResult best;
    best.value = ExtendedNat::infinity();
    for (const auto& subset : admissible_subsets(data, policy)) {
        SubsetCost cost = subset_min_cost(data, subset, m, log_discrepancy);
        if (cost.total == kUnreachable)
            continue;
        if (!best.value.is_finite() || cost.total < best.value.value()) {
            best.value = ExtendedNat(cost.total);
            MdWitness witness;
            witness.subset = std::set<DivisorId>(subset.begin(), subset.end());
            witness.coefficients = std::move(cost.coefficients);
            witness.value = cost.total;
            best.witness = std::move(witness);
        }
    }
    return best;
}

} // namespace

MdResult md(const ResolutionData& data, long long m, StarPolicy policy) {
    return md_impl(data, m, policy, false);
}

ExtendedNat md_plus(const ResolutionData& data, long long m) {
    return md_impl(data, m, StarPolicy::allow_mixed, true).value;
}

ExtendedNat md_bruteforce(const ResolutionData& data, long long m, StarPolicy policy,
                          long long bound) {
    require_positive_m(m);
    if (m > bound)
        throw Error(ErrorCode::bound_exceeded, "md_bruteforce called with m = " + std::to_string(m) +
                                                   " past its bound " + std::to_string(bound));

    long long best = kUnreachable;
    for (const auto& subset : admissible_subsets(data, policy)) {
        std::vector<std::pair<long long, long long>> coins;
        for (const auto& id : subset) {
            const DivisorRecord& d = data.at(id);
            coins.push_back({d.ord, d.discrepancy});
        }
        // enumerate every tuple k >= 1 with sum k_j ord_j == m
        auto enumerate = [&](auto&& self, size_t index, long long remaining, long long cost) -> void {
            if (index == coins.size()) {
                if (remaining == 0)
                    best = std::min(best, cost);
                return;
            }
            for (long long k = 1; k * coins[index].first <= remaining; ++k)
                self(self, index + 1, remaining - k * coins[index].first,
                     cost + k * coins[index].second);
        };
        enumerate(enumerate, 0, m, 0);
    }
    return best == kUnreachable ? ExtendedNat::infinity() : ExtendedNat(best);
}

} // namespace singres
