// Blowup bookkeeping: the pair-sum statistic driving the separating loop, a
// single blowup along a pair stratum, and the loop that turns any resolution
// into a multiplicity-m separating one.
#pragma once

#include <optional>

#include "singres/model.hpp"

namespace singres {

struct PairSumReport {
    ExtendedNat a_y;                  // minimal ord_i + ord_j over pair strata
    long long b_y = 0;                // components achieving the minimum
    std::vector<StratumKey> witnesses; // achieving pairs, sorted
};

// true iff ord_i + ord_j > m for every pair stratum (star included)
bool is_separating(const ResolutionData& data, long long m);

PairSumReport min_pair_sum(const ResolutionData& data);

// Blows up `count` components of the pair stratum (all when nullopt). Each
// blown component yields a fresh divisor with ord = ord_i + ord_j and
// discrepancy = a_i + a_j + 1, meeting exactly the two old divisors.
// Throws unknown_stratum, and out_of_scope when n >= 2 and a triple stratum
// over the pair blocks the combinatorial update.
ResolutionData blow_up_pair(const ResolutionData& data, const StratumKey& pair,
                            std::optional<long long> count = std::nullopt);

struct CreatedDivisor {
    DivisorId id;
    long long ord = 0;
    long long discrepancy = 0;

    friend bool operator==(const CreatedDivisor&, const CreatedDivisor&) = default;
};

struct BlowupStep {
    StratumKey pair;
    long long components = 0;
    std::vector<CreatedDivisor> created;

    friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

struct BlowupTrace {
    std::vector<BlowupStep> steps;

    friend bool operator==(const BlowupTrace&, const BlowupTrace&) = default;
};

// While some pair stratum has ord-sum <= m, blow up all components of the
// minimal-sum pair (ties broken lexicographically on the sorted id pair).
// The output satisfies is_separating(result, m).
std::pair<ResolutionData, BlowupTrace> separate(const ResolutionData& data, long long m);

std::string trace_to_json(const BlowupTrace& trace);

} // namespace singres
