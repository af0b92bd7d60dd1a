#include "singres/separating.hpp"

#include <algorithm>

#include <json.hpp>

namespace singres {

bool is_separating(const ResolutionData& data, long long m) {
    if (m < 1)
        throw Error(ErrorCode::invalid_argument, "m must be a positive integer");
    for (const auto& [key, count] : data.nerve.strata) {
        (void)count;
        if (key.size() != 2)
            continue;
        if (data.at(key[0]).ord + data.at(key[1]).ord <= m)
            return false;
    }
    return true;
}

PairSumReport min_pair_sum(const ResolutionData& data) {
    PairSumReport report;
    report.a_y = ExtendedNat::infinity();
    for (const auto& [key, count] : data.nerve.strata) {
        if (key.size() != 2)
            continue;
        long long sum = data.at(key[0]).ord + data.at(key[1]).ord;
        if (!report.a_y.is_finite() || sum < report.a_y.value()) {
            report.a_y = ExtendedNat(sum);
            report.b_y = count;
            report.witnesses = {key};
        } else if (sum == report.a_y.value()) {
            report.b_y += count;
            report.witnesses.push_back(key);
        }
    }
    std::sort(report.witnesses.begin(), report.witnesses.end());
    return report;
}

namespace {

// smallest "b<k>" not already taken, k counting up from 1
DivisorId fresh_id(const ResolutionData& data, long long& counter) {
    while (true) {
        DivisorId candidate = "b" + std::to_string(counter);
        ++counter;
        if (!data.find(candidate))
            return candidate;
    }
}

} // namespace

ResolutionData blow_up_pair(const ResolutionData& data, const StratumKey& pair,
                            std::optional<long long> count) {
    StratumKey key = make_stratum_key(pair);
    if (key.size() != 2)
        throw Error(ErrorCode::invalid_argument, "blowup center must be a pair of distinct divisors");
    auto it = data.nerve.strata.find(key);
    if (it == data.nerve.strata.end())
        throw Error(ErrorCode::unknown_stratum,
                    "stratum {" + key[0] + "," + key[1] + "} is not present in the nerve");
    long long available = it->second;
    long long k = count.value_or(available);
    if (k < 1 || k > available)
        throw Error(ErrorCode::invalid_argument,
                    "component count " + std::to_string(k) + " out of range 1.." +
                        std::to_string(available));
    if (data.n >= 2) {
        for (const auto& [other, c] : data.nerve.strata) {
            (void)c;
            if (other.size() >= 3 && std::includes(other.begin(), other.end(), key.begin(), key.end()))
                throw Error(ErrorCode::out_of_scope,
                            "a triple stratum contains {" + key[0] + "," + key[1] +
                                "}; component-level incidence data is not modeled");
        }
    }

    const DivisorRecord& left = data.at(key[0]);
    const DivisorRecord& right = data.at(key[1]);

    ResolutionData out = data;
    if (k == available)
        out.nerve.strata.erase(key);
    else
        out.nerve.strata[key] = available - k;

    long long counter = 1;
    for (long long c = 0; c < k; ++c) {
        DivisorRecord fresh;
        fresh.id = fresh_id(out, counter);
        fresh.ord = left.ord + right.ord;
        fresh.discrepancy = left.discrepancy + right.discrepancy + 1;
        fresh.is_star = false;
        if (data.n == 1)
            fresh.euler_open = 0; // a projective line meeting the two strict transforms
        out.nerve.strata[make_stratum_key({key[0], fresh.id})] = 1;
        out.nerve.strata[make_stratum_key({key[1], fresh.id})] = 1;
        out.divisors.push_back(std::move(fresh));
        out = normalized(std::move(out));
    }
    return out;
}

std::pair<ResolutionData, BlowupTrace> separate(const ResolutionData& data, long long m) {
    if (m < 1)
        throw Error(ErrorCode::invalid_argument, "m must be a positive integer");
    ResolutionData current = normalized(data);
    BlowupTrace trace;
    while (true) {
        PairSumReport report = min_pair_sum(current);
        if (!report.a_y.is_finite() || report.a_y.value() > m)
            break;
        const StratumKey& pair = report.witnesses.front(); // lexicographic tie-break
        long long components = current.nerve.strata.at(pair);

        std::set<DivisorId> before;
        for (const auto& d : current.divisors)
            before.insert(d.id);
        current = blow_up_pair(current, pair);

        BlowupStep step;
        step.pair = pair;
        step.components = components;
        for (const auto& d : current.divisors)
            if (!before.count(d.id))
                step.created.push_back({d.id, d.ord, d.discrepancy});
        trace.steps.push_back(std::move(step));
    }
    return {current, trace};
}

std::string trace_to_json(const BlowupTrace& trace) {
    nlohmann::json doc;
    doc["steps"] = nlohmann::json::array();
    for (const auto& step : trace.steps) {
        nlohmann::json sj;
        sj["pair"] = step.pair;
        sj["components"] = step.components;
        sj["created"] = nlohmann::json::array();
        for (const auto& made : step.created)
            sj["created"].push_back(
                {{"id", made.id}, {"ord", made.ord}, {"discrepancy", made.discrepancy}});
        doc["steps"].push_back(std::move(sj));
    }
    return doc.dump(2) + "\n";
}

} // namespace singres
