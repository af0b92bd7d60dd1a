#include "singres/model.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace singres {

namespace {

using nlohmann::json;

std::string join_ids(const StratumKey& key) {
    std::string out;
    for (size_t i = 0; i < key.size(); ++i) {
        if (i)
            out += ",";
        out += key[i];
    }
    return out;
}

} // namespace

const DivisorRecord* ResolutionData::find(const DivisorId& id) const {
    auto it = std::lower_bound(divisors.begin(), divisors.end(), id,
                               [](const DivisorRecord& r, const DivisorId& v) { return r.id < v; });
    if (it != divisors.end() && it->id == id)
        return &*it;
    // fall back to a linear scan in case the vector is not sorted yet
    for (const auto& d : divisors)
        if (d.id == id)
            return &d;
    return nullptr;
}

const DivisorRecord& ResolutionData::at(const DivisorId& id) const {
    const DivisorRecord* r = find(id);
    if (!r)
        throw Error(ErrorCode::invalid_argument, "unknown divisor id '" + id + "'");
    return *r;
}

const DivisorRecord& ResolutionData::star() const {
    for (const auto& d : divisors)
        if (d.is_star)
            return d;
    throw Error(ErrorCode::invalid_argument, "resolution has no star divisor");
}

StratumKey make_stratum_key(std::vector<DivisorId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

ResolutionData normalized(ResolutionData data) {
    std::sort(data.divisors.begin(), data.divisors.end(),
              [](const DivisorRecord& a, const DivisorRecord& b) { return a.id < b.id; });
    std::map<StratumKey, long long> strata;
    for (auto& [key, count] : data.nerve.strata)
        strata[make_stratum_key(key)] = count;
    data.nerve.strata = std::move(strata);
    return data;
}

ValidationError::ValidationError(ValidationReport report)
    : Error(ErrorCode::validation_failed,
            report.empty() ? "validation failed"
                           : "validation failed: " + report.front().code +
                                 (report.size() > 1
                                      ? " (+" + std::to_string(report.size() - 1) + " more)"
                                      : "")),
      report_(std::move(report)) {}

ValidationReport validate(const ResolutionData& data, const ValidateOptions& options) {
    ValidationReport report;
    auto add = [&](const std::string& code, const std::string& message) {
        report.push_back({code, message});
    };

    if (data.n < 1)
        add("dimension-not-positive", "n must be >= 1, got " + std::to_string(data.n));

    std::set<DivisorId> ids;
    long long stars = 0;
    long long non_star = 0;
    for (const auto& d : data.divisors) {
        if (d.id.empty())
            add("empty-divisor-id", "divisor with empty id");
        if (!ids.insert(d.id).second)
            add("duplicate-divisor-id", "divisor id '" + d.id + "' appears twice");
        if (d.ord < 1)
            add("ord-not-positive", "divisor '" + d.id + "' has ord " + std::to_string(d.ord));
        if (d.discrepancy < 0)
            add("discrepancy-negative",
                "divisor '" + d.id + "' has discrepancy " + std::to_string(d.discrepancy));
        if (d.is_star) {
            ++stars;
            if (d.ord != 1)
                add("star-order-not-one",
                    "star divisor '" + d.id + "' must have ord 1, got " + std::to_string(d.ord));
            if (d.discrepancy != 0)
                add("star-discrepancy-not-zero", "star divisor '" + d.id +
                                                     "' must have discrepancy 0, got " +
                                                     std::to_string(d.discrepancy));
        } else {
            ++non_star;
            if (d.discrepancy < 1 && !options.allow_any_discrepancy)
                add("discrepancy-below-one",
                    "exceptional divisor '" + d.id + "' has discrepancy " +
                        std::to_string(d.discrepancy) + " (expected >= 1 over a smooth ambient space)");
        }
        if (d.weight && *d.weight < 1)
            add("weight-not-positive", "divisor '" + d.id + "' has weight " + std::to_string(*d.weight));
        if (d.cover) {
            if (d.cover->components < 1)
                add("cover-components-not-positive",
                    "divisor '" + d.id + "' cover has " + std::to_string(d.cover->components) +
                        " components");
            for (long long b : d.cover->betti)
                if (b < 0)
                    add("cover-betti-negative", "divisor '" + d.id + "' has a negative Betti number");
            if (d.cover->betti.empty() || d.cover->betti[0] != d.cover->components)
                add("cover-betti0-mismatch",
                    "divisor '" + d.id + "': betti[0] must equal the component count");
            if (d.euler_open) {
                long long alternating = 0;
                long long sign = 1;
                for (long long b : d.cover->betti) {
                    alternating += sign * b;
                    sign = -sign;
                }
                if (alternating != d.ord * *d.euler_open)
                    add("cover-euler-mismatch",
                        "divisor '" + d.id + "': cover Euler characteristic " +
                            std::to_string(alternating) + " != ord * euler_open = " +
                            std::to_string(d.ord * *d.euler_open));
            }
        }
    }
    if (stars == 0)
        add("no-star", "exactly one divisor must have is_star = true");
    if (stars > 1)
        add("multiple-star", "only one divisor may have is_star = true");
    if (non_star == 0)
        add("no-exceptional-divisor", "at least one non-star divisor is required");

    // nerve structure
    for (const auto& [key, count] : data.nerve.strata) {
        StratumKey canon = make_stratum_key(key);
        if (canon != key || key.size() < 2) {
            add("stratum-key-malformed",
                "stratum {" + join_ids(key) + "} must list >= 2 distinct sorted ids");
            continue;
        }
        if (count < 1)
            add("stratum-count-not-positive",
                "stratum {" + join_ids(key) + "} has component count " + std::to_string(count));
        bool known = true;
        for (const auto& id : key)
            if (!ids.count(id)) {
                add("stratum-unknown-divisor",
                    "stratum {" + join_ids(key) + "} references unknown divisor '" + id + "'");
                known = false;
            }
        if (static_cast<long long>(key.size()) > data.n + 1)
            add("stratum-arity-exceeds-dimension",
                "stratum {" + join_ids(key) + "} has " + std::to_string(key.size()) +
                    " divisors, but at most " + std::to_string(data.n + 1) +
                    " can meet transversally");
        if (known && key.size() > 2) {
            // downward closure: every sub-pair (and inductively every subset)
            // of a nonempty stratum is nonempty
            for (size_t i = 0; i < key.size(); ++i) {
                StratumKey sub = key;
                sub.erase(sub.begin() + static_cast<long>(i));
                if (!data.nerve.contains(sub))
                    add("nerve-not-downward-closed", "stratum {" + join_ids(key) +
                                                         "} present but {" + join_ids(sub) +
                                                         "} absent");
            }
        }
    }

    // connectivity of the dual graph (vertices: divisors, edges: pair strata)
    if (ids.size() >= 2 && !data.divisors.empty()) {
        std::map<DivisorId, std::vector<DivisorId>> adjacency;
        for (const auto& [key, count] : data.nerve.strata)
            if (key.size() == 2 && ids.count(key[0]) && ids.count(key[1])) {
                adjacency[key[0]].push_back(key[1]);
                adjacency[key[1]].push_back(key[0]);
            }
        std::set<DivisorId> seen;
        std::vector<DivisorId> queue{data.divisors.front().id};
        seen.insert(queue.front());
        while (!queue.empty()) {
            DivisorId cur = queue.back();
            queue.pop_back();
            for (const auto& next : adjacency[cur])
                if (seen.insert(next).second)
                    queue.push_back(next);
        }
        if (seen.size() != ids.size())
            add("graph-not-connected",
                "intersection graph is disconnected (" + std::to_string(seen.size()) + " of " +
                    std::to_string(ids.size()) + " divisors reachable)");
    }

    return report;
}

namespace {

long long require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw Error(ErrorCode::parse_error, where + ": expected an integer");
    return j.get<long long>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(ErrorCode::parse_error, where + ": unknown key '" + it.key() + "'");
}

} // namespace

ResolutionData parse_resolution(const std::string& text, const ValidateOptions& options) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error,
                    "byte " + std::to_string(e.byte) + ": " + std::string(e.what()));
    }
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "top level: expected an object");
    reject_unknown_keys(doc, {"n", "divisors", "strata"}, "top level");
    if (!doc.contains("n") || !doc.contains("divisors") || !doc.contains("strata"))
        throw Error(ErrorCode::parse_error, "top level: keys n, divisors, strata are required");

    ResolutionData data;
    data.n = require_int(doc["n"], "n");

    if (!doc["divisors"].is_array())
        throw Error(ErrorCode::parse_error, "divisors: expected an array");
    for (const auto& dj : doc["divisors"]) {
        if (!dj.is_object())
            throw Error(ErrorCode::parse_error, "divisors: expected objects");
        reject_unknown_keys(dj, {"id", "ord", "discrepancy", "is_star", "euler_open", "weight", "cover"},
                            "divisor");
        for (const char* req : {"id", "ord", "discrepancy", "is_star"})
            if (!dj.contains(req))
                throw Error(ErrorCode::parse_error, std::string("divisor: key '") + req + "' is required");
        DivisorRecord rec;
        if (!dj["id"].is_string())
            throw Error(ErrorCode::parse_error, "divisor id: expected a string");
        rec.id = dj["id"].get<std::string>();
        rec.ord = require_int(dj["ord"], "divisor '" + rec.id + "' ord");
        rec.discrepancy = require_int(dj["discrepancy"], "divisor '" + rec.id + "' discrepancy");
        if (!dj["is_star"].is_boolean())
            throw Error(ErrorCode::parse_error, "divisor '" + rec.id + "' is_star: expected a boolean");
        rec.is_star = dj["is_star"].get<bool>();
        if (dj.contains("euler_open"))
            rec.euler_open = require_int(dj["euler_open"], "divisor '" + rec.id + "' euler_open");
        if (dj.contains("weight"))
            rec.weight = require_int(dj["weight"], "divisor '" + rec.id + "' weight");
        if (dj.contains("cover")) {
            const auto& cj = dj["cover"];
            if (!cj.is_object())
                throw Error(ErrorCode::parse_error, "divisor '" + rec.id + "' cover: expected an object");
            reject_unknown_keys(cj, {"components", "betti"}, "cover");
            if (!cj.contains("components") || !cj.contains("betti"))
                throw Error(ErrorCode::parse_error,
                            "divisor '" + rec.id + "' cover: components and betti are required");
            CoverData cover;
            cover.components = require_int(cj["components"], "cover components");
            if (!cj["betti"].is_array())
                throw Error(ErrorCode::parse_error, "cover betti: expected an array");
            for (const auto& bj : cj["betti"])
                cover.betti.push_back(require_int(bj, "cover betti entry"));
            rec.cover = std::move(cover);
        }
        data.divisors.push_back(std::move(rec));
    }

    if (!doc["strata"].is_array())
        throw Error(ErrorCode::parse_error, "strata: expected an array");
    for (const auto& sj : doc["strata"]) {
        if (!sj.is_object())
            throw Error(ErrorCode::parse_error, "strata: expected objects");
        reject_unknown_keys(sj, {"divisors", "components"}, "stratum");
        if (!sj.contains("divisors") || !sj.contains("components"))
            throw Error(ErrorCode::parse_error, "stratum: divisors and components are required");
        if (!sj["divisors"].is_array())
            throw Error(ErrorCode::parse_error, "stratum divisors: expected an array");
        StratumKey key;
        for (const auto& idj : sj["divisors"]) {
            if (!idj.is_string())
                throw Error(ErrorCode::parse_error, "stratum divisors: expected strings");
            key.push_back(idj.get<std::string>());
        }
        StratumKey canon = make_stratum_key(key);
        if (canon.size() != key.size())
            throw Error(ErrorCode::parse_error,
                        "stratum {" + join_ids(key) + "} lists a divisor twice");
        long long count = require_int(sj["components"], "stratum components");
        if (data.nerve.strata.count(canon))
            throw Error(ErrorCode::parse_error, "stratum {" + join_ids(canon) + "} listed twice");
        data.nerve.strata[canon] = count;
    }

    data = normalized(std::move(data));
    ValidationReport report = validate(data, options);
    if (!report.empty())
        throw ValidationError(std::move(report));
    return data;
}

std::string serialize_resolution(const ResolutionData& data) {
    ResolutionData canon = normalized(data);
    json doc;
    doc["n"] = canon.n;
    doc["divisors"] = json::array();
    for (const auto& d : canon.divisors) {
        json dj;
        dj["id"] = d.id;
        dj["ord"] = d.ord;
        dj["discrepancy"] = d.discrepancy;
        dj["is_star"] = d.is_star;
        if (d.euler_open)
            dj["euler_open"] = *d.euler_open;
        if (d.weight)
            dj["weight"] = *d.weight;
        if (d.cover) {
            dj["cover"] = {{"components", d.cover->components}, {"betti", d.cover->betti}};
        }
        doc["divisors"].push_back(std::move(dj));
    }
    doc["strata"] = json::array();
    for (const auto& [key, count] : canon.nerve.strata)
        doc["strata"].push_back({{"divisors", key}, {"components", count}});
    return doc.dump(2) + "\n";
}

} // namespace singres
