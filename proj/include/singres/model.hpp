// Combinatorial model of a log resolution of an isolated hypersurface
// singularity: the divisor set with orders and discrepancies, and the nerve
// of nonempty intersections. Every other module computes from this data.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "singres/error.hpp"
#include "singres/rational.hpp"

namespace singres {

using DivisorId = std::string;

// Homology of the cyclic cover of the open divisor piece; betti[d] is the
// rank in degree d, betti[0] equals the number of connected components.
struct CoverData {
    long long components = 1;
    std::vector<long long> betti;

    friend bool operator==(const CoverData&, const CoverData&) = default;
};

struct DivisorRecord {
    DivisorId id;
    long long ord = 1;          // vanishing order of the pulled-back function
    long long discrepancy = 0;  // vanishing order of the Jacobian determinant
    bool is_star = false;       // proper transform of the fiber
    std::optional<long long> euler_open; // Euler characteristic of the open piece
    std::optional<long long> weight;
    std::optional<CoverData> cover;

    friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

// Key: sorted unique ids, size >= 2. Value: number of connected components of
// the corresponding intersection. Absent key means empty intersection.
using StratumKey = std::vector<DivisorId>;

struct Nerve {
    std::map<StratumKey, long long> strata;

    bool contains(const StratumKey& key) const { return strata.count(key) > 0; }

    friend bool operator==(const Nerve&, const Nerve&) = default;
};

struct ResolutionData {
    long long n = 1; // ambient dimension is n+1
    std::vector<DivisorRecord> divisors; // kept sorted by id
    Nerve nerve;

    const DivisorRecord* find(const DivisorId& id) const;
    const DivisorRecord& at(const DivisorId& id) const; // throws invalid_argument
    const DivisorRecord& star() const;                  // throws if absent

    friend bool operator==(const ResolutionData&, const ResolutionData&) = default;
};

// Sorts divisors by id and normalizes stratum keys (sorted, deduplicated).
ResolutionData normalized(ResolutionData data);

StratumKey make_stratum_key(std::vector<DivisorId> ids);

struct Violation {
    std::string code;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

struct ValidateOptions {
    // Escape hatch for experiments with non-smooth ambient spaces; lifts the
    // "exceptional discrepancy >= 1" requirement.
    bool allow_any_discrepancy = false;
};

// Total on arbitrary structurally well-formed data; an empty report means the
// data satisfies every model invariant.
ValidationReport validate(const ResolutionData& data, const ValidateOptions& options = {});

// Throws Error(parse_error) with a position for malformed documents and
// ValidationError when the parsed data fails validate().
ResolutionData parse_resolution(const std::string& text, const ValidateOptions& options = {});

// Canonical bytes: sorted keys, divisors sorted by id, strata by key.
// parse_resolution(serialize_resolution(r)) == r for every valid r.
std::string serialize_resolution(const ResolutionData& data);

class ValidationError : public Error {
  public:
    explicit ValidationError(ValidationReport report);

    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

} // namespace singres
