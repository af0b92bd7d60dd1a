// Error codes shared across the library. Domain failures carry a code so
// callers (and the CLI) can react without string matching.
#pragma once

#include <stdexcept>
#include <string>

namespace singres {

enum class ErrorCode {
    parse_error,            // malformed input text (position in message)
    validation_failed,      // resolution data violates model invariants
    missing_data,           // optional field required by the operation is absent
    bound_exceeded,         // brute-force oracle asked to run past its bound
    not_separating,         // operation requires a multiplicity-m separating resolution
    unknown_stratum,        // blowup center not present in the nerve
    out_of_scope,           // combinatorial update not defined for this input
    not_convenient,         // Newton polygon misses a coordinate axis
    degenerate_edge,        // an edge polynomial has a repeated root
    zero_polynomial,
    nonzero_constant_term,
    not_a_complex,          // boundary composition is nonzero
    invalid_filtration,     // boundary decreases filtration level
    hypothesis_failed,      // collapse lemma hypothesis fails at some level
    truncation_too_small,
    invalid_argument,
    io_error,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace singres
