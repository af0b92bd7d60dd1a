#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace singres;
using testsupport::cusp_hand;
using testsupport::load_corpus;

namespace {

bool has_code(const ValidationReport& report, const std::string& code) {
    for (const auto& violation : report)
        if (violation.code == code)
            return true;
    return false;
}

} // namespace

TEST_CASE("cusp corpus data is valid") {
    ResolutionData cusp = cusp_hand();
    CHECK(validate(cusp).empty());
    CHECK(cusp.divisors.size() == 4);
    CHECK(cusp.at("E3").ord == 6);
    CHECK(cusp.at("E3").discrepancy == 4);
    CHECK(cusp.star().id == "star");
}

TEST_CASE("star order and discrepancy are pinned") {
    ResolutionData data = cusp_hand();
    for (auto& d : data.divisors)
        if (d.is_star)
            d.ord = 2;
    CHECK(has_code(validate(data), "star-order-not-one"));

    data = cusp_hand();
    for (auto& d : data.divisors)
        if (d.is_star)
            d.discrepancy = 1;
    CHECK(has_code(validate(data), "star-discrepancy-not-zero"));
}

TEST_CASE("nerve must be downward closed") {
    ResolutionData data;
    data.n = 2;
    for (const char* id : {"A", "B", "C"}) {
        DivisorRecord d;
        d.id = id;
        d.ord = 2;
        d.discrepancy = 1;
        data.divisors.push_back(d);
    }
    DivisorRecord star;
    star.id = "star";
    star.is_star = true;
    data.divisors.push_back(star);
    data.nerve.strata[make_stratum_key({"A", "B", "C"})] = 1;
    data.nerve.strata[make_stratum_key({"A", "C"})] = 1;
    data.nerve.strata[make_stratum_key({"B", "C"})] = 1;
    data.nerve.strata[make_stratum_key({"C", "star"})] = 1;
    data = normalized(std::move(data));
    ValidationReport report = validate(data);
    CHECK(has_code(report, "nerve-not-downward-closed")); // {A,B} missing
}

TEST_CASE("stratum arity is bounded by the dimension") {
    ResolutionData data = cusp_hand(); // n = 1
    data.nerve.strata[make_stratum_key({"E1", "E2", "E3"})] = 1;
    CHECK(has_code(validate(data), "stratum-arity-exceeds-dimension"));
}

TEST_CASE("exceptional discrepancy below one is flagged, with escape hatch") {
    ResolutionData data = cusp_hand();
    for (auto& d : data.divisors)
        if (d.id == "E1")
            d.discrepancy = 0;
    CHECK(has_code(validate(data), "discrepancy-below-one"));
    CHECK_FALSE(has_code(validate(data, {true}), "discrepancy-below-one"));
}

TEST_CASE("disconnected graph and missing star are reported") {
    ResolutionData data;
    data.n = 1;
    DivisorRecord a;
    a.id = "A";
    a.ord = 2;
    a.discrepancy = 1;
    data.divisors.push_back(a);
    CHECK(has_code(validate(data), "no-star"));

    DivisorRecord star;
    star.id = "star";
    star.is_star = true;
    data.divisors.push_back(star);
    CHECK(has_code(validate(data), "graph-not-connected"));
}

TEST_CASE("cover invariants are enforced") {
    ResolutionData data = cusp_hand();
    for (auto& d : data.divisors)
        if (d.id == "E1")
            d.cover->betti = {1, 0}; // betti[0] != components
    CHECK(has_code(validate(data), "cover-betti0-mismatch"));

    data = cusp_hand();
    for (auto& d : data.divisors)
        if (d.id == "E1")
            d.cover->betti = {2, 1}; // alternating sum 1 != ord * euler_open = 2
    CHECK(has_code(validate(data), "cover-euler-mismatch"));
}

TEST_CASE("cover Euler identity holds on every corpus file") {
    for (const auto& name : testsupport::corpus_names()) {
        ResolutionData data = load_corpus(name);
        for (const auto& d : data.divisors) {
            if (!d.cover || !d.euler_open)
                continue;
            long long alternating = 0, sign = 1;
            for (long long b : d.cover->betti) {
                alternating += sign * b;
                sign = -sign;
            }
            CHECK(alternating == d.ord * *d.euler_open);
        }
    }
}

TEST_CASE("validate is total on weird but well-typed data") {
    ResolutionData empty;
    CHECK_FALSE(validate(empty).empty());

    ResolutionData strange;
    strange.n = 0;
    DivisorRecord d;
    d.id = "";
    d.ord = -3;
    d.discrepancy = -1;
    strange.divisors.push_back(d);
    strange.nerve.strata[{{"ghost", "phantom"}}] = -2;
    ValidationReport report = validate(strange);
    CHECK(has_code(report, "empty-divisor-id"));
    CHECK(has_code(report, "ord-not-positive"));
    CHECK(has_code(report, "stratum-unknown-divisor"));
    CHECK(has_code(report, "stratum-count-not-positive"));
    CHECK(has_code(report, "dimension-not-positive"));
}

TEST_CASE("parse: node file") {
    std::string text = R"({
      "n": 1,
      "divisors": [
        {"id": "E", "ord": 2, "discrepancy": 1, "is_star": false},
        {"id": "star", "ord": 1, "discrepancy": 0, "is_star": true}
      ],
      "strata": [{"divisors": ["E", "star"], "components": 2}]
    })";
    ResolutionData data = parse_resolution(text);
    CHECK(data.divisors.size() == 2);
    CHECK(data.at("E").ord == 2);
    CHECK(data.nerve.strata.at(make_stratum_key({"E", "star"})) == 2);
}

TEST_CASE("parse: empty and malformed documents are syntax errors") {
    for (const std::string text : {"", "[1,2,3]", "{\"n\": 1}", "not json at all"}) {
        try {
            parse_resolution(text);
            CHECK_MESSAGE(false, "expected a parse error for: ", text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::parse_error);
        }
    }
}

TEST_CASE("parse: unknown keys are rejected") {
    std::string text = R"({"n": 1, "divisors": [], "strata": [], "extra": 1})";
    try {
        parse_resolution(text);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
        CHECK(std::string(e.what()).find("extra") != std::string::npos);
    }
}

TEST_CASE("parse: unknown stratum id is a validation failure with a report") {
    std::string text = R"({
      "n": 1,
      "divisors": [
        {"id": "E", "ord": 2, "discrepancy": 1, "is_star": false},
        {"id": "star", "ord": 1, "discrepancy": 0, "is_star": true}
      ],
      "strata": [{"divisors": ["E", "ghost"], "components": 1}]
    })";
    try {
        parse_resolution(text);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(has_code(e.report(), "stratum-unknown-divisor"));
    }
}

TEST_CASE("serialize: canonical and round-tripping on the corpus") {
    for (const auto& name : testsupport::corpus_names()) {
        ResolutionData data = load_corpus(name);
        std::string first = serialize_resolution(data);
        ResolutionData reparsed = parse_resolution(first);
        CHECK(reparsed == data);
        CHECK(serialize_resolution(reparsed) == first);
    }
}

TEST_CASE("serialize: structurally equal data gives identical bytes") {
    ResolutionData a = cusp_hand();
    ResolutionData b = cusp_hand();
    std::reverse(b.divisors.begin(), b.divisors.end()); // order must not matter
    CHECK(serialize_resolution(a) == serialize_resolution(b));
}

TEST_CASE("serialize: exactly one star record in the node document") {
    std::string text = serialize_resolution(testsupport::node_hand());
    size_t count = 0;
    for (size_t pos = 0; (pos = text.find("\"is_star\": true", pos)) != std::string::npos; ++pos)
        ++count;
    CHECK(count == 1);
}

TEST_CASE("round-trip on random resolutions") {
    std::mt19937_64 rng(20240801);
    for (int seed = 0; seed < 50; ++seed) {
        ResolutionData data = testsupport::random_valid_resolution(rng);
        CHECK(parse_resolution(serialize_resolution(data)) == data);
    }
}
