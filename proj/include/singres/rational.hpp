// Exact arithmetic building blocks: arbitrary-precision integers, reduced
// rationals, and the naturals-with-infinity used for md_m values.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "singres/error.hpp"

namespace singres {

using Int = boost::multiprecision::cpp_int;

// Always stored reduced with positive denominator (cpp_rational canonical form).
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den) {
    if (den == 0)
        throw Error(ErrorCode::invalid_argument, "rational with zero denominator");
    return Rational(Int(num), Int(den));
}

// Prints "p/q", or just "p" for integers.
inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

// A nonnegative integer or infinity; infinity is the maximum. Arises as the
// infimum of an empty feasible set.
class ExtendedNat {
  public:
    ExtendedNat() : value_(0) {}
    ExtendedNat(long long v) : value_(v) {
        if (v < 0)
            throw Error(ErrorCode::invalid_argument, "ExtendedNat from negative value");
    }

    static ExtendedNat infinity() {
        ExtendedNat e;
        e.value_.reset();
        return e;
    }

    bool is_finite() const { return value_.has_value(); }

    long long value() const {
        if (!value_)
            throw Error(ErrorCode::invalid_argument, "value() on infinite ExtendedNat");
        return *value_;
    }

    friend bool operator==(const ExtendedNat& a, const ExtendedNat& b) = default;

    friend bool operator<(const ExtendedNat& a, const ExtendedNat& b) {
        if (!a.value_)
            return false; // inf < x never
        if (!b.value_)
            return true; // finite < inf
        return *a.value_ < *b.value_;
    }
    friend bool operator<=(const ExtendedNat& a, const ExtendedNat& b) { return a < b || a == b; }
    friend bool operator>(const ExtendedNat& a, const ExtendedNat& b) { return b < a; }
    friend bool operator>=(const ExtendedNat& a, const ExtendedNat& b) { return b <= a; }

    std::string str() const { return value_ ? std::to_string(*value_) : "inf"; }

  private:
    std::optional<long long> value_;
};

} // namespace singres
