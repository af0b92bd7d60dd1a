// Plane-curve front end: parses a polynomial in x and y with exact rational
// coefficients, builds its Newton polygon, checks Newton-nondegeneracy, and
// produces resolution data through the unimodular fan subdivision.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "singres/model.hpp"

namespace singres {

struct LatticePoint {
    long long x = 0;
    long long y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline long long det(const LatticePoint& a, const LatticePoint& b) {
    return a.x * b.y - a.y * b.x;
}

struct LatticePolynomial {
    // exponent pair -> nonzero coefficient; variables are x and y
    std::map<LatticePoint, Rational> terms;

    friend bool operator==(const LatticePolynomial&, const LatticePolynomial&) = default;
};

// Grammar: poly := ['+'|'-'] term (('+'|'-') term)*
//          term := [coef ['*']] factor (['*'] factor)* | coef
//          factor := ('x'|'y') ['^' uint]; coef := int ['/' uint]
// Whitespace is ignored. Throws parse_error with a character position,
// zero_polynomial, or nonzero_constant_term.
LatticePolynomial parse_poly(const std::string& text);

struct NewtonEdge {
    LatticePoint from; // larger x
    LatticePoint to;
    LatticePoint normal;      // primitive inward normal, both entries > 0
    long long lattice_length = 1;

    friend bool operator==(const NewtonEdge&, const NewtonEdge&) = default;
};

struct NewtonPolygon {
    std::vector<LatticePoint> support;
    std::vector<LatticePoint> vertices; // sorted by x descending
    std::vector<NewtonEdge> edges;      // same order as the vertex chain
    bool convenient = false;            // a vertex on each coordinate axis

    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

NewtonPolygon newton_polygon(const LatticePolynomial& poly);

struct EdgeCheck {
    NewtonEdge edge;
    bool squarefree = true;
};

struct NondegeneracyReport {
    bool nondegenerate = true;
    std::vector<EdgeCheck> edges;
};

// Each edge polynomial must be squarefree (exact gcd with its derivative over
// the rationals). Throws not_convenient.
NondegeneracyReport nondegeneracy_check(const LatticePolynomial& poly);

struct FanRays {
    std::vector<LatticePoint> rays;   // from (1,0) to (0,1), slope increasing
    std::vector<bool> is_edge_normal; // parallel to rays
};

// Inserts the primitive lattice points on the compact hull faces of each
// non-unimodular cone so that all consecutive determinants are 1.
FanRays fan_subdivision(const NewtonPolygon& polygon);

// Toric dictionary: ray (p,q) gives ord = min of p*a + q*b over the support
// and discrepancy p + q - 1; consecutive rays intersect; the proper transform
// crosses each edge-normal divisor in lattice-length many points.
// Cover data is filled via curve_cover_data. Throws not_convenient or
// degenerate_edge.
ResolutionData resolution_from_curve(const LatticePolynomial& poly);

// Fills cover fields on every exceptional divisor of an n = 1 resolution:
// component count by the gcd rule over adjacent orders (star counts as 1),
// Betti numbers from the cover Euler characteristic ord * euler_open.
ResolutionData curve_cover_data(const ResolutionData& data);

// Independent check of the gcd rule: the index of the subgroup of Z/ord
// generated by the adjacent orders, computed by explicit subgroup generation.
long long cover_components_oracle(long long ord, const std::vector<long long>& adjacent_orders);

// min(1, sum of weights / degree)
Rational lct_weighted_homogeneous(const std::vector<long long>& weights, long long degree);

} // namespace singres
