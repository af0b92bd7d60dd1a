#include "singres/newton.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace singres {

namespace {

// --- polynomial text parser -------------------------------------------------

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorCode::parse_error,
                    "position " + std::to_string(pos + 1) + ": " + message);
    }
};

long long parse_uint(Cursor& cur) {
    cur.skip_ws();
    if (cur.pos >= cur.text.size() || !isdigit(static_cast<unsigned char>(cur.text[cur.pos])))
        cur.fail("expected a number");
    long long value = 0;
    while (cur.pos < cur.text.size() && isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
        value = value * 10 + (cur.text[cur.pos] - '0');
        if (value > (1LL << 40))
            cur.fail("number too large");
        ++cur.pos;
    }
    return value;
}

// coef := uint ['/' uint]; the sign comes from the surrounding '+'/'-'
Rational parse_coef(Cursor& cur) {
    long long num = parse_uint(cur);
    if (cur.peek() == '/') {
        ++cur.pos;
        long long den = parse_uint(cur);
        if (den == 0)
            cur.fail("zero denominator");
        return make_rational(num, den);
    }
    return Rational(num);
}

struct Term {
    Rational coefficient;
    LatticePoint exponents;
};

Term parse_term(Cursor& cur) {
    Term term;
    term.coefficient = Rational(1);
    bool saw_anything = false;
    if (isdigit(static_cast<unsigned char>(cur.peek()))) {
        term.coefficient = parse_coef(cur);
        saw_anything = true;
        if (cur.peek() == '*')
            ++cur.pos;
    }
    while (true) {
        char c = cur.peek();
        if (c != 'x' && c != 'y')
            break;
        ++cur.pos;
        long long exponent = 1;
        if (cur.peek() == '^') {
            ++cur.pos;
            exponent = parse_uint(cur);
        }
        if (c == 'x')
            term.exponents.x += exponent;
        else
            term.exponents.y += exponent;
        saw_anything = true;
        if (cur.peek() == '*') {
            ++cur.pos;
            if (cur.peek() != 'x' && cur.peek() != 'y' &&
                !isdigit(static_cast<unsigned char>(cur.peek())))
                cur.fail("expected a factor after '*'");
            if (isdigit(static_cast<unsigned char>(cur.peek()))) {
                term.coefficient *= parse_coef(cur);
                if (cur.peek() == '*')
                    ++cur.pos;
            }
        }
    }
    if (!saw_anything)
        cur.fail("expected a term");
    return term;
}

// --- univariate rational polynomials (edge polynomials) ---------------------

using Poly1 = std::vector<Rational>; // index = degree

void trim(Poly1& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

long long degree(const Poly1& p) { return static_cast<long long>(p.size()) - 1; }

Poly1 derivative(const Poly1& p) {
    Poly1 d;
    for (size_t k = 1; k < p.size(); ++k)
        d.push_back(Rational(static_cast<long long>(k)) * p[k]);
    trim(d);
    return d;
}

Poly1 remainder(Poly1 a, const Poly1& b) {
    while (degree(a) >= degree(b)) {
        Rational factor = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t k = 0; k < b.size(); ++k)
            a[k + shift] -= factor * b[k];
        trim(a);
        if (a.empty())
            break;
    }
    return a;
}

Poly1 poly_gcd(Poly1 a, Poly1 b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly1 r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

bool primitive(const LatticePoint& p) {
    if (p.x == 0 && p.y == 0)
        return false;
    return gcd_ll(std::abs(p.x), std::abs(p.y)) == 1;
}

} // namespace

LatticePolynomial parse_poly(const std::string& text) {
    Cursor cur{text};
    LatticePolynomial poly;
    if (cur.done())
        cur.fail("empty polynomial");
    long long sign = 1;
    if (cur.peek() == '+' || cur.peek() == '-') {
        sign = cur.peek() == '-' ? -1 : 1;
        ++cur.pos;
    }
    while (true) {
        Term term = parse_term(cur);
        Rational value = term.coefficient * sign;
        auto it = poly.terms.find(term.exponents);
        if (it == poly.terms.end())
            poly.terms[term.exponents] = value;
        else {
            it->second += value;
            if (it->second == 0)
                poly.terms.erase(it);
        }
        if (cur.done())
            break;
        char c = cur.peek();
        if (c != '+' && c != '-')
            cur.fail(std::string("unexpected character '") + c + "'");
        sign = c == '-' ? -1 : 1;
        ++cur.pos;
    }
    if (poly.terms.empty())
        throw Error(ErrorCode::zero_polynomial, "all terms cancel");
    if (poly.terms.count({0, 0}))
        throw Error(ErrorCode::nonzero_constant_term, "constant term present: f(0) != 0");
    return poly;
}

NewtonPolygon newton_polygon(const LatticePolynomial& poly) {
    if (poly.terms.empty())
        throw Error(ErrorCode::zero_polynomial, "zero polynomial has no Newton polygon");
    NewtonPolygon out;
    for (const auto& [pt, coef] : poly.terms) {
        (void)coef;
        out.support.push_back(pt);
    }
    std::sort(out.support.begin(), out.support.end());

    // lower hull of the support (x ascending); points above or on a chord pop
    std::vector<LatticePoint> hull;
    for (const auto& p : out.support) {
        while (hull.size() >= 2) {
            const LatticePoint& a = hull[hull.size() - 2];
            const LatticePoint& b = hull[hull.size() - 1];
            long long cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    // keep the chain up to the first vertex of minimal y; the rest recedes
    // along the x direction and is not a compact face
    size_t cut = 0;
    for (size_t i = 1; i < hull.size(); ++i)
        if (hull[i].y < hull[cut].y)
            cut = i;
    hull.resize(cut + 1);

    out.vertices.assign(hull.rbegin(), hull.rend()); // x descending
    for (size_t i = 0; i + 1 < out.vertices.size(); ++i) {
        NewtonEdge edge;
        edge.from = out.vertices[i];
        edge.to = out.vertices[i + 1];
        long long dx = edge.from.x - edge.to.x; // > 0
        long long dy = edge.to.y - edge.from.y; // > 0
        long long g = gcd_ll(dx, dy);
        edge.normal = {dy / g, dx / g};
        edge.lattice_length = g;
        out.edges.push_back(edge);
    }
    out.convenient =
        !out.vertices.empty() && out.vertices.front().y == 0 && out.vertices.back().x == 0;
    return out;
}

NondegeneracyReport nondegeneracy_check(const LatticePolynomial& poly) {
    NewtonPolygon polygon = newton_polygon(poly);
    if (!polygon.convenient)
        throw Error(ErrorCode::not_convenient,
                    "Newton polygon misses a coordinate axis (no pure power of " +
                        std::string(polygon.vertices.front().y != 0 ? "x" : "y") + ")");
    NondegeneracyReport report;
    for (const auto& edge : polygon.edges) {
        LatticePoint prim{(edge.to.x - edge.from.x) / edge.lattice_length,
                          (edge.to.y - edge.from.y) / edge.lattice_length};
        Poly1 edge_poly(static_cast<size_t>(edge.lattice_length) + 1, Rational(0));
        for (long long k = 0; k <= edge.lattice_length; ++k) {
            LatticePoint pt{edge.from.x + k * prim.x, edge.from.y + k * prim.y};
            auto it = poly.terms.find(pt);
            if (it != poly.terms.end())
                edge_poly[static_cast<size_t>(k)] = it->second;
        }
        // both endpoints are vertices, so edge_poly(0) != 0: squarefree away
        // from 0 is plain squarefreeness
        Poly1 g = poly_gcd(edge_poly, derivative(edge_poly));
        EdgeCheck check;
        check.edge = edge;
        check.squarefree = degree(g) <= 0;
        if (!check.squarefree)
            report.nondegenerate = false;
        report.edges.push_back(check);
    }
    return report;
}

FanRays fan_subdivision(const NewtonPolygon& polygon) {
    if (!polygon.convenient)
        throw Error(ErrorCode::not_convenient, "fan subdivision needs a convenient polygon");
    std::vector<LatticePoint> seeds;
    seeds.push_back({1, 0});
    for (auto it = polygon.edges.rbegin(); it != polygon.edges.rend(); ++it)
        seeds.push_back(it->normal); // slope-increasing order
    seeds.push_back({0, 1});

    std::set<LatticePoint> edge_normals;
    for (const auto& edge : polygon.edges)
        edge_normals.insert(edge.normal);

    FanRays fan;
    fan.rays.push_back(seeds.front());
    for (size_t i = 0; i + 1 < seeds.size(); ++i) {
        const LatticePoint u = seeds[i];
        const LatticePoint v = seeds[i + 1];
        long long d = det(u, v);
        if (d > 1) {
            // primitive lattice points of the fundamental parallelogram; the
            // hull chain among them realizes the unimodular subdivision
            std::set<LatticePoint> candidate_set;
            for (long long a = 0; a <= d; ++a)
                for (long long b = 0; b <= d; ++b) {
                    long long x = a * u.x + b * v.x;
                    long long y = a * u.y + b * v.y;
                    if (x % d || y % d)
                        continue;
                    LatticePoint p{x / d, y / d};
                    if (primitive(p))
                        candidate_set.insert(p);
                }
            std::vector<LatticePoint> candidates(candidate_set.begin(), candidate_set.end());
            std::sort(candidates.begin(), candidates.end(),
                      [](const LatticePoint& a, const LatticePoint& b) { return det(a, b) > 0; });
            // inner hull scan: drop points strictly above a chord
            std::vector<LatticePoint> chain;
            for (const auto& p : candidates) {
                while (chain.size() >= 2) {
                    LatticePoint d1{chain.back().x - chain[chain.size() - 2].x,
                                    chain.back().y - chain[chain.size() - 2].y};
                    LatticePoint d2{p.x - chain.back().x, p.y - chain.back().y};
                    if (det(d1, d2) > 0)
                        chain.pop_back();
                    else
                        break;
                }
                chain.push_back(p);
            }
            for (size_t t = 1; t + 1 < chain.size(); ++t)
                fan.rays.push_back(chain[t]);
        }
        fan.rays.push_back(v);
    }

    for (size_t i = 0; i + 1 < fan.rays.size(); ++i)
        if (det(fan.rays[i], fan.rays[i + 1]) != 1)
            throw Error(ErrorCode::invalid_argument,
                        "fan subdivision postcondition failed: consecutive rays (" +
                            std::to_string(fan.rays[i].x) + "," + std::to_string(fan.rays[i].y) +
                            "), (" + std::to_string(fan.rays[i + 1].x) + "," +
                            std::to_string(fan.rays[i + 1].y) + ") have determinant != 1");

    for (const auto& ray : fan.rays)
        fan.is_edge_normal.push_back(edge_normals.count(ray) > 0);
    return fan;
}

ResolutionData resolution_from_curve(const LatticePolynomial& poly) {
    NondegeneracyReport report = nondegeneracy_check(poly); // throws not_convenient
    if (!report.nondegenerate) {
        for (const auto& check : report.edges)
            if (!check.squarefree)
                throw Error(ErrorCode::degenerate_edge,
                            "degenerate edge from (" + std::to_string(check.edge.from.x) + "," +
                                std::to_string(check.edge.from.y) + ") to (" +
                                std::to_string(check.edge.to.x) + "," +
                                std::to_string(check.edge.to.y) + "): repeated root");
        throw Error(ErrorCode::degenerate_edge, "degenerate edge polynomial");
    }
    NewtonPolygon polygon = newton_polygon(poly);
    FanRays fan = fan_subdivision(polygon);

    std::map<LatticePoint, long long> edge_lengths;
    for (const auto& edge : polygon.edges)
        edge_lengths[edge.normal] = edge.lattice_length;

    ResolutionData data;
    data.n = 1;

    long long interior = static_cast<long long>(fan.rays.size()) - 2;
    std::vector<DivisorId> chain_ids;
    for (long long t = 0; t < interior; ++t) {
        const LatticePoint ray = fan.rays[static_cast<size_t>(t) + 1];
        DivisorRecord rec;
        rec.id = "E" + std::to_string(t + 1);
        long long ord = 0;
        bool first = true;
        for (const auto& [pt, coef] : poly.terms) {
            (void)coef;
            long long value = ray.x * pt.x + ray.y * pt.y;
            if (first || value < ord) {
                ord = value;
                first = false;
            }
        }
        rec.ord = ord;
        rec.discrepancy = ray.x + ray.y - 1;
        long long punctures = 0;
        if (t > 0)
            ++punctures;
        if (t + 1 < interior)
            ++punctures;
        auto it = edge_lengths.find(ray);
        long long star_points = it == edge_lengths.end() ? 0 : it->second;
        rec.euler_open = 2 - punctures - star_points;
        chain_ids.push_back(rec.id);
        data.divisors.push_back(std::move(rec));
        if (star_points > 0)
            data.nerve.strata[make_stratum_key({chain_ids.back(), "star"})] = star_points;
    }
    for (size_t t = 0; t + 1 < chain_ids.size(); ++t)
        data.nerve.strata[make_stratum_key({chain_ids[t], chain_ids[t + 1]})] = 1;

    DivisorRecord star;
    star.id = "star";
    star.ord = 1;
    star.discrepancy = 0;
    star.is_star = true;
    data.divisors.push_back(std::move(star));

    data = curve_cover_data(normalized(std::move(data)));
    ValidationReport violations = validate(data);
    if (!violations.empty())
        throw Error(ErrorCode::invalid_argument,
                    "internal: generated resolution fails validation: " + violations.front().code);
    return data;
}

ResolutionData curve_cover_data(const ResolutionData& input) {
    if (input.n != 1)
        throw Error(ErrorCode::invalid_argument, "curve cover data is defined for n = 1 only");
    ResolutionData data = normalized(input);
    const DivisorId star_id = data.star().id;

    for (auto& d : data.divisors) {
        if (d.is_star)
            continue;
        if (!d.euler_open)
            throw Error(ErrorCode::missing_data,
                        "divisor '" + d.id + "' lacks euler_open, required for cover data");
        long long g = d.ord;
        for (const auto& [key, count] : data.nerve.strata) {
            if (key.size() != 2)
                continue;
            DivisorId other;
            if (key[0] == d.id)
                other = key[1];
            else if (key[1] == d.id)
                other = key[0];
            else
                continue;
            long long other_ord = other == star_id ? 1 : data.at(other).ord;
            for (long long c = 0; c < count; ++c)
                g = gcd_ll(g, other_ord);
        }
        long long cover_euler = d.ord * *d.euler_open;
        if (g - cover_euler < 0)
            throw Error(ErrorCode::invalid_argument,
                        "divisor '" + d.id + "': adjacency and Euler data are inconsistent (" +
                            std::to_string(g) + " components, cover Euler characteristic " +
                            std::to_string(cover_euler) + ")");
        CoverData cover;
        cover.components = g;
        cover.betti = {g, g - cover_euler}; // open surface: H_2 = 0
        d.cover = std::move(cover);
    }
    return data;
}

long long cover_components_oracle(long long ord, const std::vector<long long>& adjacent_orders) {
    if (ord < 1)
        throw Error(ErrorCode::invalid_argument, "ord must be positive");
    if (adjacent_orders.empty())
        throw Error(ErrorCode::invalid_argument, "adjacent order list must be nonempty");
    // subgroup of Z/ord generated by the adjacent orders, by explicit closure
    std::set<long long> subgroup{0};
    std::vector<long long> queue{0};
    while (!queue.empty()) {
        long long element = queue.back();
        queue.pop_back();
        for (long long generator : adjacent_orders) {
            long long next = (element + generator) % ord;
            if (next < 0)
                next += ord;
            if (subgroup.insert(next).second)
                queue.push_back(next);
        }
    }
    return ord / static_cast<long long>(subgroup.size());
}

Rational lct_weighted_homogeneous(const std::vector<long long>& weights, long long degree) {
    if (weights.empty())
        throw Error(ErrorCode::invalid_argument, "weight list must be nonempty");
    if (degree < 1)
        throw Error(ErrorCode::invalid_argument, "degree must be positive");
    long long total = 0;
    for (long long w : weights) {
        if (w < 1)
            throw Error(ErrorCode::invalid_argument, "weights must be positive");
        total += w;
    }
    Rational value = make_rational(total, degree);
    return value < 1 ? value : Rational(1);
}

} // namespace singres
