#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towercert/groebner.hpp"

namespace towercert {

// Bounded-degree rigidity certificates.  A morphism A1 -> E with x-coordinate
// of degree exactly e forces y^2 = f(x(t)) of degree exactly 3e (f is monic
// and the leading coefficient of x is invertible), so y has degree 3e/2 and
// odd e admits no map at all.  Each even slice is decided by the coefficient
// ideal of y(t)^2 - f(x(t)) in the unknown coefficients, with the leading
// coefficient of x inverted by an auxiliary variable; the slice holds iff the
// ideal is the unit ideal.  Constant x forces constant y, so the slices
// e = 1..d exhaust all maps of x-degree at most d.
enum class RigidityStatus { Certified, FoundMap, Inconclusive };

struct SliceEvidence {
    int x_degree = 0;
    bool vacuous = false;
    bool certified = false;
    std::string note;
};

struct RigidityCertificate {
    RigidityStatus status = RigidityStatus::Inconclusive;
    std::string target;
    int degree_bound = 0;
    std::vector<SliceEvidence> slices;
    std::string witness; // parametrization found, if any
};

namespace detail {

// Square root in K = Q(L): (c + dL)^2 = a + bL means 2cd = b and
// c^2 + d^2 disc = a, which reduces to rational square roots of the norm and
// of (a +- sqrt(norm))/2.
inline std::optional<FieldElem> field_sqrt_exact(const FieldElem& z) {
    const FieldSpecPtr& spec = z.spec();
    Rational a = z.rat_part(), b = z.lambda_part();
    if (z.is_zero()) return FieldElem::zero(spec);
    if (b == 0) {
        if (auto r = rational_sqrt_exact(a)) return FieldElem(spec, *r);
        if (!spec->is_square && spec->disc != 0) {
            if (auto r = rational_sqrt_exact(a / spec->disc)) return FieldElem(spec, 0, *r);
        }
        return std::nullopt;
    }
    auto s = rational_sqrt_exact(a * a - b * b * spec->disc);
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) {
        Rational c2 = (a + (sign > 0 ? *s : -*s)) / 2;
        auto c = rational_sqrt_exact(c2);
        if (!c || *c == 0) continue;
        Rational d = b / (Rational(2) * *c);
        if (*c * *c + d * d * spec->disc == a) return FieldElem(spec, *c, d);
    }
    return std::nullopt;
}

// Dense univariate polynomials over K, coefficients low to high.
using UniPoly = std::vector<FieldElem>;

inline void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline UniPoly uni_mul(const UniPoly& p, const UniPoly& q, const FieldSpecPtr& spec) {
    if (p.empty() || q.empty()) return {};
    UniPoly r(p.size() + q.size() - 1, FieldElem::zero(spec));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
    uni_trim(r);
    return r;
}

inline UniPoly uni_sub(UniPoly p, const UniPoly& q, const FieldSpecPtr& spec) {
    if (p.size() < q.size()) p.resize(q.size(), FieldElem::zero(spec));
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = p[i] - q[i];
    uni_trim(p);
    return p;
}

// Exact square root of a dense univariate polynomial, solved coefficient by
// coefficient from the top and verified by squaring.
inline std::optional<UniPoly> uni_sqrt_exact(UniPoly p, const FieldSpecPtr& spec) {
    uni_trim(p);
    if (p.empty()) return UniPoly{};
    std::size_t deg = p.size() - 1;
    if (deg % 2 != 0) return std::nullopt;
    std::size_t m = deg / 2;
    auto lead = field_sqrt_exact(p[deg]);
    if (!lead) return std::nullopt;
    UniPoly q(m + 1, FieldElem::zero(spec));
    q[m] = *lead;
    FieldElem twol = (*lead + *lead).inverse();
    for (std::size_t k = 1; k <= m; ++k) {
        // coefficient of t^(2m-k) in q^2 equals p[2m-k]
        FieldElem acc = FieldElem::zero(spec);
        for (std::size_t i = m - k + 1; i + (m - k) <= 2 * m - k && i <= m; ++i) {
            std::size_t j = 2 * m - k - i;
            if (j > m || j <= m - k) continue;
            if (i > m - k) acc = acc + q[i] * q[j];
        }
        q[m - k] = (p[2 * m - k] - acc) * twol;
    }
    if (uni_sub(uni_mul(q, q, spec), p, spec).empty()) return q;
    return std::nullopt;
}

inline std::string uni_str(const UniPoly& p, const RingPtr& tring) {
    Poly out = Poly::zero(tring);
    Poly t = Poly::variable(tring, "t");
    for (std::size_t i = 0; i < p.size(); ++i)
        out += Poly::constant(tring, p[i]) * t.pow(unsigned(i));
    return out.str();
}

// Split a polynomial by the powers of one variable; the returned pieces have
// that exponent cleared.
inline std::map<std::uint32_t, Poly> coefficient_split(const Poly& g, std::size_t t_index) {
    std::map<std::uint32_t, Poly> out;
    for (const auto& term : g.terms()) {
        Monomial m = term.mono;
        std::uint32_t e = m[t_index];
        m[t_index] = 0;
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Poly::zero(g.ring())).first;
        it->second += Poly::monomial(g.ring(), std::move(m), term.coeff);
    }
    return out;
}

// Unknown-coefficient expansion ring: c0..ce for x, extra for y or the
// inverse, Rabinowitsch variable w for the leading coefficient, and t.
struct SliceRing {
    RingPtr ring;
    std::vector<Poly> c, b;
    Poly w, t;
};

inline SliceRing make_slice_ring(const FieldSpecPtr& spec, int e, int m, const char* bname) {
    std::vector<std::string> vars;
    for (int i = 0; i <= e; ++i) vars.push_back("c" + std::to_string(i));
    for (int j = 0; j <= m; ++j) vars.push_back(std::string(bname) + std::to_string(j));
    vars.push_back("w");
    vars.push_back("t");
    SliceRing s;
    s.ring = make_ring(vars, spec);
    for (int i = 0; i <= e; ++i) s.c.push_back(Poly::variable(s.ring, "c" + std::to_string(i)));
    for (int j = 0; j <= m; ++j)
        s.b.push_back(Poly::variable(s.ring, std::string(bname) + std::to_string(j)));
    s.w = Poly::variable(s.ring, "w");
    s.t = Poly::variable(s.ring, "t");
    return s;
}

inline Poly generic_poly(const SliceRing& s, const std::vector<Poly>& coeffs) {
    Poly out = Poly::zero(s.ring);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * s.t.pow(unsigned(i));
    return out;
}

// Collect the t-coefficients of g together with invertibility of the leading
// coefficient of x into one ideal.
inline Ideal slice_ideal(const SliceRing& s, const Poly& g) {
    std::vector<Poly> gens;
    for (auto& [e, coeff] : coefficient_split(g, s.ring->var_index("t")))
        gens.push_back(std::move(coeff));
    gens.push_back(Poly::constant(s.ring, Rational(1)) - s.w * s.c.back());
    return Ideal(s.ring, std::move(gens));
}

} // namespace detail

// Search the small coefficient box {-3..3}^(e+1) for an actual parametrization
// t -> (x(t), y(t)) of y^2 = f(x); used to turn a failed slice into an
// explicit counterexample witness.
inline std::optional<std::string> find_E_parametrization(const FieldSpecPtr& spec, int e) {
    using namespace detail;
    std::vector<Rational> box{0, 1, -1, 2, -2, 3, -3};
    std::vector<Rational> leads{1, -1, 2, -2, 3, -3};
    RingPtr tring = make_ring({"t"}, spec);
    std::vector<FieldElem> lams{FieldElem(spec, spec->lambda1), FieldElem(spec, spec->lambda2),
                                FieldElem(spec, spec->lambda3)};
    std::vector<std::size_t> idx(std::size_t(e), 0);
    for (const Rational& lead : leads) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            UniPoly x(std::size_t(e) + 1, FieldElem::zero(spec));
            for (int i = 0; i < e; ++i) x[std::size_t(i)] = FieldElem(spec, box[idx[std::size_t(i)]]);
            x[std::size_t(e)] = FieldElem(spec, lead);
            UniPoly fx{FieldElem::one(spec)};
            for (const auto& lam : lams) {
                UniPoly factor = x;
                factor[0] = factor[0] - lam;
                fx = uni_mul(fx, factor, spec);
            }
            if (auto y = uni_sqrt_exact(fx, spec)) {
                if (y->size() > 1) // nonconstant y certifies a nonconstant map
                    return "x(t) = " + uni_str(x, tring) + ", y(t) = " + uni_str(*y, tring);
            }
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == box.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
    }
    return std::nullopt;
}

// No nonconstant A1 -> E with x-degree at most d, or an explicit map.
inline RigidityCertificate certify_E(const FieldSpecPtr& spec, int d,
                                     std::optional<long long> budget = {}) {
    using namespace detail;
    RigidityCertificate cert;
    cert.target = "E";
    cert.degree_bound = d;
    bool all_ok = true;
    for (int e = 1; e <= d; ++e) {
        SliceEvidence ev;
        ev.x_degree = e;
        if ((3 * e) % 2 != 0) {
            ev.vacuous = true;
            ev.certified = true;
            ev.note = "deg y^2 = 3e is odd; no polynomial y exists";
            cert.slices.push_back(ev);
            continue;
        }
        int m = 3 * e / 2;
        SliceRing s = make_slice_ring(spec, e, m, "b");
        Poly x = generic_poly(s, s.c), y = generic_poly(s, s.b);
        Poly fx = Poly::constant(s.ring, Rational(1));
        for (const Rational& l : {spec->lambda1, spec->lambda2, spec->lambda3})
            fx *= x - Poly::constant(s.ring, FieldElem(spec, l));
        try {
            ev.certified = is_unit_ideal(slice_ideal(s, y * y - fx), budget);
            ev.note = ev.certified ? "coefficient ideal is the unit ideal"
                                   : "coefficient ideal is proper";
        } catch (const BudgetExceeded&) {
            ev.note = "budget exceeded";
            cert.slices.push_back(ev);
            cert.status = RigidityStatus::Inconclusive;
            return cert;
        }
        if (!ev.certified) {
            all_ok = false;
            if (auto w = find_E_parametrization(spec, e)) {
                cert.witness = *w;
                cert.slices.push_back(ev);
                cert.status = RigidityStatus::FoundMap;
                return cert;
            }
        }
        cert.slices.push_back(ev);
    }
    cert.status = all_ok ? RigidityStatus::Certified : RigidityStatus::Inconclusive;
    return cert;
}

// No nonconstant A1 -> Gm: the coordinate x(t) of degree e and its inverse
// v(t) of degree up to e satisfy x*v = 1, whose coefficient ideal is the unit
// ideal slice by slice.  (Degrees add in K[t], so an inverse of any degree is
// already impossible; the bounded slice is what gets checked mechanically.)
inline RigidityCertificate certify_Gm(const FieldSpecPtr& spec, int d,
                                      std::optional<long long> budget = {}) {
    using namespace detail;
    RigidityCertificate cert;
    cert.target = "Gm";
    cert.degree_bound = d;
    bool all_ok = true;
    for (int e = 1; e <= d; ++e) {
        SliceEvidence ev;
        ev.x_degree = e;
        SliceRing s = make_slice_ring(spec, e, e, "v");
        Poly x = generic_poly(s, s.c), v = generic_poly(s, s.b);
        try {
            ev.certified = is_unit_ideal(
                slice_ideal(s, x * v - Poly::constant(s.ring, Rational(1))), budget);
            ev.note = ev.certified ? "coefficient ideal is the unit ideal"
                                   : "coefficient ideal is proper";
        } catch (const BudgetExceeded&) {
            ev.note = "budget exceeded";
            cert.slices.push_back(ev);
            cert.status = RigidityStatus::Inconclusive;
            return cert;
        }
        all_ok = all_ok && ev.certified;
        cert.slices.push_back(ev);
    }
    cert.status = all_ok ? RigidityStatus::Certified : RigidityStatus::Inconclusive;
    return cert;
}

// No nonconstant A1 -> Spec K[x,y]/(y^2) minus the origin: the y-coordinate
// is forced to vanish identically (each unknown coefficient lies in the
// radical of the coefficient ideal of y^2), after which avoiding the origin
// makes x(t) a unit, which is the Gm condition.
inline RigidityCertificate certify_nonreduced_line(const FieldSpecPtr& spec, int d,
                                                   std::optional<long long> budget = {}) {
    using namespace detail;
    RigidityCertificate cert;
    cert.target = "nonreduced-line";
    cert.degree_bound = d;

    SliceEvidence yev;
    yev.x_degree = 0;
    yev.note = "y(t) of degree up to " + std::to_string(d) + " must vanish identically";
    {
        std::vector<std::string> vars;
        for (int j = 0; j <= d; ++j) vars.push_back("b" + std::to_string(j));
        vars.push_back("t");
        RingPtr ring = make_ring(vars, spec);
        Poly y = Poly::zero(ring), t = Poly::variable(ring, "t");
        for (int j = 0; j <= d; ++j)
            y += Poly::variable(ring, "b" + std::to_string(j)) * t.pow(unsigned(j));
        Poly ysq = y * y;
        std::vector<Poly> gens;
        for (auto& [e, coeff] : coefficient_split(ysq, ring->var_index("t")))
            gens.push_back(std::move(coeff));
        Ideal C(ring, std::move(gens));
        yev.certified = true;
        try {
            for (int j = 0; j <= d; ++j)
                if (!radical_member(Poly::variable(ring, "b" + std::to_string(j)), C, budget)) {
                    yev.certified = false;
                    break;
                }
        } catch (const BudgetExceeded&) {
            yev.note = "budget exceeded";
            cert.slices.push_back(yev);
            cert.status = RigidityStatus::Inconclusive;
            return cert;
        }
    }
    cert.slices.push_back(yev);

    RigidityCertificate gm = certify_Gm(spec, d, budget);
    for (const auto& s : gm.slices) cert.slices.push_back(s);
    if (gm.status == RigidityStatus::Certified && yev.certified)
        cert.status = RigidityStatus::Certified;
    else if (gm.status == RigidityStatus::FoundMap)
        cert.status = RigidityStatus::FoundMap;
    else
        cert.status = RigidityStatus::Inconclusive;
    cert.witness = gm.witness;
    return cert;
}

} // namespace towercert
