#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towercert/groebner.hpp"
#include "towercert/poly_parse.hpp"

namespace towercert {

// Finitely presented K-algebra K[vars]/ideal, standing for the affine scheme
// Spec of it.  The label only decorates reports and error messages.
struct PresentedRing {
    Ideal ideal;
    std::string label;

    const RingPtr& ambient() const { return ideal.ring(); }
    const std::vector<std::string>& vars() const { return ambient()->vars; }
};

inline PresentedRing presented_ring(RingPtr ring, std::vector<Poly> gens, std::string label) {
    return PresentedRing{Ideal(std::move(ring), std::move(gens)), std::move(label)};
}

inline bool same_presentation(const PresentedRing& a, const PresentedRing& b) {
    if (!same_ring(a.ambient(), b.ambient())) return false;
    if (a.ideal.gens().size() != b.ideal.gens().size()) return false;
    for (std::size_t i = 0; i < a.ideal.gens().size(); ++i)
        if (a.ideal.gens()[i] != b.ideal.gens()[i]) return false;
    return true;
}

// K-algebra map source -> target, i.e. a morphism Spec(target) -> Spec(source)
// read contravariantly.  `verified` records that every source relation maps
// into the target ideal.
struct RingMap {
    PresentedRing source;
    PresentedRing target;
    std::vector<Poly> images; // one per source ambient variable, in target ambient
    bool verified = false;
    std::string label;
};

inline RingMap ring_map(PresentedRing source, PresentedRing target, std::vector<Poly> images,
                        std::string label = "") {
    if (images.size() != source.ambient()->vars.size())
        throw ArityMismatch("ring map needs one image per source variable (" + label + ")");
    for (const auto& p : images)
        if (!same_ring(p.ring(), target.ambient()))
            throw RingMismatch("ring map image not in target ambient ring (" + label + ")");
    return RingMap{std::move(source), std::move(target), std::move(images), false,
                   std::move(label)};
}

// Convenience: images given in the canonical text grammar.
inline RingMap ring_map(PresentedRing source, PresentedRing target,
                        const std::vector<std::string>& image_exprs, std::string label = "") {
    std::vector<Poly> images;
    images.reserve(image_exprs.size());
    for (const auto& e : image_exprs) images.push_back(parse_poly(e, target.ambient()));
    return ring_map(std::move(source), std::move(target), std::move(images), std::move(label));
}

// Braced lists of string literals would otherwise be ambiguous against the
// Poly overload (a two-element list matches vector's iterator-pair ctor).
inline RingMap ring_map(PresentedRing source, PresentedRing target,
                        std::initializer_list<const char*> image_exprs, std::string label = "") {
    return ring_map(std::move(source), std::move(target),
                    std::vector<std::string>(image_exprs.begin(), image_exprs.end()),
                    std::move(label));
}

inline Poly map_apply(const RingMap& m, const Poly& p) {
    if (!same_ring(p.ring(), m.source.ambient()))
        throw RingMismatch("map_apply argument not in source ambient ring");
    return p.substitute(m.target.ambient(), m.images);
}

inline bool verify_ring_map(RingMap& m, std::optional<long long> budget = {}) {
    for (const auto& g : m.source.ideal.gens()) {
        if (!ideal_member(map_apply(m, g), m.target.ideal, budget)) {
            m.verified = false;
            return false;
        }
    }
    m.verified = true;
    return true;
}

inline RingMap verified_ring_map(PresentedRing source, PresentedRing target,
                                 const std::vector<std::string>& image_exprs,
                                 std::string label = "") {
    RingMap m = ring_map(std::move(source), std::move(target), image_exprs, label);
    if (!verify_ring_map(m))
        throw Error("ring map does not preserve relations: " + label);
    return m;
}

inline RingMap verified_ring_map(PresentedRing source, PresentedRing target,
                                 std::initializer_list<const char*> image_exprs,
                                 std::string label = "") {
    return verified_ring_map(std::move(source), std::move(target),
                             std::vector<std::string>(image_exprs.begin(), image_exprs.end()),
                             std::move(label));
}

// Composition at the ring level: f : R -> S then g : S -> T gives R -> T.
// As morphisms of spectra this is Spec(T) -> Spec(S) -> Spec(R).
inline RingMap compose(const RingMap& f, const RingMap& g) {
    if (!same_presentation(f.target, g.source))
        throw RingMismatch("compose: middle presentations differ");
    std::vector<Poly> images;
    images.reserve(f.images.size());
    for (const auto& p : f.images) images.push_back(map_apply(g, p));
    RingMap r{f.source, g.target, std::move(images), f.verified && g.verified,
              f.label.empty() || g.label.empty() ? f.label + g.label
                                                 : g.label + " after " + f.label};
    return r;
}

// Equality as maps out of the source presentation, i.e. componentwise modulo
// the target ideal.
inline bool ring_map_equal(const RingMap& a, const RingMap& b,
                           std::optional<long long> budget = {}) {
    if (!same_presentation(a.source, b.source) || !same_presentation(a.target, b.target))
        return false;
    for (std::size_t i = 0; i < a.images.size(); ++i)
        if (!ideal_member(a.images[i] - b.images[i], a.target.ideal, budget)) return false;
    return true;
}

using RatPoint = std::vector<FieldElem>;

inline std::string point_str(const RatPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].str();
    return s + ")";
}

// Spec(pres) minus the union of the excluded closed subschemes.
struct QuasiAffine {
    PresentedRing pres;
    std::vector<Ideal> excluded;
    std::string label;
};

inline QuasiAffine quasi_affine(PresentedRing pres, std::vector<Ideal> excluded,
                                std::string label) {
    for (const auto& e : excluded)
        if (!same_ring(e.ring(), pres.ambient()))
            throw RingMismatch("excluded ideal not in ambient ring (" + label + ")");
    return QuasiAffine{std::move(pres), std::move(excluded), std::move(label)};
}

inline bool point_on(const QuasiAffine& X, const RatPoint& p) {
    if (p.size() != X.pres.ambient()->vars.size())
        throw ArityMismatch("point arity does not match " + X.label);
    for (const auto& g : X.pres.ideal.gens())
        if (!g.evaluate(p).is_zero()) return false;
    for (const auto& e : X.excluded) {
        bool outside = false;
        for (const auto& g : e.gens())
            if (!g.evaluate(p).is_zero()) { outside = true; break; }
        if (!outside) return false;
    }
    return true;
}

// Image coordinates of p under the morphism Spec(target) -> Spec(source).
inline RatPoint evaluate_morphism(const RingMap& m, const RatPoint& p) {
    if (!m.verified) throw Error("evaluate_morphism: map not verified (" + m.label + ")");
    for (const auto& g : m.target.ideal.gens())
        if (!g.evaluate(p).is_zero())
            throw PointNotOnVariety("point " + point_str(p) + " not on " + m.target.label);
    RatPoint out;
    out.reserve(m.images.size());
    for (const auto& im : m.images) out.push_back(im.evaluate(p));
    return out;
}

inline Ideal pullback_ideal(const RingMap& m, const Ideal& F) {
    std::vector<Poly> gens;
    gens.reserve(F.gens().size());
    for (const auto& g : F.gens()) gens.push_back(map_apply(m, g));
    return Ideal(m.target.ambient(), std::move(gens));
}

// Product ideal: generated by all products of one generator from each factor.
// The zero-factor product is the unit ideal.
inline Ideal product_ideal(const RingPtr& ring, const std::vector<Ideal>& factors) {
    std::vector<Poly> gens{Poly::constant(ring, Rational(1))};
    for (const auto& f : factors) {
        std::vector<Poly> next;
        next.reserve(gens.size() * f.gens().size());
        for (const auto& a : gens)
            for (const auto& b : f.gens()) next.push_back(a * b);
        gens = std::move(next);
    }
    return Ideal(ring, std::move(gens));
}

// Mutually inverse pair test: both maps verified and both composites fix every
// variable modulo the respective ideals.
inline bool check_iso(RingMap& f, RingMap& g, std::optional<long long> budget = {}) {
    if (!same_presentation(f.source, g.target) || !same_presentation(f.target, g.source))
        return false;
    if (!f.verified && !verify_ring_map(f, budget)) return false;
    if (!g.verified && !verify_ring_map(g, budget)) return false;
    RingMap fg = compose(f, g); // source ambient -> source ambient
    for (std::size_t i = 0; i < fg.images.size(); ++i) {
        Poly v = Poly::variable(f.source.ambient(), f.source.ambient()->vars[i]);
        if (!ideal_member(fg.images[i] - v, f.source.ideal, budget)) return false;
    }
    RingMap gf = compose(g, f);
    for (std::size_t i = 0; i < gf.images.size(); ++i) {
        Poly v = Poly::variable(g.source.ambient(), g.source.ambient()->vars[i]);
        if (!ideal_member(gf.images[i] - v, g.source.ideal, budget)) return false;
    }
    return true;
}

namespace detail {

// Exact test for V(J) subset of V(G_1) u ... u V(G_k) inside Spec K[vars]:
// a point of V(J) missing every V(G_j) exists iff J stays proper after
// adjoining, for each j, a relation 1 - sum_g u_{j,g} * g forcing some
// generator of G_j to be invertible.
inline bool variety_covered_by(const Ideal& J, const std::vector<Ideal>& covers,
                               std::optional<long long> budget) {
    const RingPtr& ring = J.ring();
    std::vector<std::string> vars = ring->vars;
    std::vector<std::vector<std::string>> unit_vars(covers.size());
    for (std::size_t j = 0; j < covers.size(); ++j) {
        for (std::size_t k = 0; k < covers[j].gens().size(); ++k) {
            std::string u = "u" + std::to_string(j) + "_" + std::to_string(k);
            while (std::find(vars.begin(), vars.end(), u) != vars.end()) u += "_";
            unit_vars[j].push_back(u);
            vars.push_back(u);
        }
        if (covers[j].gens().empty()) return true; // covered by V(0) = everything
    }
    RingPtr ext = make_ring(vars, ring->spec, ring->order);
    std::vector<Poly> gens;
    for (const auto& g : J.gens()) gens.push_back(g.transport(ext));
    for (std::size_t j = 0; j < covers.size(); ++j) {
        Poly rel = Poly::constant(ext, Rational(1));
        for (std::size_t k = 0; k < covers[j].gens().size(); ++k)
            rel -= Poly::variable(ext, unit_vars[j][k]) * covers[j].gens()[k].transport(ext);
        gens.push_back(std::move(rel));
    }
    return is_unit_ideal(Ideal(ext, std::move(gens)), budget);
}

} // namespace detail

// Does the morphism Spec(X) -> Spec(Y) described by m (source presentation Y,
// target presentation X) carry all of the open set X into the open set Y?
// Semantics: V(X.ideal + pullback of Y's excluded locus) is contained in X's
// own excluded locus.  Decided per excluded ideal of Y with cheap unit/single-
// cover shortcuts and an exact union test as fallback.
inline bool morphism_avoids_excluded(const RingMap& m, const QuasiAffine& X,
                                     const QuasiAffine& Y,
                                     std::optional<long long> budget = {}) {
    if (!same_ring(m.target.ambient(), X.pres.ambient()) ||
        !same_ring(m.source.ambient(), Y.pres.ambient()))
        throw RingMismatch("morphism_avoids_excluded: varieties do not match the map");
    const RingPtr& amb = X.pres.ambient();
    for (const auto& F : Y.excluded) {
        Ideal pb = pullback_ideal(m, F);
        std::vector<Poly> jgens = X.pres.ideal.gens();
        for (const auto& g : pb.gens()) jgens.push_back(g);
        Ideal J(amb, std::move(jgens));
        if (is_unit_ideal(J, budget)) continue; // this piece of the bad locus misses X entirely
        bool covered = false;
        for (const auto& G : X.excluded) {
            bool all = true;
            for (const auto& g : G.gens()) {
                if (!ideal_member(g, J, budget) && !radical_member(g, J, budget)) {
                    all = false;
                    break;
                }
            }
            if (all) { covered = true; break; }
        }
        // pairs of excluded ideals before the full union keep the auxiliary
        // variable count down in the common case of two complementary branches
        for (std::size_t i = 0; !covered && i < X.excluded.size(); ++i)
            for (std::size_t j = i + 1; !covered && j < X.excluded.size(); ++j)
                if (detail::variety_covered_by(J, {X.excluded[i], X.excluded[j]}, budget))
                    covered = true;
        if (!covered && X.excluded.size() > 2 &&
            !detail::variety_covered_by(J, X.excluded, budget))
            return false;
        if (!covered && X.excluded.size() <= 2) return false;
    }
    return true;
}

// Reference formulation of the same containment through products of the
// excluded ideals; exponential in the number of ideals, used for small inputs
// and cross-checks.
inline bool morphism_avoids_excluded_by_products(const RingMap& m, const QuasiAffine& X,
                                                 const QuasiAffine& Y,
                                                 std::optional<long long> budget = {}) {
    const RingPtr& amb = X.pres.ambient();
    Ideal P = product_ideal(m.source.ambient(), Y.excluded);
    Ideal pb = pullback_ideal(m, P);
    std::vector<Poly> jgens = X.pres.ideal.gens();
    for (const auto& g : pb.gens()) jgens.push_back(g);
    Ideal J(amb, std::move(jgens));
    Ideal Q = product_ideal(amb, X.excluded);
    for (const auto& q : Q.gens())
        if (!radical_member(q, J, budget)) return false;
    return true;
}

// Point-set equality of two excluded loci over the same presented ring.
inline bool same_excluded_locus(const PresentedRing& P, const std::vector<Ideal>& E1,
                                const std::vector<Ideal>& E2,
                                std::optional<long long> budget = {}) {
    const RingPtr& amb = P.ambient();
    Ideal p1 = product_ideal(amb, E1);
    Ideal p2 = product_ideal(amb, E2);
    auto side = [&](const Ideal& prod, const Ideal& other) {
        std::vector<Poly> jgens = P.ideal.gens();
        for (const auto& g : other.gens()) jgens.push_back(g);
        Ideal J(amb, std::move(jgens));
        for (const auto& q : prod.gens())
            if (!radical_member(q, J, budget)) return false;
        return true;
    };
    return side(p1, p2) && side(p2, p1);
}

struct FiberProduct {
    QuasiAffine total;
    RingMap to_first;  // ring map: first factor presentation -> total
    RingMap to_second; // ring map: second factor presentation -> total
    std::map<std::string, std::string> rename_first, rename_second;
};

// Fiber product Spec(A) x_{Spec(C)} Spec(B) where f : C -> A and g : C -> B
// present the two legs.  The total presentation carries disjointly renamed
// copies of both factors' variables plus a gluing relation f*(c) - g*(c) per
// base variable.  Excluded loci of both factors pull back to the product.
inline FiberProduct fiber_product(const QuasiAffine& A, const QuasiAffine& B,
                                  const PresentedRing& C, const RingMap& f, const RingMap& g,
                                  std::string label,
                                  std::map<std::string, std::string> renameA = {},
                                  std::map<std::string, std::string> renameB = {}) {
    if (!same_presentation(f.source, C) || !same_presentation(g.source, C))
        throw RingMismatch("fiber_product: legs must share the base presentation");
    if (!same_ring(f.target.ambient(), A.pres.ambient()) ||
        !same_ring(g.target.ambient(), B.pres.ambient()))
        throw RingMismatch("fiber_product: legs do not match the factors");

    std::vector<std::string> vars;
    auto add_vars = [&](const QuasiAffine& X, std::map<std::string, std::string>& rename) {
        for (const auto& v : X.pres.ambient()->vars) {
            std::string name = rename.count(v) ? rename.at(v) : v;
            while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_b";
            rename[v] = name;
            vars.push_back(name);
        }
    };
    add_vars(A, renameA);
    add_vars(B, renameB);
    // variable weights follow the renames so a weighted factor keeps its
    // grading inside the product
    MonomialOrder order = A.pres.ambient()->order;
    {
        std::map<std::string, int> w;
        auto harvest = [&](const RingPtr& r, const std::map<std::string, std::string>& rn) {
            if (r->order.kind != MonomialOrder::Kind::Weighted) return;
            for (std::size_t i = 0; i < r->vars.size(); ++i)
                if (r->order.wvec[i] != 1) w[rn.at(r->vars[i])] = (int)r->order.wvec[i];
        };
        harvest(A.pres.ambient(), renameA);
        harvest(B.pres.ambient(), renameB);
        if (!w.empty()) order = MonomialOrder::weighted(std::move(w));
    }
    RingPtr amb = make_ring(vars, A.pres.ambient()->spec, order);

    std::vector<Poly> gens;
    for (const auto& p : A.pres.ideal.gens()) gens.push_back(p.transport(amb, renameA));
    for (const auto& p : B.pres.ideal.gens()) gens.push_back(p.transport(amb, renameB));
    for (std::size_t i = 0; i < C.ambient()->vars.size(); ++i)
        gens.push_back(f.images[i].transport(amb, renameA) -
                       g.images[i].transport(amb, renameB));
    PresentedRing total = presented_ring(amb, std::move(gens), label);

    std::vector<Ideal> excluded;
    auto add_excluded = [&](const QuasiAffine& X, const std::map<std::string, std::string>& rn) {
        for (const auto& e : X.excluded) {
            std::vector<Poly> eg;
            for (const auto& p : e.gens()) eg.push_back(p.transport(amb, rn));
            excluded.push_back(Ideal(amb, std::move(eg)));
        }
    };
    add_excluded(A, renameA);
    add_excluded(B, renameB);

    auto coproj = [&](const QuasiAffine& X, const std::map<std::string, std::string>& rn,
                      const std::string& lbl) {
        std::vector<Poly> images;
        for (const auto& v : X.pres.ambient()->vars)
            images.push_back(Poly::variable(amb, rn.at(v)));
        RingMap mp = ring_map(X.pres, total, std::move(images), lbl);
        verify_ring_map(mp);
        return mp;
    };
    RingMap pr1 = coproj(A, renameA, label + "->" + A.label);
    RingMap pr2 = coproj(B, renameB, label + "->" + B.label);

    return FiberProduct{quasi_affine(total, std::move(excluded), label), std::move(pr1),
                        std::move(pr2), std::move(renameA), std::move(renameB)};
}

struct Localization {
    PresentedRing pres;
    std::string unit_var;
};

// Adjoin a formal inverse of s: K[vars, u]/(ideal, 1 - u*s).
inline Localization localize(const PresentedRing& P, const Poly& s) {
    if (!same_ring(s.ring(), P.ambient())) throw RingMismatch("localize: element not in ring");
    std::vector<std::string> vars = P.ambient()->vars;
    std::string u = fresh_var_name(*P.ambient(), "u");
    vars.push_back(u);
    RingPtr ext = make_ring(vars, P.ambient()->spec, P.ambient()->order);
    std::vector<Poly> gens;
    for (const auto& g : P.ideal.gens()) gens.push_back(g.transport(ext));
    gens.push_back(Poly::constant(ext, Rational(1)) - Poly::variable(ext, u) * s.transport(ext));
    return Localization{presented_ring(ext, std::move(gens), P.label + "[1/" + s.str() + "]"), u};
}

// Is the morphism described by m an isomorphism after inverting `inverted` on
// the source side (and its pullback on the target side)?  The candidate
// inverse images are given in the canonical grammar over the localized source
// ring, whose extra variable is named "u" (or a fresh variant); the
// localization variable of the target maps to it by default.
inline bool localized_iso(const RingMap& m, const Poly& inverted,
                          const std::vector<std::string>& inverse_image_exprs,
                          std::optional<long long> budget = {}) {
    RingMap mv = m;
    if (!mv.verified && !verify_ring_map(mv, budget))
        throw Error("localized_iso: map fails to preserve relations (" + m.label + ")");
    if (inverse_image_exprs.size() != m.target.ambient()->vars.size())
        throw ArityMismatch("localized_iso: one inverse image per target variable expected");

    Localization src = localize(m.source, inverted);
    Localization tgt = localize(m.target, map_apply(mv, inverted));

    std::vector<Poly> fwd;
    for (const auto& im : mv.images) fwd.push_back(im.transport(tgt.pres.ambient()));
    fwd.push_back(Poly::variable(tgt.pres.ambient(), tgt.unit_var));
    RingMap floc = ring_map(src.pres, tgt.pres, std::move(fwd), m.label + " localized");
    if (!verify_ring_map(floc, budget)) return false;

    std::vector<Poly> bwd;
    for (const auto& e : inverse_image_exprs) bwd.push_back(parse_poly(e, src.pres.ambient()));
    bwd.push_back(Poly::variable(src.pres.ambient(), src.unit_var));
    RingMap gloc = ring_map(tgt.pres, src.pres, std::move(bwd), m.label + " localized inverse");
    if (!verify_ring_map(gloc, budget)) return false;

    return check_iso(floc, gloc, budget);
}

} // namespace towercert
