#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towercert/schemes.hpp"

namespace towercert {

// Deliberate breakages for fault-injection runs.  Each flag flips a known,
// documented set of verifier checks; everything still builds so the failures
// surface as Fail reports rather than exceptions.
struct FaultSet {
    bool retain_lambda1_in_v1 = false;  // V1 keeps the ramification point (lambda1, 0)
    bool exclude_0lambda_from_v1 = false; // V1 also removes (0, L)
    bool keep_origin_in_x1 = false;     // levels drop the first excluded ideal <x0,x1,y1>
    bool corrupt_rho1 = false;          // rho1 sends y1 -> y1 instead of x0*y1
    bool repeat_lambda = false;         // lambda2 := lambda1, bypassing validation

    bool any() const {
        return retain_lambda1_in_v1 || exclude_0lambda_from_v1 || keep_origin_in_x1 ||
               corrupt_rho1 || repeat_lambda;
    }
};

inline std::string xvar(int i) { return "x" + std::to_string(i); }
inline std::string yvar(int i) { return "y" + std::to_string(i); }

// The level relations y_i^2 - x_{i-1}^2 f(x_i) are quasi-homogeneous for
// x-weight 1, y-weight 3 (y^2 weighs 6, the tail 5), which puts y_i^2 in the
// lead.  Those leading monomials are pairwise coprime, so the closed-form
// generators are already a Groebner basis and every membership test reduces
// to eliminating squares of y.  Plain grevlex instead leads with degree-5
// x-monomials and the bases explode with the height.
inline MonomialOrder tower_order(int upto) {
    std::map<std::string, int> w;
    for (int j = 1; j <= upto; ++j) w[yvar(j)] = 3;
    return MonomialOrder::weighted(std::move(w));
}

// The tower over A1:
//   Y_0 = A1,  Y_n = Spec K[x0, x1, y1, ..., xn, yn] / (y_i^2 - x_{i-1}^2 f(x_i)),
//   X_n = Y_n minus the loci <x_{i-1}, x_i, y_i>,  E : y^2 = f(x),
// with the projections phi_n (forget the last chart) and psi_n (forget x0 and
// shift indices down), the squeeze map rho1 : A1 x E -> Y_1, and the
// distinguished alternating points alpha_n, beta_n.
struct TowerContext {
    FieldSpecPtr spec;
    int n = 0;
    FaultSet faults;

    QuasiAffine E;
    Poly f_E; // f(x1) in E's ambient ring

    std::vector<PresentedRing> Y; // levels 0..n, Y[0] = K[x0]
    std::vector<QuasiAffine> X;   // open parts, X[0] = A1

    std::vector<RingMap> phi, psi; // index i in 1..n; slot 0 unused
    std::vector<bool> phi_ok, psi_ok;

    PresentedRing A1xE;
    RingMap rho1; // Y1-pres -> A1xE-pres
    bool rho1_ok = false;

    std::vector<RatPoint> alpha, beta; // levels 0..n

    const PresentedRing& A1() const { return Y[0]; }
};

// x0-coordinate structure map X_level -> A1, equal to phi_1 ... phi_level.
inline RingMap structure_to_A1(const TowerContext& ctx, int level) {
    RingMap m = ring_map(ctx.Y[0], ctx.Y[level],
                         std::vector<std::string>{"x0"},
                         "Phi" + std::to_string(level));
    verify_ring_map(m);
    return m;
}

inline TowerContext build_tower(const FieldSpecPtr& spec, int n, const FaultSet& faults = {}) {
    if (n < 1) throw ConfigError("tower needs at least one level");
    TowerContext ctx;
    ctx.spec = spec;
    ctx.n = n;
    ctx.faults = faults;

    RingPtr ringE = make_ring({"x1", "y1"}, spec, tower_order(1));
    ctx.f_E = build_f(ringE, "x1");
    Poly y1E = Poly::variable(ringE, "y1");
    ctx.E = quasi_affine(presented_ring(ringE, {y1E * y1E - ctx.f_E}, "E"), {}, "E");

    ctx.Y.resize(std::size_t(n) + 1);
    ctx.X.resize(std::size_t(n) + 1);
    RingPtr ringA1 = make_ring({"x0"}, spec);
    ctx.Y[0] = presented_ring(ringA1, {}, "Y0");
    ctx.X[0] = quasi_affine(ctx.Y[0], {}, "X0");

    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> vars{"x0"};
        for (int j = 1; j <= i; ++j) {
            vars.push_back(xvar(j));
            vars.push_back(yvar(j));
        }
        RingPtr ring = make_ring(vars, spec, tower_order(i));
        std::vector<Poly> gens;
        for (int j = 1; j <= i; ++j) {
            Poly yj = Poly::variable(ring, yvar(j));
            Poly xprev = Poly::variable(ring, xvar(j - 1));
            gens.push_back(yj * yj - xprev * xprev * build_f(ring, xvar(j)));
        }
        ctx.Y[i] = presented_ring(ring, std::move(gens), "Y" + std::to_string(i));
        std::vector<Ideal> excl;
        for (int j = 1; j <= i; ++j) {
            if (j == 1 && faults.keep_origin_in_x1) continue;
            excl.push_back(Ideal(ring, {Poly::variable(ring, xvar(j - 1)),
                                        Poly::variable(ring, xvar(j)),
                                        Poly::variable(ring, yvar(j))}));
        }
        ctx.X[i] = quasi_affine(ctx.Y[i], std::move(excl), "X" + std::to_string(i));
    }

    ctx.phi.resize(std::size_t(n) + 1);
    ctx.psi.resize(std::size_t(n) + 1);
    ctx.phi_ok.assign(std::size_t(n) + 1, false);
    ctx.psi_ok.assign(std::size_t(n) + 1, false);
    for (int i = 1; i <= n; ++i) {
        const RingPtr& tgt = ctx.Y[i].ambient();
        std::vector<Poly> phi_images, psi_images;
        phi_images.push_back(Poly::variable(tgt, "x0"));
        psi_images.push_back(Poly::variable(tgt, xvar(1)));
        for (int j = 1; j <= i - 1; ++j) {
            phi_images.push_back(Poly::variable(tgt, xvar(j)));
            phi_images.push_back(Poly::variable(tgt, yvar(j)));
            psi_images.push_back(Poly::variable(tgt, xvar(j + 1)));
            psi_images.push_back(Poly::variable(tgt, yvar(j + 1)));
        }
        ctx.phi[i] = ring_map(ctx.Y[i - 1], ctx.Y[i], std::move(phi_images),
                              "phi" + std::to_string(i));
        ctx.psi[i] = ring_map(ctx.Y[i - 1], ctx.Y[i], std::move(psi_images),
                              "psi" + std::to_string(i));
        ctx.phi_ok[i] = verify_ring_map(ctx.phi[i]);
        ctx.psi_ok[i] = verify_ring_map(ctx.psi[i]);
    }

    RingPtr ringA1E = make_ring({"x0", "x1", "y1"}, spec, tower_order(1));
    Poly y1p = Poly::variable(ringA1E, "y1");
    ctx.A1xE = presented_ring(ringA1E, {y1p * y1p - build_f(ringA1E, "x1")}, "A1xE");
    ctx.rho1 = ring_map(ctx.Y[1], ctx.A1xE,
                        std::vector<std::string>{"x0", "x1",
                                                 faults.corrupt_rho1 ? "y1" : "x0*y1"},
                        "rho1");
    ctx.rho1_ok = verify_ring_map(ctx.rho1);

    // alpha_n and beta_n alternate the two base points
    //   alpha_1 = (1, 0, L), beta_1 = (0, 1, 0)
    // through the gluing rule (x0 of the next chart = x1 of the previous one).
    FieldElem zero = FieldElem::zero(spec), one = FieldElem::one(spec);
    FieldElem lam = FieldElem::lambda(spec);
    RatPoint a1{one, zero, lam}, b1{zero, one, zero};
    ctx.alpha.resize(std::size_t(n) + 1);
    ctx.beta.resize(std::size_t(n) + 1);
    ctx.alpha[0] = {one};
    ctx.beta[0] = {zero};
    for (int i = 1; i <= n; ++i) {
        const RatPoint& ca = (i % 2 == 1) ? a1 : b1; // i-th chart of alpha_n
        const RatPoint& cb = (i % 2 == 1) ? b1 : a1;
        if (i == 1) {
            ctx.alpha[1] = a1;
            ctx.beta[1] = b1;
        } else {
            ctx.alpha[i] = ctx.alpha[i - 1];
            ctx.alpha[i].push_back(ca[1]);
            ctx.alpha[i].push_back(ca[2]);
            ctx.beta[i] = ctx.beta[i - 1];
            ctx.beta[i].push_back(cb[1]);
            ctx.beta[i].push_back(cb[2]);
        }
    }
    return ctx;
}

// The Nisnevich cover of A1 adapted to X_1 and the contraction homotopy:
//   V1 = E minus the ramification points (lambda_i, 0) and (0, -L),
//   V2 = A1 minus the origin, W = V1 x_{A1} V2 = V1 minus (0, L),
//   h1(x1, y1) = (1, x1, y1), h2(x) = (0, x, 0),
//   H = rho1 read as a homotopy A1 x W -> X_1 in the interval variable x0.
struct CoverDatum {
    QuasiAffine V1, V1tilde, V2, W, A1xW;
    RingMap p1, p2; // Y0-pres -> E-pres / V2-pres
    RingMap h1, h2; // Y1-pres -> E-pres / V2-pres
    RingMap H;      // Y1-pres -> A1xE-pres
    bool h1_ok = false, h2_ok = false, H_ok = false;
    bool w_agrees = false; // fiber-product W matches the direct description
    std::string w_witness;
};

inline Ideal point_ideal_on_E(const RingPtr& ring, const FieldElem& x, const FieldElem& y) {
    return Ideal(ring, {Poly::variable(ring, "x1") - Poly::constant(ring, x),
                        Poly::variable(ring, "y1") - Poly::constant(ring, y)});
}

// Does the honest fiber product V1' x_{A1} V2 agree with the direct
// description W (same curve, union of both excluded loci)?
inline bool w_description_agrees(const TowerContext& ctx, const QuasiAffine& V1v,
                                 const QuasiAffine& V2, const RingMap& p1, const RingMap& p2,
                                 const QuasiAffine& W, std::string* witness = nullptr) {
    FiberProduct fp = fiber_product(V1v, V2, ctx.Y[0], p1, p2, V1v.label + "x" + V2.label);
    const RingPtr& amb = fp.total.pres.ambient();
    RingMap fwd = ring_map(fp.total.pres, W.pres,
                           std::vector<std::string>{"x1", "y1", "x1"}, "product->direct");
    RingMap bwd = ring_map(W.pres, fp.total.pres,
                           std::vector<Poly>{Poly::variable(amb, "x1"),
                                             Poly::variable(amb, "y1")},
                           "direct->product");
    bool iso = check_iso(fwd, bwd);
    std::vector<Ideal> transported;
    for (const auto& e : fp.total.excluded) transported.push_back(pullback_ideal(fwd, e));
    bool locus = iso && same_excluded_locus(W.pres, transported, W.excluded);
    if ((!iso || !locus) && witness)
        *witness = "fiber product " + fp.total.label + " disagrees with " + W.label +
                   ": iso=" + (iso ? "yes" : "no") + " locus=" + (locus ? "yes" : "no");
    return iso && locus;
}

inline CoverDatum build_cover(const TowerContext& ctx) {
    const FieldSpecPtr& spec = ctx.spec;
    const RingPtr& ringE = ctx.E.pres.ambient();
    FieldElem zero = FieldElem::zero(spec);
    FieldElem lam = FieldElem::lambda(spec);
    const FaultSet& faults = ctx.faults;

    CoverDatum cov;
    std::vector<Ideal> ram;
    for (const Rational& l :
         {spec->lambda1, spec->lambda2, spec->lambda3})
        ram.push_back(point_ideal_on_E(ringE, FieldElem(spec, l), zero));

    std::vector<Ideal> v1excl = ram;
    if (faults.retain_lambda1_in_v1) v1excl.erase(v1excl.begin());
    v1excl.push_back(point_ideal_on_E(ringE, zero, -lam));
    if (faults.exclude_0lambda_from_v1) v1excl.push_back(point_ideal_on_E(ringE, zero, lam));
    cov.V1 = quasi_affine(ctx.E.pres, v1excl, "V1");

    std::vector<Ideal> v1texcl = ram;
    v1texcl.push_back(point_ideal_on_E(ringE, zero, lam));
    cov.V1tilde = quasi_affine(ctx.E.pres, v1texcl, "V1~");

    RingPtr ringV2 = make_ring({"x1"}, spec);
    PresentedRing v2pres = presented_ring(ringV2, {}, "V2");
    cov.V2 = quasi_affine(v2pres, {Ideal(ringV2, {Poly::variable(ringV2, "x1")})}, "V2");

    cov.p1 = ring_map(ctx.Y[0], ctx.E.pres, std::vector<std::string>{"x1"}, "p1");
    verify_ring_map(cov.p1);
    cov.p2 = ring_map(ctx.Y[0], v2pres, std::vector<std::string>{"x1"}, "p2");
    verify_ring_map(cov.p2);

    cov.h1 = ring_map(ctx.Y[1], ctx.E.pres, std::vector<std::string>{"1", "x1", "y1"}, "h1");
    cov.h1_ok = verify_ring_map(cov.h1);
    cov.h2 = ring_map(ctx.Y[1], v2pres, std::vector<std::string>{"0", "x1", "0"}, "h2");
    cov.h2_ok = verify_ring_map(cov.h2);

    // W in E-coordinates; agreement with the honest fiber product is asserted.
    std::vector<Ideal> wexcl = v1excl;
    wexcl.push_back(point_ideal_on_E(ringE, zero, lam));
    cov.W = quasi_affine(PresentedRing{ctx.E.pres.ideal, "W"}, wexcl, "W");

    cov.w_agrees = w_description_agrees(ctx, cov.V1, cov.V2, cov.p1, cov.p2, cov.W,
                                        &cov.w_witness);

    std::vector<Ideal> cylinders;
    const RingPtr& ringH = ctx.A1xE.ambient();
    for (const auto& e : cov.W.excluded) {
        std::vector<Poly> gens;
        for (const auto& g : e.gens()) gens.push_back(g.transport(ringH));
        cylinders.push_back(Ideal(ringH, std::move(gens)));
    }
    cov.A1xW = quasi_affine(PresentedRing{ctx.A1xE.ideal, "A1xW"}, std::move(cylinders), "A1xW");
    cov.H = RingMap{ctx.rho1.source, cov.A1xW.pres, ctx.rho1.images, ctx.rho1_ok, "H"};
    cov.H_ok = ctx.rho1_ok;

    return cov;
}

// Specialize the interval coordinate of the homotopy's domain: the returned
// map has target presentation with `interval_var` removed and set to t.
inline RingMap endpoint(const RingMap& m, const std::string& interval_var, const FieldElem& t,
                        std::string label = "") {
    if (!m.verified) throw Error("endpoint: homotopy not verified (" + m.label + ")");
    const RingPtr& amb = m.target.ambient();
    std::size_t idx = amb->var_index(interval_var);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < amb->vars.size(); ++i)
        if (i != idx) vars.push_back(amb->vars[i]);
    RingPtr ring2 = make_ring(vars, amb->spec, amb->order);
    std::vector<Poly> sub;
    for (std::size_t i = 0; i < amb->vars.size(); ++i)
        sub.push_back(i == idx ? Poly::constant(ring2, t)
                               : Poly::variable(ring2, amb->vars[i]));
    std::vector<Poly> gens;
    for (const auto& g : m.target.ideal.gens()) gens.push_back(g.substitute(ring2, sub));
    PresentedRing tgt = presented_ring(ring2, std::move(gens),
                                       m.target.label + "|" + interval_var + "=" + t.str());
    std::vector<Poly> images;
    for (const auto& im : m.images) images.push_back(im.substitute(ring2, sub));
    RingMap r = ring_map(m.source, tgt, std::move(images),
                         label.empty() ? m.label + "@" + t.str() : label);
    verify_ring_map(r);
    return r;
}

// h x id on U x_{A1} X_n, lifting a map U -> X_1 over its base map q = psi_1
// after h.  The X_{n+1} chart variables (x0, x1, y1) go through h on the
// cover-side factor (renamed with a v prefix); higher charts shift down onto
// the X_n factor.
struct Lift {
    FiberProduct dom; // U x_{A1} X_n, cover factor variables prefixed with v
    RingMap map;      // X_{n+1}-pres -> dom presentation
    bool map_ok = false;
    bool exclusion_ok = false;
};

inline Lift lift_to_level(const TowerContext& ctx, int n, const RingMap& m,
                          const QuasiAffine& U, const RingMap& q, const std::string& label,
                          bool check_exclusion = true) {
    if (n < 0 || n + 1 > ctx.n) throw ConfigError("lift_to_level: level out of range");
    if (!same_presentation(m.source, ctx.Y[1]))
        throw RingMismatch("lift_to_level: map must land in level one");
    RingMap check = compose(ctx.psi[1], m);
    RingMap qv = q;
    if (!ring_map_equal(check, qv))
        throw CompatibilityFailure("lift_to_level: psi_1 after " + m.label +
                                   " differs from the covering map " + q.label);

    std::map<std::string, std::string> renameU;
    for (const auto& v : U.pres.ambient()->vars) renameU[v] = "v" + v;
    FiberProduct dom = fiber_product(U, ctx.X[n], ctx.Y[0], q, structure_to_A1(ctx, n),
                                     label + "_dom", renameU, {});
    const RingPtr& amb = dom.total.pres.ambient();

    std::vector<Poly> images;
    for (const auto& im : m.images) images.push_back(im.transport(amb, renameU));
    for (int j = 1; j <= n; ++j) {
        images.push_back(Poly::variable(amb, xvar(j)));
        images.push_back(Poly::variable(amb, yvar(j)));
    }
    Lift lift;
    lift.map = ring_map(ctx.Y[n + 1], dom.total.pres, std::move(images), label);
    lift.map_ok = verify_ring_map(lift.map);
    lift.exclusion_ok = check_exclusion && lift.map_ok &&
                        morphism_avoids_excluded(lift.map, dom.total, ctx.X[n + 1]);
    lift.dom = std::move(dom);
    return lift;
}

// The squeeze maps with a fixed interval value a != 0:
//   h1^a : V1 -> X_1, (x1, y1) -> (a, x1, a*y1), and its variant on
//   V1~ = E minus {(lambda_i, 0), (0, L)}.
struct ModifiedHomotopy {
    QuasiAffine domain;
    RingMap map; // Y1-pres -> E-pres
    bool map_ok = false;
    bool exclusion_ok = false;
};

inline ModifiedHomotopy build_modified(const TowerContext& ctx, const CoverDatum& cov,
                                       const FieldElem& a, bool tilde) {
    if (a.is_zero()) throw ZeroParameter("modified homotopy needs a nonzero interval value");
    const RingPtr& ringE = ctx.E.pres.ambient();
    ModifiedHomotopy mh;
    mh.domain = tilde ? cov.V1tilde : cov.V1;
    Poly pa = Poly::constant(ringE, a);
    mh.map = ring_map(ctx.Y[1], ctx.E.pres,
                      std::vector<Poly>{pa, Poly::variable(ringE, "x1"),
                                        pa * Poly::variable(ringE, "y1")},
                      std::string(tilde ? "h1~^" : "h1^") + a.str());
    mh.map_ok = verify_ring_map(mh.map);
    mh.exclusion_ok = mh.map_ok && morphism_avoids_excluded(mh.map, mh.domain, ctx.X[1]);
    return mh;
}

// Fiber of phi_n over a rational point Q of X_{n-1}: substituting Q into the
// level-n relation leaves y_n^2 - a^2 f(x_n) with a = x_{n-1}(Q).  For a != 0
// this is a copy of E (witnessed by an explicit isomorphism); for a = 0 it is
// the nonreduced line y_n^2 = 0 minus its origin.
enum class FiberKind { EllipticE, NonreducedPuncturedLine };

struct FiberClass {
    FiberKind kind;
    QuasiAffine fiber;
    FieldElem base_coord;
    std::optional<std::pair<RingMap, RingMap>> iso; // E-pres <-> fiber-pres
    bool iso_ok = false;
};

inline FiberClass fiber_of_phi(const TowerContext& ctx, int n, const RatPoint& Q) {
    if (n < 1 || n > ctx.n) throw ConfigError("fiber_of_phi: level out of range");
    if (!point_on(ctx.X[n - 1], Q))
        throw PointNotOnVariety("fiber_of_phi: point " + point_str(Q) + " not on " +
                                ctx.X[n - 1].label);
    const RingPtr& src = ctx.Y[n].ambient();
    RingPtr ring = make_ring({xvar(n), yvar(n)}, ctx.spec, tower_order(n));
    std::vector<Poly> sub;
    for (std::size_t i = 0; i < src->vars.size(); ++i) {
        if (src->vars[i] == xvar(n)) sub.push_back(Poly::variable(ring, xvar(n)));
        else if (src->vars[i] == yvar(n)) sub.push_back(Poly::variable(ring, yvar(n)));
        else sub.push_back(Poly::constant(ring, Q[i]));
    }
    std::vector<Poly> gens;
    for (const auto& g : ctx.Y[n].ideal.gens()) {
        Poly s = g.substitute(ring, sub);
        if (!s.is_zero()) gens.push_back(s);
    }
    std::vector<Ideal> excl;
    for (const auto& e : ctx.X[n].excluded) {
        std::vector<Poly> eg;
        bool unit = false;
        for (const auto& g : e.gens()) {
            Poly s = g.substitute(ring, sub);
            if (s.is_constant() && !s.is_zero()) { unit = true; break; }
            if (!s.is_zero()) eg.push_back(s);
        }
        if (!unit && !eg.empty()) excl.push_back(Ideal(ring, std::move(eg)));
    }

    FiberClass fc;
    fc.base_coord = Q[ctx.Y[n - 1].ambient()->var_index(xvar(n - 1))];
    std::string lbl = "fiber(phi" + std::to_string(n) + "," + point_str(Q) + ")";
    fc.fiber = quasi_affine(presented_ring(ring, std::move(gens), lbl), std::move(excl), lbl);
    if (fc.base_coord.is_zero()) {
        fc.kind = FiberKind::NonreducedPuncturedLine;
    } else {
        fc.kind = FiberKind::EllipticE;
        const FieldElem& a = fc.base_coord;
        RingMap fwd = ring_map(ctx.E.pres, fc.fiber.pres,
                               std::vector<Poly>{Poly::variable(ring, xvar(n)),
                                                 Poly::variable(ring, yvar(n)) * a.inverse()},
                               "E->" + lbl);
        RingMap bwd = ring_map(fc.fiber.pres, ctx.E.pres,
                               std::vector<Poly>{Poly::variable(ctx.E.pres.ambient(), "x1"),
                                                 Poly::variable(ctx.E.pres.ambient(), "y1") * a},
                               lbl + "->E");
        fc.iso_ok = check_iso(fwd, bwd);
        fc.iso = std::make_pair(std::move(fwd), std::move(bwd));
    }
    return fc;
}

// Does the closed-form presentation of Y_n (and X_n's excluded family) agree
// with the one built inductively as the fiber product of two copies of level
// n-1 over level n-2?
inline bool presentation_matches(const TowerContext& ctx, int n, std::string* witness = nullptr) {
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    if (n < 1 || n > ctx.n) throw ConfigError("presentation_matches: level out of range");
    if (n == 1) {
        // no pullback below level one; the two constructions are one and the same
        std::vector<Poly> ids;
        for (const auto& v : ctx.Y[1].ambient()->vars)
            ids.push_back(Poly::variable(ctx.Y[1].ambient(), v));
        RingMap idm = ring_map(ctx.Y[1], ctx.Y[1], ids, "idY1");
        RingMap idm2 = idm;
        if (!check_iso(idm, idm2)) return fail("identity on level one is not an isomorphism");
        return true;
    }

    std::map<std::string, std::string> renameB;
    for (const auto& v : ctx.Y[n - 1].ambient()->vars) renameB[v] = v + "b";
    FiberProduct fp = fiber_product(ctx.X[n - 1], ctx.X[n - 1], ctx.Y[n - 2], ctx.psi[n - 1],
                                    ctx.phi[n - 1], "Y" + std::to_string(n) + "_tensor", {},
                                    renameB);

    const RingPtr& closed = ctx.Y[n].ambient();
    const RingPtr& tensor = fp.total.pres.ambient();
    std::vector<Poly> fwd_images; // tensor variable -> closed ring
    for (const auto& v : ctx.Y[n - 1].ambient()->vars) // A-side keeps its names
        fwd_images.push_back(Poly::variable(closed, v));
    fwd_images.push_back(Poly::variable(closed, xvar(1))); // x0b
    for (int j = 1; j <= n - 1; ++j) {
        fwd_images.push_back(Poly::variable(closed, xvar(j + 1)));
        fwd_images.push_back(Poly::variable(closed, yvar(j + 1)));
    }
    RingMap fwd = ring_map(fp.total.pres, ctx.Y[n], fwd_images, "tensor->closed");

    std::vector<Poly> bwd_images; // closed variable -> tensor ring
    bwd_images.push_back(Poly::variable(tensor, "x0"));
    for (int j = 1; j <= n; ++j) {
        if (j <= n - 1) {
            bwd_images.push_back(Poly::variable(tensor, xvar(j)));
            bwd_images.push_back(Poly::variable(tensor, yvar(j)));
        } else {
            bwd_images.push_back(Poly::variable(tensor, xvar(j - 1) + "b"));
            bwd_images.push_back(Poly::variable(tensor, yvar(j - 1) + "b"));
        }
    }
    RingMap bwd = ring_map(ctx.Y[n], fp.total.pres, bwd_images, "closed->tensor");

    if (!check_iso(fwd, bwd))
        return fail("level " + std::to_string(n) +
                    ": inductive fiber product is not isomorphic to the closed form");

    // excluded families must correspond under the isomorphism, as sets
    std::vector<Ideal> transported;
    for (const auto& e : fp.total.excluded) transported.push_back(pullback_ideal(fwd, e));
    auto covered = [&](const std::vector<Ideal>& from, const std::vector<Ideal>& to) {
        for (const auto& a : from) {
            bool found = false;
            for (const auto& b : to)
                if (ideal_equal(a, b)) { found = true; break; }
            if (!found) return false;
        }
        return true;
    };
    if (!covered(transported, ctx.X[n].excluded) || !covered(ctx.X[n].excluded, transported))
        return fail("level " + std::to_string(n) +
                    ": excluded loci do not correspond under the isomorphism");
    return true;
}

// The elementary distinguished square conditions for { p1 : V1 -> A1,
// p2 : V2 -> A1 }: p2 is the open inclusion of A1 minus the origin, p1 is
// etale on V1, and over the closed complement {0} the fiber of p1 consists of
// the two points (0, +-L) of which exactly the removed one is missing, the
// retained one mapping isomorphically.  `tilde` flips which point is retained.
inline bool check_nisnevich(const TowerContext& ctx, const QuasiAffine& V1,
                            const QuasiAffine& V2, const RingMap& p1, const RingMap& p2,
                            bool tilde = false, std::string* witness = nullptr) {
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    const RingPtr& ringE = V1.pres.ambient();
    const FieldSpecPtr& spec = ringE->spec;
    FieldElem zero = FieldElem::zero(spec), lam = FieldElem::lambda(spec);

    // (a) p2 is the open inclusion of A1 minus the origin
    const RingPtr& ringV2 = V2.pres.ambient();
    if (!V2.pres.ideal.gens().empty()) return fail("V2 is not an open subscheme of A1");
    if (p2.images.size() != 1 ||
        p2.images[0] != Poly::variable(ringV2, ringV2->vars[0]))
        return fail("p2 is not the coordinate inclusion");
    std::vector<Ideal> origin{Ideal(ringV2, {Poly::variable(ringV2, ringV2->vars[0])})};
    if (!same_excluded_locus(V2.pres, V2.excluded, origin))
        return fail("V2 does not remove exactly the origin");

    // (b) p1 is etale on V1: the non-etale locus lies in the excluded points
    Poly y1 = Poly::variable(ringE, "y1");
    Ideal nonetale(ringE, {y1 * y1 - build_f(ringE, "x1"), y1 * Rational(2)});
    if (!detail::variety_covered_by(nonetale, V1.excluded, {}))
        return fail("ramification locus of p1 is not excluded from V1");

    // (c) the fiber over the closed complement {0} is (0, +-L) with exactly
    // the removed point missing and the retained one mapping isomorphically
    if (lam.is_zero()) return fail("degenerate parameters: L = 0");
    RatPoint retained{zero, tilde ? -lam : lam};
    RatPoint removed{zero, tilde ? lam : -lam};
    Ideal fiber0(ringE, {y1 * y1 - build_f(ringE, "x1"), Poly::variable(ringE, "x1")});
    for (const auto& g : fiber0.gens())
        if (!g.evaluate(retained).is_zero() || !g.evaluate(removed).is_zero())
            return fail("candidate fiber points do not satisfy the fiber equations");
    std::vector<Ideal> two_points{point_ideal_on_E(ringE, zero, retained[1]),
                                  point_ideal_on_E(ringE, zero, removed[1])};
    if (!detail::variety_covered_by(fiber0, two_points, {}))
        return fail("fiber of p1 over 0 contains more than the two expected points");
    if (!point_on(V1, retained))
        return fail("retained fiber point " + point_str(retained) + " is missing from V1");
    if (point_on(V1, removed))
        return fail("fiber point " + point_str(removed) + " was not removed from V1");
    RatPoint img = evaluate_morphism(p1, retained);
    if (!(img.size() == 1 && img[0].is_zero()))
        return fail("retained fiber point does not map to 0");
    return true;
}

} // namespace towercert
