#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "towercert/rigidity.hpp"
#include "towercert/tower.hpp"

namespace towercert {

using ordered_json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, Skipped, Budget };

inline std::string status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        default: return "budget";
    }
}

struct CheckResult {
    std::string id, title, claim;
    CheckStatus status = CheckStatus::Skipped;
    std::string witness;
    double wall_ms = 0.0;
};

struct VerifierConfig {
    int n = 3;
    std::array<Rational, 3> lambdas{Rational(1), Rational(2), Rational(3)};
    int degree_bound = 4;
    std::vector<std::string> selected; // empty means every check
    std::optional<long long> budget;
    std::vector<std::string> faults;
};

struct Report {
    VerifierConfig config;
    std::vector<CheckResult> checks;
    int n_pass = 0, n_fail = 0, n_skipped = 0, n_budget = 0;
    bool ok = false; // every selected check passed
};

inline const std::vector<std::string>& known_fault_ids() {
    static const std::vector<std::string> ids{
        "retain-lambda1-in-v1", "exclude-0lambda-from-v1", "keep-origin-in-x1",
        "corrupt-rho1-y1-identity", "lambda2-equals-lambda1"};
    return ids;
}

inline FaultSet parse_fault_set(const std::vector<std::string>& names) {
    FaultSet f;
    for (const auto& n : names) {
        if (n == "retain-lambda1-in-v1") f.retain_lambda1_in_v1 = true;
        else if (n == "exclude-0lambda-from-v1") f.exclude_0lambda_from_v1 = true;
        else if (n == "keep-origin-in-x1") f.keep_origin_in_x1 = true;
        else if (n == "corrupt-rho1-y1-identity") f.corrupt_rho1 = true;
        else if (n == "lambda2-equals-lambda1") f.repeat_lambda = true;
        else throw ConfigError("unknown fault id: " + n);
    }
    return f;
}

namespace detail {

// A check body reports failure by returning a witness; empty optional passes.
using CheckBody = std::function<std::optional<std::string>()>;

struct CheckDef {
    std::string id, title, claim;
    CheckBody body;
};

inline std::optional<std::string> fail_w(std::string w) { return std::optional<std::string>(std::move(w)); }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

// All fourteen checks over one tower + cover instance.
inline std::vector<CheckDef> make_checks(const VerifierConfig& cfg, const FieldSpecPtr& spec,
                                         const TowerContext& ctx, const CoverDatum& cov) {
    std::vector<CheckDef> defs;
    const std::optional<long long>& budget = cfg.budget;
    FieldElem zero = FieldElem::zero(spec), one = FieldElem::one(spec);
    FieldElem lam = FieldElem::lambda(spec);
    int N = cfg.n;

    defs.push_back({"C1", "curve E is smooth",
                    "the Jacobian ideal (y1^2 - f(x1), 2*y1, f'(x1)) of E is the unit ideal",
                    [=, &ctx]() -> std::optional<std::string> {
        const RingPtr& ring = ctx.E.pres.ambient();
        Poly y1 = Poly::variable(ring, "y1");
        Poly f = build_f(ring, "x1");
        Ideal jac(ring, {y1 * y1 - f, y1 * Rational(2), f.derivative("x1")});
        if (is_unit_ideal(jac, budget)) return std::nullopt;
        std::vector<std::string> basis;
        for (const auto& g : jac.groebner(budget)) basis.push_back(g.str());
        return fail_w("Jacobian ideal is proper; reduced basis {" + join(basis, ", ") + "}");
    }});

    defs.push_back({"C2", "closed form of the tower matches the inductive pullback",
                    "for each level the presentation of Y_n and its excluded loci agree with the "
                    "fiber product of two copies of level n-1 over level n-2",
                    [=, &ctx]() -> std::optional<std::string> {
        for (int n = 1; n <= N; ++n) {
            std::string w;
            if (!presentation_matches(ctx, n, &w)) return fail_w(w);
        }
        return std::nullopt;
    }});

    defs.push_back({"C3", "structure maps preserve relations",
                    "phi_n, psi_n, rho1, p1, p2, h1, h2 and H all send presentation relations "
                    "into the target ideal",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        std::vector<std::string> bad;
        for (int i = 1; i <= N; ++i) {
            if (!ctx.phi_ok[i]) bad.push_back(ctx.phi[i].label);
            if (!ctx.psi_ok[i]) bad.push_back(ctx.psi[i].label);
        }
        if (!ctx.rho1_ok) bad.push_back(ctx.rho1.label);
        if (!cov.p1.verified) bad.push_back(cov.p1.label);
        if (!cov.p2.verified) bad.push_back(cov.p2.label);
        if (!cov.h1_ok) bad.push_back(cov.h1.label);
        if (!cov.h2_ok) bad.push_back(cov.h2.label);
        if (!cov.H_ok) bad.push_back(cov.H.label);
        if (bad.empty()) return std::nullopt;
        return fail_w("maps failing their relations: " + join(bad, ", "));
    }});

    defs.push_back({"C4", "projection squares commute",
                    "phi_(n-1) after psi_n equals psi_(n-1) after phi_n on every level",
                    [=, &ctx]() -> std::optional<std::string> {
        if (N < 2) return std::nullopt; // nothing stacked high enough to compare
        for (int n = 2; n <= N; ++n) {
            RingMap a = compose(ctx.phi[n - 1], ctx.psi[n]);
            RingMap b = compose(ctx.psi[n - 1], ctx.phi[n]);
            if (!ring_map_equal(a, b, budget))
                return fail_w("square at level " + std::to_string(n) + " does not commute");
        }
        return std::nullopt;
    }});

    defs.push_back({"C5", "distinguished points lie on the tower",
                    "alpha_n and beta_n lie on X_n and phi_n carries them to alpha_(n-1) and "
                    "beta_(n-1)",
                    [=, &ctx]() -> std::optional<std::string> {
        for (int n = 0; n <= N; ++n) {
            if (!point_on(ctx.X[n], ctx.alpha[n]))
                return fail_w("alpha_" + std::to_string(n) + " = " + point_str(ctx.alpha[n]) +
                              " is not on X" + std::to_string(n));
            if (!point_on(ctx.X[n], ctx.beta[n]))
                return fail_w("beta_" + std::to_string(n) + " = " + point_str(ctx.beta[n]) +
                              " is not on X" + std::to_string(n));
        }
        for (int n = 1; n <= N; ++n) {
            if (!(evaluate_morphism(ctx.phi[n], ctx.alpha[n]) == ctx.alpha[n - 1]))
                return fail_w("phi_" + std::to_string(n) + " does not send alpha_" +
                              std::to_string(n) + " to alpha_" + std::to_string(n - 1));
            if (!(evaluate_morphism(ctx.phi[n], ctx.beta[n]) == ctx.beta[n - 1]))
                return fail_w("phi_" + std::to_string(n) + " does not send beta_" +
                              std::to_string(n) + " to beta_" + std::to_string(n - 1));
        }
        return std::nullopt;
    }});

    defs.push_back({"C6", "psi swaps the distinguished points",
                    "psi_n(alpha_n) = beta_(n-1) and psi_n(beta_n) = alpha_(n-1) on every level",
                    [=, &ctx]() -> std::optional<std::string> {
        for (int n = 1; n <= N; ++n) {
            RatPoint a = evaluate_morphism(ctx.psi[n], ctx.alpha[n]);
            if (!(a == ctx.beta[n - 1]))
                return fail_w("psi_" + std::to_string(n) + "(alpha_" + std::to_string(n) +
                              ") = " + point_str(a) + " differs from beta_" +
                              std::to_string(n - 1) + " = " + point_str(ctx.beta[n - 1]));
            RatPoint b = evaluate_morphism(ctx.psi[n], ctx.beta[n]);
            if (!(b == ctx.alpha[n - 1]))
                return fail_w("psi_" + std::to_string(n) + "(beta_" + std::to_string(n) +
                              ") = " + point_str(b) + " differs from alpha_" +
                              std::to_string(n - 1) + " = " + point_str(ctx.alpha[n - 1]));
        }
        return std::nullopt;
    }});

    defs.push_back({"C7", "squeeze map is an isomorphism away from x0 = 0",
                    "rho1 becomes an isomorphism once x0 is inverted, while at x0 = 0 it crushes "
                    "(0,0,L) onto the excluded origin of X_1",
                    [=, &ctx]() -> std::optional<std::string> {
        if (!localized_iso(ctx.rho1, Poly::variable(ctx.Y[1].ambient(), "x0"),
                           {"x0", "x1", "u*y1"}, budget))
            return fail_w("rho1 is not invertible after inverting x0");
        RatPoint squeezed = evaluate_morphism(ctx.rho1, RatPoint{zero, zero, lam});
        if (!(squeezed == RatPoint{zero, zero, zero}))
            return fail_w("rho1(0,0,L) = " + point_str(squeezed) + " instead of the origin");
        if (point_on(ctx.X[1], squeezed))
            return fail_w("the origin " + point_str(squeezed) +
                          " was not excluded from X_1, so rho1 cannot be injective there");
        return std::nullopt;
    }});

    defs.push_back({"C8", "the two charts form a distinguished square over A1",
                    "p2 is the open inclusion of A1 minus the origin, p1 is etale on V1, and the "
                    "fiber of p1 over 0 consists of (0,L) and (0,-L) with exactly (0,L) retained, "
                    "mapping isomorphically",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        std::string w;
        if (!check_nisnevich(ctx, cov.V1, cov.V2, cov.p1, cov.p2, false, &w)) return fail_w(w);
        return std::nullopt;
    }});

    defs.push_back({"C9", "charts map into X_1 over A1",
                    "h1 and h2 land inside X_1, commute with the projections to A1, and the "
                    "overlap W agrees with the honest fiber product V1 x_A1 V2",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        if (!ring_map_equal(compose(ctx.psi[1], cov.h1), cov.p1, budget))
            return fail_w("psi_1 after h1 is not p1");
        if (!ring_map_equal(compose(ctx.psi[1], cov.h2), cov.p2, budget))
            return fail_w("psi_1 after h2 is not p2");
        if (!morphism_avoids_excluded(cov.h1, cov.V1, ctx.X[1], budget))
            return fail_w("h1 sends part of V1 into the excluded locus of X_1");
        if (!morphism_avoids_excluded(cov.h2, cov.V2, ctx.X[1], budget))
            return fail_w("h2 sends part of V2 into the excluded locus of X_1");
        if (!morphism_avoids_excluded(cov.H, cov.A1xW, ctx.X[1], budget))
            return fail_w("H sends part of A1 x W into the excluded locus of X_1");
        if (!cov.w_agrees) return fail_w(cov.w_witness);
        return std::nullopt;
    }});

    defs.push_back({"C10", "homotopy endpoints glue the charts at every level",
                    "H equals h1 at x0 = 1 and h2 after W -> V2 at x0 = 0; the lifted homotopies "
                    "on U x_A1 X_n satisfy the same identities and avoid the excluded loci",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        RingMap e1 = endpoint(cov.H, "x0", one);
        if (!ring_map_equal(e1, cov.h1, budget))
            return fail_w("H at x0 = 1 differs from h1");
        RingMap e0 = endpoint(cov.H, "x0", zero);
        RingMap wv2 = ring_map(cov.V2.pres, cov.W.pres, std::vector<std::string>{"x1"},
                               "W->V2");
        verify_ring_map(wv2, budget);
        if (!ring_map_equal(e0, compose(cov.h2, wv2), budget))
            return fail_w("H at x0 = 0 differs from h2 after W -> V2");

        RingMap qH = ring_map(ctx.Y[0], cov.A1xW.pres, std::vector<std::string>{"x1"}, "pH");
        verify_ring_map(qH, budget);
        for (int n = 1; n + 1 <= N; ++n) {
            std::string lv = std::to_string(n);
            Lift L1 = lift_to_level(ctx, n, cov.h1, cov.V1, cov.p1, "h1^" + lv);
            Lift L2 = lift_to_level(ctx, n, cov.h2, cov.V2, cov.p2, "h2^" + lv);
            Lift LH = lift_to_level(ctx, n, cov.H, cov.A1xW, qH, "H^" + lv);
            for (const Lift* L : {&L1, &L2, &LH}) {
                if (!L->map_ok)
                    return fail_w(L->map.label + " does not preserve relations");
                if (!L->exclusion_ok)
                    return fail_w(L->map.label + " sends part of its domain into the excluded "
                                                 "locus of X_" + std::to_string(n + 1));
            }
            RingMap E1 = endpoint(LH.map, "vx0", one);
            if (!ring_map_equal(E1, L1.map, budget))
                return fail_w("lifted homotopy at level " + lv + " differs from the h1 lift at "
                              "vx0 = 1");
            RingMap E0 = endpoint(LH.map, "vx0", zero);
            std::vector<Poly> incl;
            for (const auto& v : L2.map.target.ambient()->vars)
                incl.push_back(Poly::variable(E0.target.ambient(), v));
            RingMap into = ring_map(L2.map.target, E0.target, std::move(incl),
                                    "V2-part into W-part");
            if (!verify_ring_map(into, budget))
                return fail_w("V2-side domain does not include into the W-side domain at level " +
                              lv);
            if (!ring_map_equal(E0, compose(L2.map, into), budget))
                return fail_w("lifted homotopy at level " + lv + " differs from the h2 lift at "
                              "vx0 = 0");
        }
        return std::nullopt;
    }});

    defs.push_back({"C11", "lifted charts swap the distinguished points",
                    "h1 lifted over X_n sends ((0,L), beta_n) to alpha_(n+1) and h2 lifted sends "
                    "(1, alpha_n) to beta_(n+1)",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        if (!point_on(cov.V1, RatPoint{zero, lam}))
            return fail_w("(0,L) is not a point of V1");
        if (!(evaluate_morphism(cov.h1, RatPoint{zero, lam}) == ctx.alpha[1]))
            return fail_w("h1(0,L) is not alpha_1");
        if (!point_on(cov.V2, RatPoint{one}))
            return fail_w("1 is not a point of V2");
        if (!(evaluate_morphism(cov.h2, RatPoint{one}) == ctx.beta[1]))
            return fail_w("h2(1) is not beta_1");
        for (int n = 1; n + 1 <= N; ++n) {
            std::string lv = std::to_string(n);
            Lift L1 = lift_to_level(ctx, n, cov.h1, cov.V1, cov.p1, "h1^" + lv, false);
            Lift L2 = lift_to_level(ctx, n, cov.h2, cov.V2, cov.p2, "h2^" + lv, false);
            if (!L1.map_ok || !L2.map_ok)
                return fail_w("lifts at level " + lv + " do not preserve relations");
            RatPoint P1{zero, lam};
            for (const auto& c : ctx.beta[n]) P1.push_back(c);
            if (!point_on(L1.dom.total, P1))
                return fail_w("((0,L), beta_" + lv + ") is not on the h1 lift domain");
            RatPoint img1 = evaluate_morphism(L1.map, P1);
            if (!(img1 == ctx.alpha[n + 1]))
                return fail_w("h1 lift at level " + lv + " sends ((0,L), beta_" + lv + ") to " +
                              point_str(img1) + " instead of alpha_" + std::to_string(n + 1));
            RatPoint P2{one};
            for (const auto& c : ctx.alpha[n]) P2.push_back(c);
            if (!point_on(L2.dom.total, P2))
                return fail_w("(1, alpha_" + lv + ") is not on the h2 lift domain");
            RatPoint img2 = evaluate_morphism(L2.map, P2);
            if (!(img2 == ctx.beta[n + 1]))
                return fail_w("h2 lift at level " + lv + " sends (1, alpha_" + lv + ") to " +
                              point_str(img2) + " instead of beta_" + std::to_string(n + 1));
        }
        return std::nullopt;
    }});

    defs.push_back({"C12", "fibers of phi_n are classified by the base coordinate",
                    "the fiber of phi_n over Q is a copy of E whenever x_(n-1)(Q) is nonzero "
                    "(with an explicit isomorphism) and the punctured nonreduced line when it "
                    "vanishes",
                    [=, &ctx]() -> std::optional<std::string> {
        for (int n = 1; n <= N; ++n) {
            struct Sample { const RatPoint* Q; bool expect_E; std::string name; };
            bool alpha_E = (n - 1) == 0 || (n - 1) % 2 == 0;
            bool beta_E = (n - 1) >= 1 && (n - 1) % 2 == 1;
            std::vector<Sample> samples{
                {&ctx.alpha[n - 1], alpha_E, "alpha_" + std::to_string(n - 1)},
                {&ctx.beta[n - 1], beta_E, "beta_" + std::to_string(n - 1)}};
            for (const auto& s : samples) {
                FiberClass fc = fiber_of_phi(ctx, n, *s.Q);
                bool is_E = fc.kind == FiberKind::EllipticE;
                if (is_E != s.expect_E)
                    return fail_w("fiber of phi_" + std::to_string(n) + " over " + s.name +
                                  " has the wrong kind");
                const RingPtr& fring = fc.fiber.pres.ambient();
                if (is_E) {
                    if (!fc.iso_ok)
                        return fail_w("fiber of phi_" + std::to_string(n) + " over " + s.name +
                                      " is not witnessed isomorphic to E");
                    if (!fc.fiber.excluded.empty())
                        return fail_w("E-type fiber over " + s.name +
                                      " unexpectedly excludes a locus");
                } else {
                    Poly yn = Poly::variable(fring, yvar(n));
                    if (!ideal_equal(fc.fiber.pres.ideal, Ideal(fring, {yn * yn}), budget))
                        return fail_w("degenerate fiber over " + s.name +
                                      " is not cut out by y^2");
                    std::vector<Ideal> origin{
                        Ideal(fring, {Poly::variable(fring, xvar(n)), yn})};
                    if (!same_excluded_locus(fc.fiber.pres, fc.fiber.excluded, origin, budget))
                        return fail_w("degenerate fiber over " + s.name +
                                      " does not remove exactly the origin");
                }
            }
        }
        return std::nullopt;
    }});

    defs.push_back({"C13", "bounded-degree rigidity",
                    "no nonconstant morphism from A1 to E, to Gm, or to the punctured nonreduced "
                    "line with coordinate degree within the bound",
                    [=]() -> std::optional<std::string> {
        for (const RigidityCertificate& cert :
             {certify_E(spec, cfg.degree_bound, budget),
              certify_Gm(spec, cfg.degree_bound, budget),
              certify_nonreduced_line(spec, cfg.degree_bound, budget)}) {
            if (cert.status == RigidityStatus::FoundMap)
                return fail_w("nonconstant map to " + cert.target + " exists: " + cert.witness);
            if (cert.status == RigidityStatus::Inconclusive) {
                std::vector<std::string> notes;
                for (const auto& s : cert.slices)
                    if (!s.certified && !s.vacuous)
                        notes.push_back("degree " + std::to_string(s.x_degree) + ": " + s.note);
                return fail_w("rigidity for " + cert.target + " undecided: " +
                              join(notes, "; "));
            }
        }
        return std::nullopt;
    }});

    defs.push_back({"C14", "interval-shifted homotopies and the mirrored chart",
                    "for nonzero a the map h1^a is defined on all of V1 (and on V1~) and equals "
                    "H at x0 = a; the mirrored chart V1~ also forms a distinguished square with "
                    "the same overlap W; each ramification line lands in the image of h2 at "
                    "x0 = 0",
                    [=, &ctx, &cov]() -> std::optional<std::string> {
        for (const Rational& ar : {Rational(2), Rational(-1), Rational(1) / 2}) {
            FieldElem a(spec, ar);
            for (bool tilde : {false, true}) {
                ModifiedHomotopy mh = build_modified(ctx, cov, a, tilde);
                if (!mh.map_ok)
                    return fail_w(mh.map.label + " does not preserve relations");
                if (!mh.exclusion_ok)
                    return fail_w(mh.map.label + " sends part of " + mh.domain.label +
                                  " into the excluded locus of X_1");
                if (!tilde && !ring_map_equal(endpoint(cov.H, "x0", a), mh.map, budget))
                    return fail_w("H at x0 = " + a.str() + " differs from " + mh.map.label);
            }
        }
        bool zero_rejected = false;
        try {
            build_modified(ctx, cov, zero, false);
        } catch (const ZeroParameter&) {
            zero_rejected = true;
        }
        if (!zero_rejected) return fail_w("interval value 0 was accepted for h1^a");

        std::string w;
        if (!check_nisnevich(ctx, cov.V1tilde, cov.V2, cov.p1, cov.p2, true, &w))
            return fail_w("mirrored chart: " + w);
        if (!w_description_agrees(ctx, cov.V1tilde, cov.V2, cov.p1, cov.p2, cov.W, &w))
            return fail_w("mirrored chart: " + w);

        const RingPtr& a1ring = ctx.Y[0].ambient();
        for (const Rational& lr : {spec->lambda1, spec->lambda2, spec->lambda3}) {
            Poly li = Poly::constant(a1ring, FieldElem(spec, lr));
            RingMap line = ring_map(ctx.A1xE, ctx.Y[0],
                                    std::vector<Poly>{Poly::variable(a1ring, "x0"), li,
                                                      Poly::zero(a1ring)},
                                    "line through (" + lr.str() + ",0)");
            if (!verify_ring_map(line, budget))
                return fail_w(line.label + " does not land on A1 x E");
            RingMap down = compose(ctx.rho1, line);
            if (!verify_ring_map(down, budget))
                return fail_w("rho1 composed with " + line.label + " fails its relations");
            if (!morphism_avoids_excluded(down, ctx.X[0], ctx.X[1], budget))
                return fail_w("rho1 composed with " + line.label + " meets the excluded locus");
            RatPoint at0 = evaluate_morphism(down, RatPoint{zero});
            FieldElem lc(spec, lr);
            if (!point_on(cov.V2, RatPoint{lc}))
                return fail_w("ramification coordinate " + lr.str() + " is not a point of V2");
            if (!(evaluate_morphism(cov.h2, RatPoint{lc}) == at0))
                return fail_w("endpoint " + point_str(at0) + " of " + line.label +
                              " is not h2(" + lr.str() + ")");
        }
        return std::nullopt;
    }});

    return defs;
}

} // namespace detail

inline Report run_verification(const VerifierConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("tower height must be at least 1");
    if (cfg.degree_bound < 1) throw ConfigError("degree bound must be at least 1");
    FaultSet faults = parse_fault_set(cfg.faults);
    FieldSpecPtr spec;
    try {
        spec = faults.repeat_lambda
                   ? make_field_unchecked(cfg.lambdas[0], cfg.lambdas[0], cfg.lambdas[2])
                   : make_field(cfg.lambdas[0], cfg.lambdas[1], cfg.lambdas[2]);
    } catch (const DegenerateParameters& e) {
        throw ConfigError(e.what()); // bad lambdas are a config problem here
    }
    TowerContext ctx = build_tower(spec, cfg.n, faults);
    CoverDatum cov = build_cover(ctx);

    std::vector<detail::CheckDef> defs = detail::make_checks(cfg, spec, ctx, cov);
    auto selected = [&](const std::string& id) {
        if (cfg.selected.empty()) return true;
        for (const auto& s : cfg.selected)
            if (s == id) return true;
        return false;
    };
    for (const auto& s : cfg.selected) {
        bool known = false;
        for (const auto& d : defs)
            if (d.id == s) known = true;
        if (!known) throw ConfigError("unknown check id: " + s);
    }

    Report rep;
    rep.config = cfg;
    for (const auto& def : defs) {
        CheckResult r;
        r.id = def.id;
        r.title = def.title;
        r.claim = def.claim;
        if (!selected(def.id)) {
            r.status = CheckStatus::Skipped;
            r.witness = "not selected";
            ++rep.n_skipped;
            rep.checks.push_back(std::move(r));
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        try {
            std::optional<std::string> w = def.body();
            if (w) {
                r.status = CheckStatus::Fail;
                r.witness = *w;
            } else {
                r.status = CheckStatus::Pass;
            }
        } catch (const BudgetExceeded& e) {
            r.status = CheckStatus::Budget;
            r.witness = e.what();
        } catch (const std::exception& e) {
            r.status = CheckStatus::Fail;
            r.witness = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        switch (r.status) {
            case CheckStatus::Pass: ++rep.n_pass; break;
            case CheckStatus::Fail: ++rep.n_fail; break;
            case CheckStatus::Budget: ++rep.n_budget; break;
            default: ++rep.n_skipped; break;
        }
        rep.checks.push_back(std::move(r));
    }
    rep.ok = rep.n_fail == 0 && rep.n_budget == 0 &&
             (cfg.selected.empty() ? rep.n_skipped == 0 : true);
    return rep;
}

inline ordered_json report_to_json(const Report& rep) {
    ordered_json j;
    j["schema"] = "towercert-report/1";
    ordered_json cfg;
    cfg["n"] = rep.config.n;
    cfg["lambdas"] = {rep.config.lambdas[0].str(), rep.config.lambdas[1].str(),
                      rep.config.lambdas[2].str()};
    cfg["degree_bound"] = rep.config.degree_bound;
    cfg["budget"] = rep.config.budget ? *rep.config.budget : budget_default().load();
    cfg["faults"] = rep.config.faults;
    if (rep.config.selected.empty()) cfg["checks"] = "all";
    else cfg["checks"] = rep.config.selected;
    j["config"] = std::move(cfg);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json e;
        e["id"] = c.id;
        e["title"] = c.title;
        e["claim"] = c.claim;
        e["status"] = status_str(c.status);
        e["witness"] = c.witness;
        e["wall_ms"] = c.wall_ms;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    ordered_json sum;
    sum["pass"] = rep.n_pass;
    sum["fail"] = rep.n_fail;
    sum["skipped"] = rep.n_skipped;
    sum["budget"] = rep.n_budget;
    sum["ok"] = rep.ok;
    j["summary"] = std::move(sum);
    return j;
}

inline std::string report_to_markdown(const Report& rep) {
    std::string md = "# Tower verification report\n\n";
    md += "lambdas = (" + rep.config.lambdas[0].str() + ", " + rep.config.lambdas[1].str() +
          ", " + rep.config.lambdas[2].str() + "), height N = " + std::to_string(rep.config.n) +
          ", degree bound d = " + std::to_string(rep.config.degree_bound) + "\n\n";
    if (!rep.config.faults.empty())
        md += "injected faults: " + detail::join(rep.config.faults, ", ") + "\n\n";
    md += "| check | title | status | witness |\n|---|---|---|---|\n";
    for (const auto& c : rep.checks)
        md += "| " + c.id + " | " + c.title + " | " + status_str(c.status) + " | " +
              (c.witness.empty() ? " " : c.witness) + " |\n";
    md += "\n" + std::to_string(rep.n_pass) + " passed, " + std::to_string(rep.n_fail) +
          " failed, " + std::to_string(rep.n_skipped) + " skipped, " +
          std::to_string(rep.n_budget) + " budget-limited.\n";
    return md;
}

} // namespace towercert
