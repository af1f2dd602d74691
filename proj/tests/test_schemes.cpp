#include <catch2/catch_amalgamated.hpp>

#include "towercert/schemes.hpp"

using namespace towercert;

namespace {
FieldSpecPtr spec123() {
    static FieldSpecPtr s = make_field(1, 2, 3);
    return s;
}

// affine line K[t] and the parabola K[x,y]/(y - x^2), used throughout
struct Fixture {
    RingPtr rt = make_ring({"t"}, spec123());
    RingPtr rxy = make_ring({"x", "y"}, spec123());
    PresentedRing A1 = presented_ring(rt, {}, "A1");
    PresentedRing P = presented_ring(rxy, {parse_poly("y - x^2", rxy)}, "P");
};
} // namespace

TEST_CASE("map verification checks every relation") {
    Fixture fx;
    // P -> A1 as rings, i.e. the morphism A1 -> P, t |-> (t, t^2)
    RingMap good = ring_map(fx.P, fx.A1, {"t", "t^2"}, "param");
    REQUIRE_FALSE(good.verified);
    REQUIRE(verify_ring_map(good));
    REQUIRE(good.verified);

    RingMap bad = ring_map(fx.P, fx.A1, {"t", "t^3"}, "broken");
    REQUIRE_FALSE(verify_ring_map(bad));
    REQUIRE_FALSE(bad.verified);

    REQUIRE_NOTHROW(verified_ring_map(fx.P, fx.A1, {"t", "t^2"}));
    REQUIRE_THROWS_AS(verified_ring_map(fx.P, fx.A1, {"t", "t^3"}), Error);
}

TEST_CASE("malformed maps are rejected at construction") {
    Fixture fx;
    REQUIRE_THROWS_AS(ring_map(fx.P, fx.A1, {"t"}), ArityMismatch);
    std::vector<Poly> wrong_ring{parse_poly("x", fx.rxy), parse_poly("y", fx.rxy)};
    REQUIRE_THROWS_AS(ring_map(fx.P, fx.A1, wrong_ring), RingMismatch);
    REQUIRE_THROWS_AS(map_apply(ring_map(fx.A1, fx.P, {"x"}), parse_poly("x", fx.rxy)),
                      RingMismatch);
}

TEST_CASE("composition chains images and demands a shared middle") {
    Fixture fx;
    RingMap f = verified_ring_map(fx.P, fx.A1, {"t", "t^2"}, "f");
    RingPtr rs = make_ring({"s"}, spec123());
    PresentedRing B1 = presented_ring(rs, {}, "B1");
    RingMap g = verified_ring_map(fx.A1, B1, {"s + 1"}, "g");
    RingMap h = compose(f, g);
    REQUIRE(h.verified);
    REQUIRE(h.images[0] == parse_poly("s + 1", rs));
    REQUIRE(h.images[1] == parse_poly("(s + 1)^2", rs));
    REQUIRE(same_presentation(h.source, fx.P));
    REQUIRE(same_presentation(h.target, B1));

    RingMap wrong_middle = verified_ring_map(fx.P, B1, {"s", "s^2"});
    REQUIRE_THROWS_AS(compose(f, wrong_middle), RingMismatch);
}

TEST_CASE("map equality is computed modulo the target ideal") {
    Fixture fx;
    PresentedRing S = presented_ring(make_ring({"a"}, spec123()), {}, "S");
    RingMap m1 = ring_map(S, fx.P, {"x^2"});
    RingMap m2 = ring_map(S, fx.P, {"y"});
    RingMap m3 = ring_map(S, fx.P, {"x"});
    REQUIRE(ring_map_equal(m1, m2)); // x^2 == y on the parabola
    REQUIRE_FALSE(ring_map_equal(m1, m3));
}

TEST_CASE("morphisms evaluate on rational points") {
    Fixture fx;
    RingMap param = ring_map(fx.P, fx.A1, {"t", "t^2"});
    REQUIRE_THROWS_AS(evaluate_morphism(param, {FieldElem(spec123(), 2)}), Error);
    verify_ring_map(param);
    RatPoint image = evaluate_morphism(param, {FieldElem(spec123(), 2)});
    REQUIRE(image == RatPoint{FieldElem(spec123(), 2), FieldElem(spec123(), 4)});

    RingMap proj = verified_ring_map(fx.A1, fx.P, {"x"});
    REQUIRE(evaluate_morphism(proj, {FieldElem(spec123(), 2), FieldElem(spec123(), 4)}) ==
            RatPoint{FieldElem(spec123(), 2)});
    REQUIRE_THROWS_AS(evaluate_morphism(proj, {FieldElem(spec123(), 2), FieldElem(spec123(), 5)}),
                      PointNotOnVariety);
}

TEST_CASE("the parabola is isomorphic to the line, and not via the wrong maps") {
    Fixture fx;
    RingMap f = ring_map(fx.P, fx.A1, {"t", "t^2"});
    RingMap g = ring_map(fx.A1, fx.P, {"x"});
    REQUIRE(check_iso(f, g));
    REQUIRE(f.verified);
    REQUIRE(g.verified);

    RingMap g_bad = ring_map(fx.A1, fx.P, {"y"});
    RingMap f2 = ring_map(fx.P, fx.A1, {"t", "t^2"});
    REQUIRE_FALSE(check_iso(f2, g_bad));
}

TEST_CASE("points respect both relations and excluded loci") {
    Fixture fx;
    QuasiAffine X = quasi_affine(
        fx.P, {Ideal(fx.rxy, {parse_poly("x", fx.rxy), parse_poly("y", fx.rxy)})}, "P minus 0");
    auto pt = [&](int a, int b) {
        return RatPoint{FieldElem(spec123(), a), FieldElem(spec123(), b)};
    };
    REQUIRE(point_on(X, pt(1, 1)));
    REQUIRE_FALSE(point_on(X, pt(0, 0))); // excluded
    REQUIRE_FALSE(point_on(X, pt(1, 2))); // off the parabola
    REQUIRE_THROWS_AS(point_on(X, {FieldElem(spec123(), 1)}), ArityMismatch);

    REQUIRE_THROWS_AS(
        quasi_affine(fx.P, {Ideal(fx.rt, {parse_poly("t", fx.rt)})}, "mismatched"),
        RingMismatch);
}

TEST_CASE("pullback takes generators only, products multiply out") {
    Fixture fx;
    RingMap proj = verified_ring_map(fx.A1, fx.P, {"x"});
    Ideal pb = pullback_ideal(proj, Ideal(fx.rt, {parse_poly("t - 1", fx.rt)}));
    REQUIRE(pb.gens().size() == 1);
    REQUIRE(pb.gens()[0] == parse_poly("x - 1", fx.rxy));

    REQUIRE(is_unit_ideal(product_ideal(fx.rxy, {})));
    Ideal two = product_ideal(
        fx.rxy, {Ideal(fx.rxy, {parse_poly("x", fx.rxy), parse_poly("y", fx.rxy)}),
                 Ideal(fx.rxy, {parse_poly("x - 1", fx.rxy)})});
    REQUIRE(two.gens().size() == 2);
    REQUIRE(ideal_member(parse_poly("x^2 - x", fx.rxy), two));
}

TEST_CASE("presentations compare by ring and generator list") {
    Fixture fx;
    PresentedRing p2 = presented_ring(make_ring({"x", "y"}, spec123()),
                                      {parse_poly("y - x^2", fx.rxy).transport(
                                          make_ring({"x", "y"}, spec123()))},
                                      "other label");
    REQUIRE(same_presentation(fx.P, p2)); // labels and ring identity do not matter
    PresentedRing p3 = presented_ring(fx.rxy, {parse_poly("y + x^2", fx.rxy)}, "P");
    REQUIRE_FALSE(same_presentation(fx.P, p3));
    REQUIRE_FALSE(same_presentation(fx.P, fx.A1));
}

TEST_CASE("covering tests are exact") {
    auto ring = make_ring({"x", "y"}, spec123());
    auto I = [&](const std::string& e) { return Ideal(ring, {parse_poly(e, ring)}); };
    REQUIRE(detail::variety_covered_by(I("x*y"), {I("x"), I("y")}, {}));
    REQUIRE_FALSE(detail::variety_covered_by(I("x + y"), {I("x")}, {}));
    REQUIRE(detail::variety_covered_by(I("x"), {I("x*y")}, {})); // V(x) inside V(xy)
    Ideal unit(ring, {Poly::constant(ring, Rational(1))});
    REQUIRE(detail::variety_covered_by(unit, {}, {})); // empty variety, empty union
}

TEST_CASE("exclusion-avoidance tiers agree with the product-ideal reference") {
    auto spec = spec123();
    RingPtr rab = make_ring({"a", "b"}, spec);
    RingPtr rxy = make_ring({"x", "y"}, spec);
    RingPtr rt = make_ring({"t"}, spec);
    PresentedRing Ypres = presented_ring(rab, {}, "Y");
    PresentedRing Xpres = presented_ring(rxy, {}, "X");
    PresentedRing Tpres = presented_ring(rt, {}, "T");
    auto ix = [&](const std::string& e) { return Ideal(rxy, {parse_poly(e, rxy)}); };

    SECTION("single excluded ideal, direct membership tier") {
        QuasiAffine Y = quasi_affine(Ypres, {Ideal(rab, {parse_poly("a", rab)})}, "Y-V(a)");
        QuasiAffine X = quasi_affine(Xpres, {ix("y")}, "X-V(y)");
        RingMap swap = ring_map(Ypres, Xpres, {"y", "x"});
        verify_ring_map(swap);
        REQUIRE(morphism_avoids_excluded(swap, X, Y));
        REQUIRE(morphism_avoids_excluded_by_products(swap, X, Y));
        RingMap keep = verified_ring_map(Ypres, Xpres, {"x", "y"});
        REQUIRE_FALSE(morphism_avoids_excluded(keep, X, Y));
        REQUIRE_FALSE(morphism_avoids_excluded_by_products(keep, X, Y));
    }

    SECTION("two excluded ideals need the pairwise union tier") {
        QuasiAffine T = quasi_affine(Tpres, {Ideal(rt, {parse_poly("t", rt)})}, "Gm");
        QuasiAffine X = quasi_affine(Xpres, {ix("x"), ix("y")}, "X-axes");
        RingMap mult = verified_ring_map(Tpres, Xpres, {"x*y"});
        REQUIRE(morphism_avoids_excluded(mult, X, T));
        REQUIRE(morphism_avoids_excluded_by_products(mult, X, T));
        RingMap sum = verified_ring_map(Tpres, Xpres, {"x + y"});
        REQUIRE_FALSE(morphism_avoids_excluded(sum, X, T)); // (1,-1) maps to 0
        REQUIRE_FALSE(morphism_avoids_excluded_by_products(sum, X, T));
    }

    SECTION("three excluded ideals fall through to the full union") {
        QuasiAffine T = quasi_affine(Tpres, {Ideal(rt, {parse_poly("t", rt)})}, "Gm");
        QuasiAffine X = quasi_affine(Xpres, {ix("x"), ix("y"), ix("x - y")}, "X-3lines");
        RingMap triple = verified_ring_map(Tpres, Xpres, {"x*y*(x - y)"});
        REQUIRE(morphism_avoids_excluded(triple, X, T));
        REQUIRE(morphism_avoids_excluded_by_products(triple, X, T));
        RingMap pair_only = verified_ring_map(Tpres, Xpres, {"x*y"});
        REQUIRE(morphism_avoids_excluded(pair_only, X, T)); // smaller union still works
        RingMap off = verified_ring_map(Tpres, Xpres, {"x + y - 1"});
        REQUIRE_FALSE(morphism_avoids_excluded(off, X, T));
        REQUIRE_FALSE(morphism_avoids_excluded_by_products(off, X, T));
    }
}

TEST_CASE("excluded loci compare as point sets modulo the presentation") {
    Fixture fx;
    auto ix = [&](const std::string& e) { return Ideal(fx.rxy, {parse_poly(e, fx.rxy)}); };
    Ideal origin(fx.rxy, {parse_poly("x", fx.rxy), parse_poly("y", fx.rxy)});
    Ideal thick(fx.rxy, {parse_poly("x^2", fx.rxy), parse_poly("y", fx.rxy)});
    PresentedRing plane = presented_ring(fx.rxy, {}, "A2");
    REQUIRE(same_excluded_locus(plane, {origin}, {thick}));
    REQUIRE_FALSE(same_excluded_locus(plane, {origin}, {ix("x")}));
    // on the parabola, V(x) and V(y) cut the same single point
    REQUIRE(same_excluded_locus(fx.P, {ix("x")}, {ix("y")}));
    REQUIRE_FALSE(same_excluded_locus(plane, {ix("x")}, {ix("y")}));
}

TEST_CASE("fiber products glue two factors over a base") {
    Fixture fx;
    auto spec = spec123();
    QuasiAffine A = quasi_affine(fx.A1, {Ideal(fx.rt, {parse_poly("t", fx.rt)})}, "A");
    QuasiAffine B = quasi_affine(fx.A1, {Ideal(fx.rt, {parse_poly("t - 1", fx.rt)})}, "B");
    RingMap id1 = verified_ring_map(fx.A1, fx.A1, {"t"});

    SECTION("name collisions get suffixed") {
        FiberProduct fp = fiber_product(A, B, fx.A1, id1, id1, "AxB");
        REQUIRE(fp.total.pres.vars() == std::vector<std::string>{"t", "t_b"});
        REQUIRE(fp.rename_second.at("t") == "t_b");
        const auto& gens = fp.total.pres.ideal.gens();
        REQUIRE(gens.size() == 1); // both factor ideals are zero; one gluing relation
        RingPtr amb = fp.total.pres.ambient();
        REQUIRE(gens[0] == parse_poly("t - t_b", amb));
        REQUIRE(fp.to_first.verified);
        REQUIRE(fp.to_second.verified);
        REQUIRE(fp.to_first.images[0] == parse_poly("t", amb));
        REQUIRE(fp.to_second.images[0] == parse_poly("t_b", amb));
        REQUIRE(fp.total.excluded.size() == 2);
        auto pt = [&](int a, int b) {
            return RatPoint{FieldElem(spec, a), FieldElem(spec, b)};
        };
        REQUIRE(point_on(fp.total, pt(2, 2)));
        REQUIRE_FALSE(point_on(fp.total, pt(0, 0))); // A excludes t = 0
        REQUIRE_FALSE(point_on(fp.total, pt(1, 1))); // B excludes t = 1
        REQUIRE_FALSE(point_on(fp.total, pt(2, 3))); // off the diagonal
    }

    SECTION("explicit renames are honored") {
        FiberProduct fp = fiber_product(A, B, fx.A1, id1, id1, "AxB", {{"t", "l"}},
                                        {{"t", "r"}});
        REQUIRE(fp.total.pres.vars() == std::vector<std::string>{"l", "r"});
        REQUIRE(fp.total.pres.ideal.gens()[0] ==
                parse_poly("l - r", fp.total.pres.ambient()));
    }

    SECTION("legs must share the base presentation") {
        PresentedRing other = presented_ring(make_ring({"s"}, spec), {}, "other");
        RingMap odd = verified_ring_map(other, fx.A1, {"t"});
        REQUIRE_THROWS_AS(fiber_product(A, B, other, odd, id1, "bad"), RingMismatch);
    }
}

TEST_CASE("localization adjoins an inverse") {
    Fixture fx;
    Localization loc = localize(fx.P, parse_poly("x", fx.rxy));
    REQUIRE(loc.unit_var == "u");
    REQUIRE(loc.pres.vars() == std::vector<std::string>{"x", "y", "u"});
    RingPtr amb = loc.pres.ambient();
    REQUIRE(loc.pres.ideal.gens().size() == 2);
    REQUIRE(loc.pres.ideal.gens()[1] == parse_poly("1 - u*x", amb));
    // y is invertible too on the localized parabola: y * (u^2) == 1 mod ideal
    REQUIRE(ideal_member(parse_poly("y*u^2 - 1", amb), loc.pres.ideal));

    Localization again = localize(loc.pres, parse_poly("y", amb));
    REQUIRE(again.unit_var == "u_2"); // fresh name past the existing one
}

TEST_CASE("localized isomorphism testing") {
    Fixture fx;
    SECTION("a global iso stays one after inverting x") {
        RingMap f = verified_ring_map(fx.P, fx.A1, {"t", "t^2"});
        REQUIRE(localized_iso(f, parse_poly("x", fx.rxy), {"x"}));
        REQUIRE_FALSE(localized_iso(f, parse_poly("x", fx.rxy), {"y"})); // wrong inverse
    }
    SECTION("the squaring map is not invertible away from zero") {
        PresentedRing src = presented_ring(make_ring({"t"}, spec123()), {}, "line");
        RingPtr rs = make_ring({"s"}, spec123());
        PresentedRing dst = presented_ring(rs, {}, "line2");
        RingMap sq = verified_ring_map(src, dst, {"s^2"});
        REQUIRE_FALSE(localized_iso(sq, parse_poly("t", src.ambient()), {"t"}));
    }
    SECTION("arity of the inverse data is checked") {
        RingMap f = verified_ring_map(fx.P, fx.A1, {"t", "t^2"});
        REQUIRE_THROWS_AS(localized_iso(f, parse_poly("x", fx.rxy),
                                        std::vector<std::string>{}),
                          ArityMismatch);
    }
}
