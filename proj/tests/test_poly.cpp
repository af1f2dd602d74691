#include <catch2/catch_amalgamated.hpp>

#include "support/random_gen.hpp"
#include "towercert/poly_parse.hpp"

using namespace towercert;
using testsupport::Rng;

namespace {
FieldSpecPtr spec123() {
    static FieldSpecPtr s = make_field(1, 2, 3);
    return s;
}
} // namespace

TEST_CASE("ring construction rejects bad variable sets") {
    auto spec = spec123();
    REQUIRE_NOTHROW(make_ring({"x", "y"}, spec));
    REQUIRE_THROWS_AS(make_ring({"x", "x"}, spec), ConfigError);
    REQUIRE_THROWS_AS(make_ring({"L"}, spec), ConfigError);   // reserved for lambda
    REQUIRE_THROWS_AS(make_ring({"2ab"}, spec), ConfigError); // not an identifier
    REQUIRE_THROWS_AS(make_ring({""}, spec), ConfigError);
}

TEST_CASE("ring axioms hold on random polynomials") {
    auto ring = make_ring({"x", "y", "z"}, spec123());
    Rng rng(424242);
    for (int i = 0; i < 60; ++i) {
        Poly p = rng.poly(ring, 4, 3), q = rng.poly(ring, 4, 3), r = rng.poly(ring, 3, 2);
        REQUIRE(p + q == q + p);
        REQUIRE(p * q == q * p);
        REQUIRE((p + q) * r == p * r + q * r);
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p - p == Poly::zero(ring));
        REQUIRE(p * Poly::zero(ring) == Poly::zero(ring));
    }
}

TEST_CASE("degrees and leading data") {
    auto ring = make_ring({"x", "y"}, spec123());
    Poly p = parse_poly("x^2*y - 3*y^4 + 1/2", ring);
    REQUIRE(p.degree() == 4);
    REQUIRE(p.degree_in("x") == 2);
    REQUIRE(p.degree_in("y") == 4);
    REQUIRE(Poly::zero(ring).degree() == -1);
    // grevlex: y^4 outranks x^2 y by total degree
    REQUIRE(p.leading_monomial() == Monomial{0, 4});
    REQUIRE(p.leading_coeff() == FieldElem(spec123(), -3));
}

TEST_CASE("evaluation agrees with constant substitution") {
    auto ring = make_ring({"x", "y"}, spec123());
    Rng rng(777);
    for (int i = 0; i < 40; ++i) {
        Poly p = rng.poly(ring, 5, 4);
        FieldElem ax = rng.field_elem(ring->spec), ay = rng.field_elem(ring->spec);
        std::vector<Poly> consts{Poly::constant(ring, ax), Poly::constant(ring, ay)};
        Poly subbed = p.substitute(ring, consts);
        REQUIRE(subbed.is_constant());
        FieldElem direct = p.evaluate({ax, ay});
        if (subbed.is_zero()) REQUIRE(direct.is_zero());
        else REQUIRE(subbed.leading_coeff() == direct);
    }
}

TEST_CASE("substitution round-trips through a shift") {
    auto ring = make_ring({"x", "y"}, spec123());
    Poly x = Poly::variable(ring, "x"), y = Poly::variable(ring, "y");
    Poly one = Poly::constant(ring, Rational(1));
    Rng rng(31337);
    for (int i = 0; i < 30; ++i) {
        Poly p = rng.poly(ring, 5, 4);
        Poly shifted = p.substitute(ring, {x + one, y});
        REQUIRE(shifted.substitute(ring, {x - one, y}) == p);
    }
}

TEST_CASE("derivative satisfies the product rule") {
    auto ring = make_ring({"x", "y"}, spec123());
    Rng rng(5150);
    for (int i = 0; i < 40; ++i) {
        Poly p = rng.poly(ring, 4, 3), q = rng.poly(ring, 4, 3);
        REQUIRE((p * q).derivative("x") ==
                p.derivative("x") * q + p * q.derivative("x"));
    }
    REQUIRE(parse_poly("x^3", ring).derivative("x") == parse_poly("3*x^2", ring));
    REQUIRE(parse_poly("y^2 + 7", ring).derivative("x") == Poly::zero(ring));
}

TEST_CASE("printer and parser are mutually inverse") {
    auto ring = make_ring({"x", "y", "z"}, spec123());
    Rng rng(99991);
    for (int i = 0; i < 100; ++i) {
        Poly p = rng.poly(ring, 6, 4);
        REQUIRE(parse_poly(p.str(), ring) == p);
    }
    REQUIRE(Poly::zero(ring).str() == "0");
}

TEST_CASE("parser handles the usual shapes") {
    auto ring = make_ring({"x", "y"}, spec123());
    Poly x = Poly::variable(ring, "x"), y = Poly::variable(ring, "y");
    REQUIRE(parse_poly("(x+y)^2", ring) == (x + y) * (x + y));
    REQUIRE(parse_poly("x^2 - 2*x*y + y^2", ring) == (x - y) * (x - y));
    REQUIRE(parse_poly("L*x - 1/2", ring) ==
            Poly::lambda(ring) * x - Poly::constant(ring, Rational(1) / 2));
    REQUIRE(parse_poly("-x", ring) == -x);
    REQUIRE(parse_poly("3", ring) == Poly::constant(ring, Rational(3)));
    REQUIRE_THROWS_AS(parse_poly("x^", ring), SyntaxError);
    REQUIRE_THROWS_AS(parse_poly("(x", ring), SyntaxError);
    REQUIRE_THROWS_AS(parse_poly("x + * y", ring), SyntaxError);
    REQUIRE_THROWS_AS(parse_poly("w + 1", ring), UnknownVariable);
}

TEST_CASE("transport between rings, with renames") {
    auto small = make_ring({"a", "b"}, spec123());
    auto big = make_ring({"u", "a", "b2"}, spec123());
    Poly p = parse_poly("a^2 - 3*b + 1", small);
    Poly moved = p.transport(big, {{"b", "b2"}});
    REQUIRE(moved == parse_poly("a^2 - 3*b2 + 1", big));
    REQUIRE_THROWS_AS(p.transport(big), UnknownVariable); // b has no slot without rename
    auto other = make_ring({"a", "b"}, make_field(2, 3, 5));
    REQUIRE_THROWS_AS(p.transport(other), MixedFieldSpecs);
}

TEST_CASE("cross-ring arithmetic is rejected") {
    auto r1 = make_ring({"x"}, spec123());
    auto r2 = make_ring({"y"}, spec123());
    REQUIRE_THROWS_AS(Poly::variable(r1, "x") + Poly::variable(r2, "y"), RingMismatch);
}

TEST_CASE("the curve polynomial vanishes exactly at the branch parameters") {
    auto spec = spec123();
    auto ring = make_ring({"x"}, spec);
    Poly f = build_f(ring, "x");
    REQUIRE(f.degree() == 3);
    for (const Rational& l : {spec->lambda1, spec->lambda2, spec->lambda3})
        REQUIRE(f.evaluate({FieldElem(spec, l)}).is_zero());
    REQUIRE_FALSE(f.evaluate({FieldElem(spec, 7)}).is_zero());
    // f(0) = -l1*l2*l3 = disc
    REQUIRE(f.evaluate({FieldElem::zero(spec)}) == FieldElem(spec, spec->disc));
}

TEST_CASE("monomial orders rank as specified") {
    auto spec = spec123();
    auto grev = make_ring({"x", "y"}, spec);
    auto lex = make_ring({"x", "y"}, spec, MonomialOrder::lex());
    auto block = make_ring({"x", "y"}, spec, MonomialOrder::block(1));

    Poly g = parse_poly("x + y^2", grev);
    REQUIRE(g.leading_monomial() == Monomial{0, 2}); // degree first
    Poly l = parse_poly("x + y^2", lex);
    REQUIRE(l.leading_monomial() == Monomial{1, 0}); // x block dominates
    Poly b = parse_poly("x + y^2", block);
    REQUIRE(b.leading_monomial() == Monomial{1, 0}); // elimination order

    auto weighted = make_ring({"x", "y"}, spec, MonomialOrder::weighted({{"y", 3}}));
    REQUIRE(parse_poly("y^2 + x^5", weighted).leading_monomial() == Monomial{0, 2});
    REQUIRE(parse_poly("y^2 + x^7", weighted).leading_monomial() == Monomial{7, 0});
}

TEST_CASE("trivial weightings demote to plain grevlex") {
    auto spec = spec123();
    auto w1 = make_ring({"x", "y"}, spec, MonomialOrder::weighted({{"z", 3}}));
    auto plain = make_ring({"x", "y"}, spec);
    REQUIRE(same_ring(w1, plain)); // z is absent, so the weighting is trivial
    auto w2 = make_ring({"x", "y"}, spec, MonomialOrder::weighted({{"y", 3}}));
    REQUIRE_FALSE(same_ring(w2, plain));
}

TEST_CASE("every order is a multiplicative total order with 1 minimal") {
    auto spec = spec123();
    std::vector<MonomialOrder> orders{MonomialOrder::grevlex(), MonomialOrder::lex(),
                                      MonomialOrder::block(1),
                                      MonomialOrder::weighted({{"y", 3}})};
    for (const auto& ord : orders) {
        auto ring = make_ring({"x", "y", "z"}, spec, ord);
        Rng rng(1234);
        Monomial one(3, 0);
        for (int i = 0; i < 120; ++i) {
            Monomial a = rng.monomial(3, 4), b = rng.monomial(3, 4), c = rng.monomial(3, 3);
            const MonomialOrder& o = ring->order;
            if (a != one) REQUIRE(o.greater(a, one));
            int ab = o.cmp(a, b);
            REQUIRE(ab == -o.cmp(b, a));
            if (a == b) REQUIRE(ab == 0);
            if (ab != 0) REQUIRE(o.cmp(mono_mul(a, c), mono_mul(b, c)) == ab);
        }
    }
}

TEST_CASE("univariate gcd") {
    auto ring = make_ring({"x", "y"}, spec123());
    Poly a = parse_poly("x^2 - 1", ring), b = parse_poly("x^2 - 2*x + 1", ring);
    Poly g = univariate_gcd(a, b, "x");
    REQUIRE(g.monic() == parse_poly("x - 1", ring));
    REQUIRE_THROWS_AS(univariate_gcd(a, parse_poly("x*y", ring), "x"), Error);
}
