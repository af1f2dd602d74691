#include <catch2/catch_amalgamated.hpp>

#include "support/random_gen.hpp"
#include "towercert/field.hpp"

using namespace towercert;
using testsupport::Rng;

TEST_CASE("field construction validates parameters") {
    REQUIRE_NOTHROW(make_field(1, 2, 3));
    REQUIRE_THROWS_AS(make_field(0, 2, 3), DegenerateParameters);
    REQUIRE_THROWS_AS(make_field(1, 0, 3), DegenerateParameters);
    REQUIRE_THROWS_AS(make_field(1, 2, 0), DegenerateParameters);
    REQUIRE_THROWS_AS(make_field(1, 1, 3), DegenerateParameters);
    REQUIRE_THROWS_AS(make_field(2, 3, 2), DegenerateParameters);
    REQUIRE_THROWS_AS(make_field(1, 3, 3), DegenerateParameters);
    REQUIRE_NOTHROW(make_field_unchecked(1, 1, 3)); // deliberate-break path
}

TEST_CASE("discriminant and the defining relation of lambda") {
    auto spec = make_field(1, 2, 3);
    REQUIRE(spec->disc == Rational(-6));
    REQUIRE_FALSE(spec->is_square);
    FieldElem lam = FieldElem::lambda(spec);
    REQUIRE(lam * lam == FieldElem(spec, spec->disc));
    REQUIRE_FALSE(lam.is_rational());
}

TEST_CASE("square discriminant folds K down to Q") {
    auto spec = make_field(-1, 2, Rational(1) / 2); // disc = 1
    REQUIRE(spec->is_square);
    REQUIRE(spec->sqrt_disc.has_value());
    REQUIRE(*spec->sqrt_disc == 1);
    FieldElem lam = FieldElem::lambda(spec);
    REQUIRE(lam.is_rational());
    REQUIRE(lam == FieldElem::one(spec));
    // arithmetic stays consistent with the fold
    FieldElem z(spec, 2, 3); // 2 + 3L = 5
    REQUIRE(z.rat_part() == Rational(5));
    REQUIRE(z.lambda_part() == 0);
}

TEST_CASE("field axioms hold on random elements") {
    auto spec = make_field(1, 2, 3);
    Rng rng(20240811);
    for (int i = 0; i < 200; ++i) {
        FieldElem a = rng.field_elem(spec), b = rng.field_elem(spec),
                  c = rng.field_elem(spec);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + FieldElem::zero(spec) == a);
        REQUIRE(a * FieldElem::one(spec) == a);
        REQUIRE(a - a == FieldElem::zero(spec));
    }
}

TEST_CASE("inverses via the norm") {
    auto spec = make_field(1, 2, 3);
    Rng rng(987654);
    for (int i = 0; i < 100; ++i) {
        FieldElem a = rng.nonzero_field_elem(spec);
        REQUIRE(a * a.inverse() == FieldElem::one(spec));
        FieldElem b = rng.nonzero_field_elem(spec);
        REQUIRE((a / b) * b == a);
        REQUIRE((a * b).norm() == a.norm() * b.norm());
    }
    REQUIRE_THROWS_AS(FieldElem::zero(spec).inverse(), DivisionByZero);
    REQUIRE_THROWS_AS(FieldElem::one(spec) / FieldElem::zero(spec), DivisionByZero);
}

TEST_CASE("elements from different specs do not mix") {
    auto s1 = make_field(1, 2, 3);
    auto s2 = make_field(2, 3, 5);
    FieldElem a = FieldElem::one(s1), b = FieldElem::one(s2);
    REQUIRE_THROWS_AS(a + b, MixedFieldSpecs);
    REQUIRE_THROWS_AS(a * b, MixedFieldSpecs);
    // equal parameter lists are the same field even across instances
    auto s3 = make_field(1, 2, 3);
    REQUIRE(same_spec(s1, s3));
    REQUIRE_NOTHROW(FieldElem::one(s1) + FieldElem::one(s3));
}

TEST_CASE("element formatting") {
    auto spec = make_field(1, 2, 3);
    REQUIRE(FieldElem::zero(spec).str() == "0");
    REQUIRE(FieldElem::one(spec).str() == "1");
    REQUIRE(FieldElem::lambda(spec).str() == "L");
    REQUIRE(FieldElem(spec, 0, -1).str() == "-L");
    REQUIRE(FieldElem(spec, 2, 3).str() == "2+3*L");
    REQUIRE(FieldElem(spec, Rational(1) / 2).str() == "1/2");
}

TEST_CASE("rational helpers") {
    REQUIRE(parse_rational("3/4") == Rational(3) / 4);
    REQUIRE(parse_rational("-2") == Rational(-2));
    REQUIRE(to_string(Rational(-5) / 3) == "-5/3");
    REQUIRE(rational_sqrt_exact(Rational(9) / 4).value() == Rational(3) / 2);
    REQUIRE_FALSE(rational_sqrt_exact(Rational(2)).has_value());
    REQUIRE_FALSE(rational_sqrt_exact(Rational(-1)).has_value());
    REQUIRE(integer_sqrt_exact(Integer(144)).value() == 12);
    REQUIRE_FALSE(integer_sqrt_exact(Integer(145)).has_value());
}
