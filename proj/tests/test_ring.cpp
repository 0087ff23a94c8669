#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace dktest;

TEST_CASE("rational coefficients are exact", "[ring]") {
    REQUIRE(rat(1, 3) + rat(1, 6) == rat(1, 2));
    REQUIRE(rat(1, 10) * rat(10) == rat(1));
    REQUIRE(rat(-2, 4) == rat(-1, 2));
}

TEST_CASE("polynomial arithmetic satisfies the ring axioms on random inputs", "[ring]") {
    AlgebraPtr A = Algebra::free_ring({"x", "y", "z"});
    Rng rng(2024u);
    for (int i = 0; i < 40; ++i) {
        Poly f = random_poly(A->table(), A->main_vars(), 3, 4, rng);
        Poly g = random_poly(A->table(), A->main_vars(), 3, 4, rng);
        Poly h = random_poly(A->table(), A->main_vars(), 3, 4, rng);
        REQUIRE(f * g == g * f);
        REQUIRE((f * g) * h == f * (g * h));
        REQUIRE(f * (g + h) == f * g + f * h);
        REQUIRE(f - f == Poly(A->table()));
    }
}

TEST_CASE("quotient equality reduces by the relations", "[ring]") {
    AlgebraPtr base = Algebra::free_ring({"x"});
    Poly x = Poly::variable(base->table(), base->table()->require("x"));
    AlgebraPtr A = Algebra::make(base->table(), {x * x - Poly::constant(base->table(), 1)});
    AlgebraElement xv = var(A, "x");
    REQUIRE(xv * xv == AlgebraElement::one(A));
    REQUIRE(xv.pow(5) == xv);
    REQUIRE(!(xv == AlgebraElement::one(A)));
}

TEST_CASE("the unit ideal is rejected as a relation set", "[ring]") {
    AlgebraPtr base = Algebra::free_ring({"x"});
    Poly one = Poly::constant(base->table(), 1);
    REQUIRE_THROWS_AS(Algebra::make(base->table(), {one}), DomainError);
}

TEST_CASE("localization adds the inverse relation and try_invert finds certificates",
          "[ring]") {
    GmFixture f = gm();
    REQUIRE(f.x * f.x_inv == AlgebraElement::one(f.alg));

    auto inv = try_invert(f.x);
    REQUIRE(inv);
    REQUIRE(*inv == f.x_inv);

    auto inv2 = try_invert(f.x * f.x);
    REQUIRE(inv2);
    REQUIRE(*inv2 == f.x_inv * f.x_inv);

    auto scaled = try_invert(f.x * rat(2));
    REQUIRE(scaled);
    REQUIRE(*scaled * f.x * rat(2) == AlgebraElement::one(f.alg));

    // purely syntactic: x + 1 is a unit in no declared sense
    REQUIRE(!try_invert(f.x + rat(1)));
    REQUIRE(!try_invert(AlgebraElement::zero(f.alg)));

    auto c = try_invert(AlgebraElement::constant(f.alg, rat(-7, 3)));
    REQUIRE(c);
    REQUIRE(*c == AlgebraElement::constant(f.alg, rat(-3, 7)));
}

TEST_CASE("localizing by a parameter keeps the inverse a parameter", "[ring]") {
    AlgebraPtr base = Algebra::free_ring({"x"}, {"lambda"});
    AlgebraPtr A = localize(base, Poly::variable(base->table(), base->table()->require("lambda")),
                            "lambda_inv");
    REQUIRE(A->table()->is_parameter(A->table()->require("lambda_inv")));
    AlgebraPtr P = parameter_algebra(A);
    AlgebraElement lam = var(P, "lambda");
    auto inv = try_invert(lam);
    REQUIRE(inv);
    REQUIRE(*inv == var(P, "lambda_inv"));
}

TEST_CASE("parameter_algebra keeps exactly the scalars", "[ring]") {
    GmFixture f = gm();
    AlgebraPtr P = parameter_algebra(f.alg);
    REQUIRE(P->table()->find("lambda"));
    REQUIRE(!P->table()->find("x"));
    REQUIRE(!P->table()->find("x_inv"));
}

TEST_CASE("tensor powers tag copies and share parameters", "[ring]") {
    GmFixture f = gm();
    TensorPower t2 = tensor_power(f.alg, 2);
    REQUIRE(t2.algebra->table()->find("x@1"));
    REQUIRE(t2.algebra->table()->find("x@2"));
    REQUIRE(t2.algebra->table()->find("lambda"));
    REQUIRE(!t2.algebra->table()->find("lambda@1"));

    std::vector<AlgebraMap> e = tensor_embeddings(f.alg, t2);
    AlgebraElement x1 = e[0](f.x), x2 = e[1](f.x);
    REQUIRE(x1 * x2 == x2 * x1);
    REQUIRE(!(x1 == x2));
    // relations travel into both slots
    REQUIRE(e[0](f.x) * e[0](f.x_inv) == AlgebraElement::one(t2.algebra));
    REQUIRE(e[1](f.x) * e[1](f.x_inv) == AlgebraElement::one(t2.algebra));
    REQUIRE(e[0](f.lambda) == e[1](f.lambda));
}

TEST_CASE("transport moves representatives between compatible tables", "[ring]") {
    AlgebraPtr A = Algebra::free_ring({"x", "y"});
    AlgebraPtr B = Algebra::free_ring({"y", "x", "z"});
    AlgebraElement f = var(A, "x") * var(A, "y") + var(A, "x");
    AlgebraElement g = transport(f, B);
    REQUIRE(g == var(B, "x") * var(B, "y") + var(B, "x"));
    REQUIRE_THROWS_AS(transport(var(B, "z"), A), DomainError);
}

TEST_CASE("algebra maps require images for every main variable", "[ring]") {
    AlgebraPtr A = Algebra::free_ring({"x", "y"});
    AlgebraPtr B = Algebra::free_ring({"x"});
    REQUIRE_THROWS_AS(
        AlgebraMap::make_by_name(A, B, {{"x", var(B, "x")}}),
        DomainError);
}

TEST_CASE("well-definedness of maps is checked against the relations", "[ring]") {
    AlgebraPtr base = Algebra::free_ring({"x"});
    Poly x = Poly::variable(base->table(), base->table()->require("x"));
    AlgebraPtr A = Algebra::make(base->table(), {x * x - Poly::constant(base->table(), 1)});
    AlgebraPtr B = Algebra::free_ring({"t"});
    // x ↦ t does not kill x² − 1
    REQUIRE_THROWS_AS(AlgebraMap::make_by_name(A, B, {{"x", var(B, "t")}}), DomainError);
    // x ↦ 1 does
    AlgebraMap ok = AlgebraMap::make_by_name(A, B, {{"x", AlgebraElement::one(B)}});
    REQUIRE(ok(var(A, "x").pow(3)) == AlgebraElement::one(B));
}

TEST_CASE("maps keep parameters fixed by name", "[ring]") {
    AlgebraPtr A = Algebra::free_ring({"x"}, {"c"});
    AlgebraPtr B = Algebra::free_ring({"u"}, {"c"});
    AlgebraMap m = AlgebraMap::make_by_name(A, B, {{"x", var(B, "u") * var(B, "u")}});
    AlgebraElement img = m(var(A, "c") * var(A, "x"));
    REQUIRE(img == var(B, "c") * var(B, "u") * var(B, "u"));

    AlgebraPtr C = Algebra::free_ring({"u"});
    REQUIRE_THROWS_AS(AlgebraMap::make_by_name(A, C, {{"x", var(C, "u")}}), DomainError);
}
