#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace dktest;

namespace {

// E's coordinate ring without the localization: k[x, y], parameter c, with the
// section derivation δ(x) = xy, δ(y) = y²/2 + c(1 − x²).
struct FreeE {
    AlgebraPtr alg;
    Derivation d;
};

FreeE free_e() {
    AlgebraPtr A = Algebra::free_ring({"x", "y"}, {"c"});
    AlgebraElement x = var(A, "x"), y = var(A, "y"), c = var(A, "c");
    AlgebraElement one = AlgebraElement::one(A);
    Derivation d = Derivation::make_by_name(
        A, {{"x", x * y}, {"y", y * y * rat(1, 2) + c * (one - x * x)}});
    return {A, d};
}

} // namespace

TEST_CASE("the Leibniz rule holds on random elements", "[derivation]") {
    FreeE e = free_e();
    Rng rng(90210u);
    for (int i = 0; i < 30; ++i) {
        AlgebraElement f(e.alg, random_poly(e.alg->table(), e.alg->main_vars(), 3, 4, rng));
        AlgebraElement g(e.alg, random_poly(e.alg->table(), e.alg->main_vars(), 3, 4, rng));
        REQUIRE(e.d(f * g) == e.d(f) * g + f * e.d(g));
        REQUIRE(e.d(f + g) == e.d(f) + e.d(g));
    }
}

TEST_CASE("the twisted Leibniz rule applies sigma on the left factor", "[derivation]") {
    ShiftFixture s = shift_minus_one();
    const Derivation& d = s.ring->delta();
    Rng rng(90211u);
    for (int i = 0; i < 30; ++i) {
        AlgebraElement f(s.base, random_poly(s.base->table(), s.base->main_vars(), 3, 3, rng));
        AlgebraElement g(s.base, random_poly(s.base->table(), s.base->main_vars(), 3, 3, rng));
        REQUIRE(d(f * g) == d(f) * g + s.sigma(f) * d(g));
    }
}

TEST_CASE("parameters are constants", "[derivation]") {
    FreeE e = free_e();
    AlgebraElement c = var(e.alg, "c");
    REQUIRE(e.d(c).is_zero());
    REQUIRE(e.d(c * c + c).is_zero());
    REQUIRE_THROWS_AS(
        Derivation::make_by_name(e.alg, {{"c", AlgebraElement::one(e.alg)}}),
        DomainError);
}

TEST_CASE("every main variable needs an image", "[derivation]") {
    AlgebraPtr A = Algebra::free_ring({"x", "y"});
    REQUIRE_THROWS_AS(Derivation::make_by_name(A, {{"x", var(A, "y")}}), DomainError);
}

TEST_CASE("inverse images are derived from the unit relations", "[derivation]") {
    GmFixture f = gm();
    Derivation d = Derivation::make_by_name(f.alg, {{"x", f.lambda * (f.x * f.x - f.x)}});
    // δ(x⁻¹) = −x⁻¹·δ(x)·x⁻¹ = λ(x⁻¹ − 1)
    REQUIRE(d.image("x_inv") == f.lambda * (f.x_inv - rat(1)));
    REQUIRE(d(f.x * f.x_inv).is_zero());
    REQUIRE(d(AlgebraElement::one(f.alg)).is_zero());
}

TEST_CASE("well-definedness is decided against the relations", "[derivation]") {
    AlgebraPtr base = Algebra::free_ring({"x"});
    Poly x = Poly::variable(base->table(), base->table()->require("x"));
    Poly one = Poly::constant(base->table(), 1);
    AlgebraPtr A = Algebra::make(base->table(), {x * x - one});

    // δ(x² − 1) = 2x·δ(x) and x is invertible mod the relation, so δ(x) itself
    // must lie in the ideal
    Derivation bad = Derivation::make_by_name(A, {{"x", AlgebraElement::one(A)}});
    CheckResult r = bad.well_defined();
    REQUIRE(!r.ok);
    REQUIRE(!r.certificate.empty());

    Derivation good = Derivation::make_by_name(A, {{"x", var(A, "x").pow(2) - rat(1)}});
    REQUIRE(good.well_defined().ok);
}

TEST_CASE("u-sequence on (E, t_c) reproduces y and c(1 - x^2)", "[derivation]") {
    MatrixDVariety E = example_E();
    const AlgebraPtr& A = E.group.algebra;
    AlgebraElement x = var(A, "x"), y = var(A, "y"), c = var(A, "c");
    AlgebraElement one = AlgebraElement::one(A);

    std::vector<AlgebraElement> u = u_sequence(E.induced, x, 3);
    REQUIRE(u[0] == x);
    REQUIRE(u[1] == y);
    REQUIRE(u[2] == c * (one - x * x));
    REQUIRE(u[3] == E.induced(u[2]));
    REQUIRE(u[3] == c * (x * x * y) * rat(-2));

    REQUIRE_THROWS_AS(u_sequence(E.induced, y, 1), DomainError);
}

TEST_CASE("u-sequence rejects twisted derivations", "[derivation]") {
    ShiftFixture s = shift_minus_one();
    AlgebraElement one = AlgebraElement::one(s.base);
    REQUIRE_THROWS_AS(u_sequence(s.ring->delta(), one, 1), DomainError);
}

TEST_CASE("exact division of polynomials", "[derivation]") {
    AlgebraPtr A = Algebra::free_ring({"x"}, {"lambda", "c"});
    Poly x = Poly::variable(A->table(), A->table()->require("x"));
    Poly lam = Poly::variable(A->table(), A->table()->require("lambda"));
    Poly c = Poly::variable(A->table(), A->table()->require("c"));
    Poly one = Poly::constant(A->table(), 1);

    auto q = exact_divide(lam * lam * c * x * x, x * x, A->order());
    REQUIRE(q);
    REQUIRE(*q == lam * lam * c);

    auto binomial = exact_divide(x * x - one, x - one, A->order());
    REQUIRE(binomial);
    REQUIRE(*binomial == x + one);

    REQUIRE(!exact_divide(x * x + one, x, A->order()));
    REQUIRE(!exact_divide(one, Poly(A->table()), A->order()));
    auto z = exact_divide(Poly(A->table()), x, A->order());
    REQUIRE(z);
    REQUIRE(z->is_zero());
}

TEST_CASE("the magic constant on (E, t_c) is exactly c", "[derivation]") {
    MatrixDVariety E = example_E();
    const AlgebraPtr& A = E.group.algebra;
    AlgebraElement x = var(A, "x"), c = var(A, "c");

    MagicFit fit = fit_magic_constant(E.induced, x);
    REQUIRE(fit.found);
    REQUIRE(!fit.underdetermined);
    REQUIRE(fit.constant == c);

    // re-verify the identity from scratch, straight from the derivation
    const Derivation& d = E.induced;
    AlgebraElement lhs = x * d(d(x)) - rat(3, 2) * d(x) * d(x);
    REQUIRE(lhs == c * (x * x - x.pow(4)));
}

TEST_CASE("the magic constant on twisted G_m is -lambda^2/2", "[derivation]") {
    GmFixture f = gm();
    Derivation d = Derivation::make_by_name(f.alg, {{"x", f.lambda * (f.x * f.x - f.x)}});

    MagicFit fit = fit_magic_constant(d, f.x);
    REQUIRE(fit.found);
    REQUIRE(!fit.underdetermined);
    REQUIRE(fit.constant == f.lambda * f.lambda * rat(-1, 2));

    AlgebraElement lhs = f.x * d(d(f.x)) - rat(3, 2) * d(f.x) * d(f.x);
    REQUIRE(lhs == fit.constant * (f.x * f.x - f.x.pow(4)));
}

TEST_CASE("magic fit reports failure and underdetermination honestly", "[derivation]") {
    AlgebraPtr A = Algebra::free_ring({"x"});
    AlgebraElement x = var(A, "x");
    Derivation d = Derivation::make_by_name(A, {{"x", AlgebraElement::one(A)}});

    // a·δ²a − 3/2(δa)² = −3/2 is no multiple of x² − x⁴
    MagicFit none = fit_magic_constant(d, x);
    REQUIRE(!none.found);
    REQUIRE(none.residual == AlgebraElement::constant(A, rat(-3, 2)));

    // a = 1 kills both sides
    MagicFit trivial = fit_magic_constant(d, AlgebraElement::one(A));
    REQUIRE(trivial.found);
    REQUIRE(trivial.underdetermined);
    REQUIRE(trivial.constant.is_zero());
}
