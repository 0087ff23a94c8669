#pragma once

// Shared worked examples.  Everything here is built from the public constructors,
// never from parsed spec files, so the tests exercise the library directly.

#include <dkernel/dkernel.hpp>

#include "util.hpp"

namespace dktest {

using namespace dk;

inline AlgebraElement var(const AlgebraPtr& a, const std::string& name) {
    return AlgebraElement::variable(a, name);
}

// G_m as the 1x1 matrix group over k[x, 1/x], with a parameter lambda for sections.
struct GmFixture {
    AlgebraPtr alg;
    AlgebraElement x, x_inv, lambda;
    MatrixGroupSpec group;
};

inline GmFixture gm() {
    AlgebraPtr base = Algebra::free_ring({"x"}, {"lambda"});
    AlgebraPtr A = localize(base, Poly::variable(base->table(), base->table()->require("x")),
                            "x_inv");
    GmFixture f{A, var(A, "x"), var(A, "x_inv"), var(A, "lambda"), {}};
    f.group = {1, A, Matrix::from_rows({{f.x}})};
    return f;
}

inline Matrix gm_zero_section(const GmFixture& f) {
    return Matrix::from_rows({{AlgebraElement::zero(f.alg)}});
}

// s̄(x) = λ(x² − x), the x-twisted section
inline Matrix gm_twisted_section(const GmFixture& f) {
    return Matrix::from_rows({{f.lambda * (f.x * f.x - f.x)}});
}

// G_a as [[1, y], [0, 1]] over k[y], with a parameter lambda for sections.
struct GaFixture {
    AlgebraPtr alg;
    AlgebraElement y, lambda;
    MatrixGroupSpec group;
};

inline GaFixture ga() {
    AlgebraPtr A = Algebra::free_ring({"y"}, {"lambda"});
    GaFixture f{A, var(A, "y"), var(A, "lambda"), {}};
    AlgebraElement one = AlgebraElement::one(A), zero = AlgebraElement::zero(A);
    f.group = {2, A, Matrix::from_rows({{one, f.y}, {zero, one}})};
    return f;
}

// s̄ for δ(y) = λy
inline Matrix ga_section(const GaFixture& f) {
    AlgebraElement zero = AlgebraElement::zero(f.alg);
    return Matrix::from_rows({{zero, f.lambda * f.y}, {zero, zero}});
}

// μ₂ = Spec k[x]/(x² − 1) with x its own inverse.  The inverse variable comes first
// in the table so the collapsed generator rewrites as x_inv → x and x itself stays in
// normal form; localizing the quotient the other way around would erase x.
inline AlgebraPtr mu2() {
    VarTablePtr table = VarTable::make({{"x_inv", false}, {"x", false}});
    Poly x = Poly::variable(table, table->require("x"));
    Poly x_inv = Poly::variable(table, table->require("x_inv"));
    Poly one = Poly::constant(table, 1);
    return Algebra::make(table, {x * x - one, x * x_inv - one},
                         {{x, table->require("x_inv")}});
}

// GL_2 over k[a, b, c, d, 1/det]
struct Gl2Fixture {
    AlgebraPtr alg;
    MatrixGroupSpec group;
};

inline Gl2Fixture gl2() {
    AlgebraPtr base = Algebra::free_ring({"a", "b", "c", "d"});
    const VarTablePtr& t = base->table();
    Poly det = Poly::variable(t, t->require("a")) * Poly::variable(t, t->require("d")) -
               Poly::variable(t, t->require("b")) * Poly::variable(t, t->require("c"));
    AlgebraPtr A = localize(base, det, "det_inv");
    Gl2Fixture f{A, {}};
    f.group = {2, A, Matrix::from_rows({{var(A, "a"), var(A, "b")},
                                        {var(A, "c"), var(A, "d")}})};
    return f;
}

// Plain k[y], shared between an Ore ring and its additive Hopf structure.
inline AlgebraPtr ky() { return Algebra::free_ring({"y"}); }

// Additive group written as [[1, y], [0, 1]]: Δy = y⊗1 + 1⊗y, εy = 0, Sy = −y.
inline Hopf additive_hopf(const AlgebraPtr& A) {
    AlgebraElement y = var(A, "y");
    AlgebraElement one = AlgebraElement::one(A), zero = AlgebraElement::zero(A);
    return hopf_from_matrix_group({2, A, Matrix::from_rows({{one, y}, {zero, one}})});
}

// First Weyl algebra k[y][x; id, d/dy]: xy = yx + 1.
inline OreRingPtr weyl(const AlgebraPtr& A) {
    AlgebraMap id = AlgebraMap::identity(A);
    Derivation d = Derivation::make_by_name(A, {{"y", AlgebraElement::one(A)}});
    return OreRing::make(A, id, id, d);
}

// Quantum plane k[y, q^{±1}][x; σ, 0] with σ(y) = qy: xy = qyx.
struct QPlaneFixture {
    AlgebraPtr base;
    OreRingPtr ring;
    AlgebraMap sigma;
};

inline QPlaneFixture qplane() {
    AlgebraPtr k = Algebra::free_ring({"y"}, {"q"});
    AlgebraPtr A = localize(k, Poly::variable(k->table(), k->table()->require("q")), "q_inv");
    AlgebraMap s = AlgebraMap::make_by_name(A, A, {{"y", var(A, "q") * var(A, "y")}});
    AlgebraMap si = AlgebraMap::make_by_name(A, A, {{"y", var(A, "q_inv") * var(A, "y")}});
    OreRingPtr r = OreRing::make(A, s, si, Derivation::zero(A));
    return {A, r, s};
}

// Shift rings over k[y] with σ(y) = y + 1 and the two inner σ-derivations:
// δ(y) = −1 (witness a = 1) and δ(y) = y (witness a = −y).
struct ShiftFixture {
    AlgebraPtr base;
    OreRingPtr ring;
    AlgebraMap sigma;
};

inline ShiftFixture shift_with_delta_of_y(bool delta_is_y) {
    AlgebraPtr A = ky();
    AlgebraElement y = var(A, "y");
    AlgebraMap s = AlgebraMap::make_by_name(A, A, {{"y", y + rat(1)}});
    AlgebraMap si = AlgebraMap::make_by_name(A, A, {{"y", y - rat(1)}});
    AlgebraElement dy = delta_is_y ? y : AlgebraElement::constant(A, -1);
    Derivation d = Derivation::make_by_name(A, {{"y", dy}}, s);
    return {A, OreRing::make(A, s, si, d), s};
}

inline ShiftFixture shift_minus_one() { return shift_with_delta_of_y(false); }
inline ShiftFixture shift_y() { return shift_with_delta_of_y(true); }

// Random Ore polynomial: x-degree <= xdeg, base coefficients of degree <= bdeg.
inline OrePoly random_ore(const OreRingPtr& r, int xdeg, int bdeg, Rng& rng) {
    std::vector<AlgebraElement> cs;
    const AlgebraPtr& A = r->base();
    for (int i = 0; i <= xdeg; ++i) {
        if (rng.upto(3) == 0) {
            cs.push_back(AlgebraElement::zero(A));
            continue;
        }
        cs.push_back(AlgebraElement(A, random_poly(A->table(), A->main_vars(), bdeg, 2, rng)));
    }
    return OrePoly(r, std::move(cs));
}

} // namespace dktest
