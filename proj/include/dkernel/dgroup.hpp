#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopf.hpp"

namespace dk {

// A matrix group together with a section s = (id, s̄) of its prolongation, s̄ given
// as an n×n matrix over the coordinate ring.  The induced derivation sends the entry
// variable at (i, j) to s̄(i, j); constructing one demands it be well defined, which
// is exactly s(G) ⊆ τG.
struct MatrixDVariety {
    MatrixGroupSpec group;
    Matrix sbar;
    Derivation induced;

    static MatrixDVariety make(MatrixGroupSpec g, Matrix sbar) {
        if (sbar.size() != g.n) throw DomainError("section matrix has the wrong shape");
        auto pos = detail::entry_positions(g);
        std::map<int, AlgebraElement> images;
        for (auto& [v, ij] : pos) {
            const AlgebraElement& img = sbar.at(ij.first, ij.second);
            if (img.algebra() != g.algebra)
                throw AlgebraMismatch("section entry outside the coordinate ring");
            images[v] = img;
        }
        Derivation d = Derivation::make(g.algebra, std::move(images));
        CheckResult wd = d.well_defined();
        if (!wd.ok)
            throw DomainError("section does not map the group into its prolongation: " +
                              wd.certificate);
        return {std::move(g), std::move(sbar), std::move(d)};
    }
};

namespace detail {

// s̄ evaluated at the generic product gh: apply Δ to every entry.
inline Matrix section_at_product(const Hopf& h, const Matrix& sbar) {
    Matrix r(sbar.size(), AlgebraElement::zero(h.square));
    for (int i = 0; i < sbar.size(); ++i)
        for (int j = 0; j < sbar.size(); ++j) r.at(i, j) = h.coproduct(sbar.at(i, j));
    return r;
}

inline CheckResult compare_sections(const Matrix& lhs, const Matrix& rhs,
                                    const std::string& what) {
    for (int i = 0; i < lhs.size(); ++i)
        for (int j = 0; j < lhs.size(); ++j)
            if (!(lhs.at(i, j) == rhs.at(i, j)))
                return CheckResult::fail(what + " fails at entry (" + std::to_string(i) +
                                         ", " + std::to_string(j) + "): " +
                                         (lhs.at(i, j) - rhs.at(i, j)).to_string());
    return CheckResult::pass();
}

} // namespace detail

// D-group identity over the generic pair:  s̄(gh) = s̄(g)·h + g·s̄(h).
inline CheckResult check_d_group(const MatrixDVariety& D, const Hopf& h) {
    if (h.algebra != D.group.algebra) throw AlgebraMismatch("Hopf data over a different ring");
    Matrix m1 = map_entries(h.emb[0], D.group.entries);
    Matrix m2 = map_entries(h.emb[1], D.group.entries);
    Matrix s1 = map_entries(h.emb[0], D.sbar);
    Matrix s2 = map_entries(h.emb[1], D.sbar);
    return detail::compare_sections(detail::section_at_product(h, D.sbar),
                                    s1 * m2 + m1 * s2, "s(gh) = s(g)h + g s(h)");
}

inline CheckResult check_d_group(const MatrixDVariety& D) {
    return check_d_group(D, hopf_from_matrix_group(D.group));
}

// a-twisted identity:  s̄(gh) = s̄(g)·h + a(g)·g·s̄(h),  a group-like.
inline CheckResult check_twisted_d_group(const MatrixDVariety& D, const AlgebraElement& a,
                                         const Hopf& h) {
    if (h.algebra != D.group.algebra) throw AlgebraMismatch("Hopf data over a different ring");
    if (!is_group_like(h, a)) throw DomainError("a is not group-like");
    Matrix m1 = map_entries(h.emb[0], D.group.entries);
    Matrix m2 = map_entries(h.emb[1], D.group.entries);
    Matrix s1 = map_entries(h.emb[0], D.sbar);
    Matrix s2 = map_entries(h.emb[1], D.sbar);
    return detail::compare_sections(detail::section_at_product(h, D.sbar),
                                    s1 * m2 + (m1 * s2).scaled(h.emb[0](a)),
                                    "s(gh) = s(g)h + a(g) g s(h)");
}

inline CheckResult check_twisted_d_group(const MatrixDVariety& D, const AlgebraElement& a) {
    return check_twisted_d_group(D, a, hopf_from_matrix_group(D.group));
}

// The group E ≤ GL₂ of matrices [[x, y], [0, 1]], x invertible, with the section
//   t̄_c = [[x·y, y²/2 + c·(1 − x²)], [0, 0]].
// The constant is any parameter-only element; `like` donates the parameter list
// (with its parameter-only relations and units) so fitted constants transport over.
inline MatrixDVariety example_E_like(const AlgebraPtr& like, const AlgebraElement& c_value) {
    std::vector<VarTable::Entry> entries{{"x", false}, {"y", false}};
    for (int v : like->parameters()) entries.push_back({like->table()->name(v), true});
    VarTablePtr table = VarTable::make(entries);

    auto param_only = [&](const Poly& p) {
        for (auto& [m, c] : p.terms())
            if (!m.uses_only([&](int v) { return like->table()->is_parameter(v); }))
                return false;
        return true;
    };
    std::vector<Poly> rels;
    std::vector<Unit> units;
    for (const Poly& r : like->relations())
        if (param_only(r)) rels.push_back(r.transport(table));
    for (auto& u : like->units())
        if (like->table()->is_parameter(u.inverse_var) && param_only(u.element))
            units.push_back({u.element.transport(table),
                             table->require(like->table()->name(u.inverse_var))});

    AlgebraPtr base = Algebra::make(table, std::move(rels), std::move(units), like->options());
    AlgebraPtr A = localize(base, Poly::variable(base->table(), base->table()->require("x")),
                            "x_inv");

    Poly c_rep = c_value.rep();
    if (!param_only(c_rep)) throw DomainError("the section constant must be parameter-only");
    AlgebraElement x = AlgebraElement::variable(A, "x");
    AlgebraElement y = AlgebraElement::variable(A, "y");
    AlgebraElement c(A, c_rep.transport(A->table()));
    AlgebraElement one = AlgebraElement::one(A), zero = AlgebraElement::zero(A);

    Matrix m = Matrix::from_rows({{x, y}, {zero, one}});
    Matrix sbar = Matrix::from_rows(
        {{x * y, y * y * rat(1, 2) + c * (one - x * x)}, {zero, zero}});
    return MatrixDVariety::make({2, A, m}, sbar);
}

inline MatrixDVariety example_E(const std::string& c_param = "c") {
    AlgebraPtr scalars = Algebra::free_ring({}, {c_param});
    return example_E_like(scalars, AlgebraElement::variable(scalars, c_param));
}

// π: G → E,  g ↦ [[a(g), δa(g)/a(g)], [0, 1]], on coordinate rings
// π*(x) = a, π*(y) = δ(a)·a⁻¹, into the E whose constant is the fitted one.
struct PiReport {
    AlgebraMap pi;             // k[E] -> k[G]
    MatrixDVariety target;     // (E, t_c) with the fitted constant
    MagicFit magic;
    CheckResult twisted;       // D is an a-twisted D-group
    CheckResult homomorphism;  // Δ_G ∘ π* = (π* ⊗ π*) ∘ Δ_E
    CheckResult d_morphism;    // δ_G ∘ π* = π* ∘ δ_E
    bool ok = false;
};

inline PiReport build_pi(const MatrixDVariety& D, const AlgebraElement& a) {
    Hopf hg = hopf_from_matrix_group(D.group);
    CheckResult tw = check_twisted_d_group(D, a, hg);
    if (!tw.ok) throw DomainError("not an a-twisted D-group: " + tw.certificate);
    auto ainv = try_invert(a);
    if (!ainv) throw DomainError("a has no declared inverse");

    MagicFit magic = fit_magic_constant(D.induced, a);
    if (!magic.found) throw DomainError("no constant c fits a·δ²a - 3/2·(δa)² = c·(a² - a⁴)");

    MatrixDVariety E = example_E_like(D.group.algebra, magic.constant);
    const AlgebraPtr& ke = E.group.algebra;
    const AlgebraPtr& kg = D.group.algebra;

    std::map<std::string, AlgebraElement> images;
    images["x"] = a;
    images["x_inv"] = *ainv;
    images["y"] = D.induced(a) * *ainv;
    AlgebraMap pi = AlgebraMap::make_by_name(ke, kg, images, /*check=*/true);

    PiReport rep{pi, E, magic, tw, CheckResult::pass(), CheckResult::pass(), false};

    // (π* ⊗ π*) as a map of the tensor squares, then compare against Δ_G ∘ π*.
    Hopf he = hopf_from_matrix_group(E.group);
    std::map<int, AlgebraElement> sq_images;
    for (int w : he.square->main_vars()) {
        auto sv = detail::split_square_var(he, w);
        sq_images[w] = hg.emb[sv.slot - 1](pi.image(sv.base_var));
    }
    AlgebraMap pi2 = AlgebraMap::make(he.square, hg.square, std::move(sq_images), false);
    for (int v : ke->main_vars()) {
        AlgebraElement xv = AlgebraElement::variable(ke, v);
        if (!(hg.coproduct(pi(xv)) == pi2(he.coproduct(xv)))) {
            rep.homomorphism = CheckResult::fail(ke->table()->name(v));
            break;
        }
    }

    for (int v : ke->main_vars()) {
        AlgebraElement xv = AlgebraElement::variable(ke, v);
        if (!(D.induced(pi(xv)) == pi(E.induced(xv)))) {
            rep.d_morphism = CheckResult::fail(ke->table()->name(v));
            break;
        }
    }

    rep.ok = rep.twisted.ok && rep.homomorphism.ok && magic.found && rep.d_morphism.ok;
    return rep;
}

// Logarithmic derivative of a commutative matrix group with section s̄: the matrix
// part of (M, M′)·(M, s̄(M))⁻¹ in TG, evaluated at the generic point, where M′ is the
// matrix of primed symbols of the prolonged coordinate ring:
//   ℓd = M′·M⁻¹ − s̄(M)·M⁻¹.
struct LogDerivative {
    ProlongedRing ring;
    Matrix m, mprime, minv, sbar; // over ring.algebra
    Matrix value;
};

inline LogDerivative logarithmic_derivative(const MatrixGroupSpec& g, const Matrix& sbar) {
    {
        TensorPower t2 = tensor_power(g.algebra, 2);
        std::vector<AlgebraMap> e = tensor_embeddings(g.algebra, t2);
        Matrix m1 = map_entries(e[0], g.entries);
        Matrix m2 = map_entries(e[1], g.entries);
        if (!(m1 * m2 == m2 * m1))
            throw DomainError("the group is not commutative; no logarithmic derivative");
    }

    LogDerivative ld;
    ld.ring = prolong_ring(g.algebra);
    const AlgebraPtr& PR = ld.ring.algebra;

    ld.m = Matrix(g.n, AlgebraElement::zero(PR));
    ld.mprime = Matrix(g.n, AlgebraElement::zero(PR));
    ld.sbar = Matrix(g.n, AlgebraElement::zero(PR));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            Poly e = g.entries.at(i, j).rep().with_table(PR->table());
            ld.m.at(i, j) = AlgebraElement(PR, e);
            Poly de(PR->table());
            for (auto& [v, pv] : ld.ring.prime_of)
                de += e.derivative(v) * Poly::variable(PR->table(), pv);
            ld.mprime.at(i, j) = AlgebraElement(PR, de);
            ld.sbar.at(i, j) = AlgebraElement(PR, sbar.at(i, j).rep().with_table(PR->table()));
        }

    AlgebraElement det = ld.m.det();
    auto det_inv = try_invert(det);
    if (!det_inv) throw DomainError("group determinant has no declared inverse");
    ld.minv = ld.m.inverse_with(*det_inv);
    ld.value = ld.mprime * ld.minv - ld.sbar * ld.minv;
    return ld;
}

// Kernel property: on D-points ∇(M) = s(M), so substituting v′ ↦ s̄-image of v must
// kill the logarithmic derivative.
inline Matrix evaluate_on_section(const LogDerivative& ld, const MatrixDVariety& D) {
    const AlgebraPtr& base = D.group.algebra;
    std::map<int, AlgebraElement> images;
    for (int v : base->main_vars()) {
        images[v] = AlgebraElement::variable(base, v);
        images[ld.ring.prime_of.at(v)] = D.induced.image(v);
    }
    AlgebraMap back = AlgebraMap::make(ld.ring.algebra, base, std::move(images), false);
    return map_entries(back, ld.value);
}

// ℓd(MN) = ℓd(M) + ℓd(N) over the doubled prolonged ring, under the formal product
// rule (MN)′ = M′N + MN′ and s̄(MN) = Δ(s̄) transported.
inline CheckResult ld_additive_on_product(const MatrixGroupSpec& g, const Matrix& sbar) {
    Hopf h = hopf_from_matrix_group(g);
    LogDerivative ld = logarithmic_derivative(g, sbar);

    TensorPower t2 = tensor_power(ld.ring.algebra, 2);
    std::vector<AlgebraMap> e = tensor_embeddings(ld.ring.algebra, t2);
    Matrix m1 = map_entries(e[0], ld.m), m2 = map_entries(e[1], ld.m);
    Matrix p1 = map_entries(e[0], ld.mprime), p2 = map_entries(e[1], ld.mprime);
    Matrix i1 = map_entries(e[0], ld.minv), i2 = map_entries(e[1], ld.minv);

    Matrix prod_prime = p1 * m2 + m1 * p2;
    Matrix prod_inv = i2 * i1;
    Matrix sprod(g.n, AlgebraElement::zero(t2.algebra));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            sprod.at(i, j) = transport(h.coproduct(sbar.at(i, j)), t2.algebra);

    Matrix lhs = prod_prime * prod_inv - sprod * prod_inv;
    Matrix rhs = map_entries(e[0], ld.value) + map_entries(e[1], ld.value);
    return detail::compare_sections(lhs, rhs, "ld(MN) = ld(M) + ld(N)");
}

} // namespace dk
