#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "matrix.hpp"
#include "prolongation.hpp"

namespace dk {

// A linear algebraic group presented by a generic matrix: a coordinate ring together
// with an n×n matrix of its elements whose matrix product realizes the group law.
// Every primary generator must appear as exactly one bare matrix entry; declared
// inverses get their Hopf images from group-likes (the determinant included).
struct MatrixGroupSpec {
    int n = 0;
    AlgebraPtr algebra;
    Matrix entries;
};

// Hopf structure data.  All maps are algebra maps; identities are checked on
// generators, which suffices for algebra maps.  The counit lands in the parameter
// algebra (the scalars).
struct Hopf {
    AlgebraPtr algebra;
    AlgebraPtr square;              // algebra ⊗ algebra
    std::vector<AlgebraMap> emb;    // the two factor embeddings
    AlgebraMap coproduct;           // algebra -> square
    AlgebraPtr params;              // parameter algebra
    AlgebraMap counit;              // algebra -> params
    AlgebraMap antipode;            // algebra -> algebra

    AlgebraElement inject_scalar(const AlgebraElement& s) const {
        return transport(s, algebra);
    }
};

namespace detail {

// Position of each primary generator as a bare entry of the generic matrix.
inline std::map<int, std::pair<int, int>> entry_positions(const MatrixGroupSpec& g) {
    std::map<int, std::pair<int, int>> pos;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const Poly& p = g.entries.at(i, j).rep();
            if (p.term_count() != 1 || p.terms().begin()->second != 1) continue;
            const Monomial& m = p.terms().begin()->first;
            if (m.exponents().size() != 1 || m.exponents()[0].second != 1) continue;
            int v = m.exponents()[0].first;
            if (!pos.count(v)) pos[v] = {i, j};
        }
    for (int v : g.algebra->primary_vars())
        if (!pos.count(v))
            throw DomainError("generator '" + g.algebra->table()->name(v) +
                              "' does not appear as a matrix entry");
    return pos;
}

} // namespace detail

// Build the Hopf structure of a matrix group: Δ from the matrix product, ε from the
// identity matrix, S from the adjugate over the determinant.  Errors out when the
// relation ideal is not stable under these maps (the data does not present a group).
inline Hopf hopf_from_matrix_group(const MatrixGroupSpec& g) {
    const AlgebraPtr& A = g.algebra;
    Hopf h;
    h.algebra = A;
    TensorPower t2 = tensor_power(A, 2);
    h.square = t2.algebra;
    h.emb = tensor_embeddings(A, t2);
    h.params = parameter_algebra(A);

    auto pos = detail::entry_positions(g);

    AlgebraElement det = g.entries.det();
    std::optional<AlgebraElement> det_inv = try_invert(det);
    if (!det_inv)
        throw DomainError("matrix determinant has no declared inverse");

    // Δ(v) = Σ_k M_{ik} ⊗ M_{kj} for v the entry at (i, j); group-likes for inverses.
    Matrix m1 = map_entries(h.emb[0], g.entries);
    Matrix m2 = map_entries(h.emb[1], g.entries);
    Matrix mm = m1 * m2;
    std::map<int, AlgebraElement> cop;
    for (auto& [v, ij] : pos) cop[v] = mm.at(ij.first, ij.second);
    for (auto& u : A->units()) {
        if (cop.count(u.inverse_var) || A->table()->is_parameter(u.inverse_var)) continue;
        AlgebraElement f(A, u.element);
        // f must be group-like for f⁻¹ to have a polynomial coproduct; evaluate the
        // partially known Δ on f (its variables must all have images already)
        for (auto& [m, c] : f.rep().terms())
            for (auto& [v, e] : m.exponents())
                if (!A->table()->is_parameter(v) && !cop.count(v))
                    throw DomainError("unit " + f.to_string() +
                                      " uses a generator with no coproduct yet");
        std::map<int, AlgebraElement> partial = cop;
        for (int v : A->main_vars())
            if (!partial.count(v)) partial[v] = AlgebraElement::zero(h.square);
        AlgebraMap partial_cop = AlgebraMap::make(A, h.square, std::move(partial), false);
        if (!(partial_cop(f) == h.emb[0](f) * h.emb[1](f)))
            throw DomainError("declared unit " + f.to_string() +
                              " is not group-like; no coproduct for its inverse");
        cop[u.inverse_var] = AlgebraElement::variable(h.square, t2.var_maps[0].at(u.inverse_var)) *
                             AlgebraElement::variable(h.square, t2.var_maps[1].at(u.inverse_var));
    }
    h.coproduct = AlgebraMap::make(A, h.square, std::move(cop), /*check=*/true);

    // ε: evaluation at the identity matrix.
    std::map<int, AlgebraElement> eps;
    for (auto& [v, ij] : pos)
        eps[v] = AlgebraElement::constant(h.params, ij.first == ij.second ? 1 : 0);
    for (auto& u : A->units()) {
        if (eps.count(u.inverse_var) || A->table()->is_parameter(u.inverse_var)) continue;
        eps[u.inverse_var] = AlgebraElement::one(h.params);
    }
    h.counit = AlgebraMap::make(A, h.params, std::move(eps), /*check=*/true);

    // S: entry (i,j) ↦ (M⁻¹)_{ij}; group-like units swap with their inverses.
    Matrix minv = g.entries.adjugate().scaled(*det_inv);
    std::map<int, AlgebraElement> ant;
    for (auto& [v, ij] : pos) ant[v] = minv.at(ij.first, ij.second);
    for (auto& u : A->units()) {
        if (ant.count(u.inverse_var) || A->table()->is_parameter(u.inverse_var)) continue;
        ant[u.inverse_var] = AlgebraElement(A, u.element);
    }
    h.antipode = AlgebraMap::make(A, A, std::move(ant), /*check=*/true);
    return h;
}

namespace detail {

// Decompose a tensor-square variable name "base@k" against the base algebra.
struct SquareVar {
    int base_var;
    int slot; // 1 or 2
};

inline SquareVar split_square_var(const Hopf& h, int w) {
    const std::string& nm = h.square->table()->name(w);
    auto at = nm.rfind('@');
    return {h.algebra->table()->require(nm.substr(0, at)), std::stoi(nm.substr(at + 1))};
}

} // namespace detail

// (Δ ⊗ id)∘Δ = (id ⊗ Δ)∘Δ on every generator, computed in the tensor cube.
inline CheckResult check_coassociativity(const Hopf& h) {
    TensorPower t3 = tensor_power(h.algebra, 3);
    std::vector<AlgebraMap> e3 = tensor_embeddings(h.algebra, t3);

    auto span_map = [&](int a, int b) {
        // square -> cube sending factor 1 to slot a, factor 2 to slot b
        std::map<int, AlgebraElement> images;
        for (int v : h.square->main_vars()) {
            auto sv = detail::split_square_var(h, v);
            int slot = sv.slot == 1 ? a : b;
            const std::string& base = h.algebra->table()->name(sv.base_var);
            images[v] = AlgebraElement::variable(
                t3.algebra, t3.algebra->table()->require(base + "@" + std::to_string(slot)));
        }
        return AlgebraMap::make(h.square, t3.algebra, std::move(images), false);
    };
    AlgebraMap left12 = span_map(1, 2);
    AlgebraMap right23 = span_map(2, 3);

    // (Δ⊗id): factor-1 variables expand through Δ into slots 1,2; factor 2 -> slot 3.
    // (id⊗Δ): factor 1 -> slot 1; factor-2 variables expand into slots 2,3.
    std::map<int, AlgebraElement> img1, img2;
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        AlgebraElement x = AlgebraElement::variable(h.algebra, sv.base_var);
        if (sv.slot == 1) {
            img1[w] = left12.apply(h.coproduct(x));
            img2[w] = e3[0](x);
        } else {
            img1[w] = e3[2](x);
            img2[w] = right23.apply(h.coproduct(x));
        }
    }
    AlgebraMap dxi = AlgebraMap::make(h.square, t3.algebra, std::move(img1), false);
    AlgebraMap idx = AlgebraMap::make(h.square, t3.algebra, std::move(img2), false);

    for (int v : h.algebra->main_vars()) {
        AlgebraElement dv = h.coproduct(AlgebraElement::variable(h.algebra, v));
        if (!(dxi.apply(dv) == idx.apply(dv)))
            return CheckResult::fail(h.algebra->table()->name(v));
    }
    return CheckResult::pass();
}

// (ε ⊗ id)∘Δ = id = (id ⊗ ε)∘Δ on every generator.
inline CheckResult check_counit(const Hopf& h) {
    std::map<int, AlgebraElement> l, r;
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        AlgebraElement idimg = AlgebraElement::variable(h.algebra, sv.base_var);
        AlgebraElement epsimg = h.inject_scalar(h.counit(idimg));
        l[w] = sv.slot == 1 ? epsimg : idimg;
        r[w] = sv.slot == 1 ? idimg : epsimg;
    }
    AlgebraMap eps1 = AlgebraMap::make(h.square, h.algebra, std::move(l), false);
    AlgebraMap eps2 = AlgebraMap::make(h.square, h.algebra, std::move(r), false);
    for (int v : h.algebra->main_vars()) {
        AlgebraElement x = AlgebraElement::variable(h.algebra, v);
        AlgebraElement dv = h.coproduct(x);
        if (!(eps1.apply(dv) == x)) return CheckResult::fail(h.algebra->table()->name(v));
        if (!(eps2.apply(dv) == x)) return CheckResult::fail(h.algebra->table()->name(v));
    }
    return CheckResult::pass();
}

// m∘(S ⊗ id)∘Δ = η∘ε = m∘(id ⊗ S)∘Δ on every generator.
inline CheckResult check_antipode(const Hopf& h) {
    std::map<int, AlgebraElement> l, r;
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        AlgebraElement x = AlgebraElement::variable(h.algebra, sv.base_var);
        l[w] = sv.slot == 1 ? h.antipode(x) : x;
        r[w] = sv.slot == 1 ? x : h.antipode(x);
    }
    AlgebraMap s1 = AlgebraMap::make(h.square, h.algebra, std::move(l), false);
    AlgebraMap s2 = AlgebraMap::make(h.square, h.algebra, std::move(r), false);
    for (int v : h.algebra->main_vars()) {
        AlgebraElement x = AlgebraElement::variable(h.algebra, v);
        AlgebraElement dv = h.coproduct(x);
        AlgebraElement target = h.inject_scalar(h.counit(x));
        if (!(s1.apply(dv) == target)) return CheckResult::fail(h.algebra->table()->name(v));
        if (!(s2.apply(dv) == target)) return CheckResult::fail(h.algebra->table()->name(v));
    }
    return CheckResult::pass();
}

inline bool is_group_like(const Hopf& h, const AlgebraElement& a) {
    if (a.is_zero()) return false;
    if (!(h.coproduct(a) == h.emb[0](a) * h.emb[1](a))) return false;
    return h.counit(a) == AlgebraElement::one(h.params);
}

// Factor-wise extension of δ to the tensor square: apply δ in slot `slot`, identity
// in the other.  For twisted δ the extension twists by σ in that slot.
inline Derivation tensor_slot_derivation(const Hopf& h, const Derivation& d, int slot) {
    std::map<int, AlgebraElement> images;
    std::map<int, AlgebraElement> twist_images;
    bool twisted = d.twisted();
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        int k = sv.slot - 1;
        AlgebraElement x = AlgebraElement::variable(h.algebra, sv.base_var);
        if (k == slot) {
            images[w] = h.emb[k](d(x));
            if (twisted) twist_images[w] = h.emb[k](d.twist()->apply(x));
        } else {
            images[w] = AlgebraElement::zero(h.square);
            if (twisted) twist_images[w] = AlgebraElement::variable(h.square, w);
        }
    }
    std::optional<AlgebraMap> twist;
    if (twisted)
        twist = AlgebraMap::make(h.square, h.square, std::move(twist_images), false);
    return Derivation::make(h.square, std::move(images), std::move(twist));
}

// Coderivation condition for a group-like a:
//   Δ(δr) = Σ δ(r₁)⊗r₂ + a·r₁⊗δ(r₂)   on every generator r.
// a = 1 is the differential-Hopf case (Δ commutes with δ).
inline CheckResult check_a_coderivation(const Hopf& h, const Derivation& d,
                                        const AlgebraElement& a) {
    if (d.algebra() != h.algebra) throw AlgebraMismatch("derivation over a different algebra");
    if (d.twisted()) throw DomainError("coderivation condition expects an untwisted derivation");
    if (!(a == AlgebraElement::one(h.algebra)) && !is_group_like(h, a))
        throw DomainError("a is not group-like");
    CheckResult wd = d.well_defined();
    if (!wd.ok) throw DomainError("derivation not well defined: " + wd.certificate);

    Derivation d1 = tensor_slot_derivation(h, d, 0);
    Derivation d2 = tensor_slot_derivation(h, d, 1);
    AlgebraElement a1 = h.emb[0](a);
    for (int v : h.algebra->main_vars()) {
        AlgebraElement x = AlgebraElement::variable(h.algebra, v);
        AlgebraElement lhs = h.coproduct(d(x));
        AlgebraElement dv = h.coproduct(x);
        AlgebraElement rhs = d1(dv) + a1 * d2(dv);
        if (!(lhs == rhs)) return CheckResult::fail(h.algebra->table()->name(v));
    }
    return CheckResult::pass();
}

inline CheckResult check_differential_hopf(const Hopf& h, const Derivation& d) {
    return check_a_coderivation(h, d, AlgebraElement::one(h.algebra));
}

struct CharacterResult {
    AlgebraMap chi;    // algebra -> params
    bool verified = false;
};

// χ := ε∘σ; verified means σ is the translation by the recovered point, i.e.
// σ = (χ⊗id)∘Δ (left) or σ = (id⊗χ)∘Δ (right) on generators.  On a noncommutative
// group the two differ, so either side alone certifies.
inline CharacterResult recover_character(const Hopf& h, const AlgebraMap& sigma) {
    if (sigma.source() != h.algebra || sigma.target() != h.algebra)
        throw AlgebraMismatch("sigma must be an endomorphism of the Hopf algebra");
    CharacterResult out{h.counit.compose(sigma), false};

    std::map<int, AlgebraElement> l, r;
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        AlgebraElement x = AlgebraElement::variable(h.algebra, sv.base_var);
        AlgebraElement chix = h.inject_scalar(out.chi(x));
        l[w] = sv.slot == 1 ? chix : x;
        r[w] = sv.slot == 1 ? x : chix;
    }
    AlgebraMap chi1 = AlgebraMap::make(h.square, h.algebra, std::move(l), false);
    AlgebraMap chi2 = AlgebraMap::make(h.square, h.algebra, std::move(r), false);
    bool left = true, right = true;
    for (int v : h.algebra->main_vars()) {
        AlgebraElement x = AlgebraElement::variable(h.algebra, v);
        AlgebraElement dv = h.coproduct(x);
        AlgebraElement sx = sigma.apply(x);
        if (!(chi1.apply(dv) == sx)) left = false;
        if (!(chi2.apply(dv) == sx)) right = false;
        if (!left && !right) break;
    }
    out.verified = left || right;
    return out;
}

// Translation by a group point c (coordinates in the parameter algebra):
// σ = (χ_c ⊗ id)∘Δ.  The point must satisfy the group's relations.
inline AlgebraMap translation_automorphism(const Hopf& h,
                                           const std::map<std::string, AlgebraElement>& coords) {
    PointOnVariety p = complete_point(h.algebra, coords);
    for (const Poly& r : h.algebra->relations())
        if (!evaluate_at(r, p.value, h.algebra, p.params).is_zero())
            throw DomainError("translation point is not on the group: relation " +
                              r.to_string());
    std::map<int, AlgebraElement> images;
    for (int w : h.square->main_vars()) {
        auto sv = detail::split_square_var(h, w);
        if (sv.slot == 1)
            images[w] = transport(p.value.at(sv.base_var), h.algebra);
        else
            images[w] = AlgebraElement::variable(h.algebra, sv.base_var);
    }
    AlgebraMap chi_id = AlgebraMap::make(h.square, h.algebra, std::move(images), false);
    std::map<int, AlgebraElement> sigma_images;
    for (int v : h.algebra->main_vars())
        sigma_images[v] = chi_id.apply(h.coproduct(AlgebraElement::variable(h.algebra, v)));
    return AlgebraMap::make(h.algebra, h.algebra, std::move(sigma_images), /*check=*/true);
}

} // namespace dk
