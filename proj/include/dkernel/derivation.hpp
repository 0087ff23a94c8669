#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "map.hpp"

namespace dk {

// k-linear map δ on a presented algebra satisfying the σ-twisted Leibniz rule
//   δ(rs) = σ(r)δ(s) + δ(r)s
// with σ an algebra endomorphism (identity when no twist is given).  Parameters are
// δ-constants.  Images are stored for every main variable; images of declared inverse
// variables are derived from δ(f·f_inv) = 0 unless supplied:
//   δ(f_inv) = -σ(f_inv)·δ(f)·f_inv.
class Derivation {
public:
    Derivation() = default;

    static Derivation make(AlgebraPtr alg, std::map<int, AlgebraElement> images,
                           std::optional<AlgebraMap> twist = std::nullopt) {
        Derivation d;
        d.alg_ = std::move(alg);
        d.twist_ = std::move(twist);
        d.images_ = std::move(images);
        if (d.twist_ && (d.twist_->source() != d.alg_ || d.twist_->target() != d.alg_))
            throw AlgebraMismatch("twist must be an endomorphism of the same algebra");
        for (auto& [v, img] : d.images_) {
            if (d.alg_->table()->is_parameter(v))
                throw DomainError("parameters are constants; no image for '" +
                                  d.alg_->table()->name(v) + "'");
            if (img.algebra() != d.alg_)
                throw AlgebraMismatch("derivation image outside the algebra");
        }
        // derive missing inverse images, in unit declaration order
        for (auto& u : d.alg_->units()) {
            if (d.images_.count(u.inverse_var)) continue;
            AlgebraElement f(d.alg_, u.element);
            AlgebraElement finv = AlgebraElement::variable(d.alg_, u.inverse_var);
            AlgebraElement df = d.apply_known(f.rep());
            AlgebraElement sfinv = d.twist_ ? d.twist_->apply(finv) : finv;
            d.images_[u.inverse_var] = -(sfinv * df * finv);
        }
        for (int v : d.alg_->main_vars())
            if (!d.images_.count(v))
                throw DomainError("no derivation image for '" + d.alg_->table()->name(v) + "'");
        return d;
    }

    static Derivation make_by_name(const AlgebraPtr& alg,
                                   const std::map<std::string, AlgebraElement>& images,
                                   std::optional<AlgebraMap> twist = std::nullopt) {
        std::map<int, AlgebraElement> byid;
        for (auto& [name, img] : images) byid[alg->table()->require(name)] = img;
        return make(alg, std::move(byid), std::move(twist));
    }

    static Derivation zero(const AlgebraPtr& alg) {
        std::map<int, AlgebraElement> images;
        for (int v : alg->main_vars()) images[v] = AlgebraElement::zero(alg);
        return make(alg, std::move(images));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    bool twisted() const { return twist_.has_value() && !twist_->is_identity(); }
    const std::optional<AlgebraMap>& twist() const { return twist_; }
    const AlgebraElement& image(int v) const { return images_.at(v); }
    const AlgebraElement& image(const std::string& name) const {
        return images_.at(alg_->table()->require(name));
    }

    AlgebraElement apply(const AlgebraElement& e) const {
        if (e.algebra() != alg_)
            throw AlgebraMismatch("element is not in the derivation's algebra");
        return apply_known(e.rep());
    }

    AlgebraElement operator()(const AlgebraElement& e) const { return apply(e); }

    // Well-definedness on the presented algebra: δ(P) ∈ (relations) per relation P,
    // σ(relations) ⊆ (relations) when twisted, and (twisted only) the pairwise cross
    // conditions σ(u)δ(v) + δ(u)v = σ(v)δ(u) + δ(v)u that make the monomial-wise
    // Leibniz extension independent of factor order.
    CheckResult well_defined() const {
        if (twist_) {
            for (const Poly& r : alg_->relations())
                if (!twist_->apply_poly(r).is_zero())
                    return CheckResult::fail("twist does not preserve relation " + r.to_string());
        }
        for (const Poly& r : alg_->relations())
            if (!apply_known(r).is_zero())
                return CheckResult::fail(r.to_string());
        if (twisted()) {
            const auto vars = alg_->main_vars();
            for (size_t i = 0; i < vars.size(); ++i)
                for (size_t j = i + 1; j < vars.size(); ++j) {
                    AlgebraElement u = AlgebraElement::variable(alg_, vars[i]);
                    AlgebraElement v = AlgebraElement::variable(alg_, vars[j]);
                    AlgebraElement lhs = twist_->apply(u) * image(vars[j]) + image(vars[i]) * v;
                    AlgebraElement rhs = twist_->apply(v) * image(vars[i]) + image(vars[j]) * u;
                    if (!(lhs == rhs))
                        return CheckResult::fail("cross condition fails on (" +
                                                 alg_->table()->name(vars[i]) + ", " +
                                                 alg_->table()->name(vars[j]) + ")");
                }
        }
        return CheckResult::pass();
    }

private:
    // δ on a monomial v1^e1···vn^en, factors taken in ascending variable order:
    //   δ(v^e · rest) = σ(v^e)·δ(rest) + δ(v^e)·rest,
    //   δ(v^e) = Σ_{i<e} σ(v)^i·δ(v)·v^{e-1-i}.
    AlgebraElement apply_known(const Poly& p) const {
        AlgebraElement acc = AlgebraElement::zero(alg_);
        for (auto& [m, c] : p.terms()) {
            std::vector<std::pair<int, int>> factors;
            for (auto& [v, e] : m.exponents())
                if (!alg_->table()->is_parameter(v)) factors.emplace_back(v, e);
            Poly param_part(alg_->table());
            {
                Monomial pm;
                for (auto& [v, e] : m.exponents())
                    if (alg_->table()->is_parameter(v)) pm = pm * Monomial::var(v, e);
                param_part = Poly::term(alg_->table(), c, pm);
            }
            acc += AlgebraElement(alg_, param_part) * monomial_image(factors);
        }
        return acc;
    }

    AlgebraElement monomial_image(const std::vector<std::pair<int, int>>& factors) const {
        AlgebraElement out = AlgebraElement::zero(alg_);
        // suffix products rest_j = prod_{k>j} v_k^{e_k}
        std::vector<AlgebraElement> suffix(factors.size() + 1, AlgebraElement::one(alg_));
        for (size_t k = factors.size(); k-- > 0;)
            suffix[k] = AlgebraElement::variable(alg_, factors[k].first)
                            .pow(static_cast<unsigned>(factors[k].second)) *
                        suffix[k + 1];
        AlgebraElement sigma_prefix = AlgebraElement::one(alg_);
        for (size_t k = 0; k < factors.size(); ++k) {
            auto [v, e] = factors[k];
            AlgebraElement var = AlgebraElement::variable(alg_, v);
            AlgebraElement svar = twist_ ? twist_->apply(var) : var;
            AlgebraElement dpow = AlgebraElement::zero(alg_);
            for (int i = 0; i < e; ++i)
                dpow += svar.pow(static_cast<unsigned>(i)) * image(v) *
                        var.pow(static_cast<unsigned>(e - 1 - i));
            out += sigma_prefix * dpow * suffix[k + 1];
            sigma_prefix *= svar.pow(static_cast<unsigned>(e));
        }
        return out;
    }

    AlgebraPtr alg_;
    std::optional<AlgebraMap> twist_;
    std::map<int, AlgebraElement> images_;
};

// u_0 = a, u_1 = δ(a)/a, u_2 = δ(u_1) - u_1²/2, u_m = δ(u_{m-1}) for m ≥ 3.
// Needs 1/a available (declared unit or invertible scalar) and an untwisted δ.
inline std::vector<AlgebraElement> u_sequence(const Derivation& d, const AlgebraElement& a,
                                              int up_to) {
    if (d.twisted()) throw DomainError("u-sequence needs an untwisted derivation");
    if (up_to < 0) throw DomainError("negative index");
    auto ainv = try_invert(a);
    if (!ainv) throw DomainError("u-sequence needs an invertible a");
    std::vector<AlgebraElement> u;
    u.push_back(a);
    if (up_to >= 1) u.push_back(d(a) * *ainv);
    if (up_to >= 2) u.push_back(d(u[1]) - u[1] * u[1] * rat(1, 2));
    for (int m = 3; m <= up_to; ++m) u.push_back(d(u.back()));
    return u;
}

// Exact division of multivariate polynomials (zero remainder or nothing).
inline std::optional<Poly> exact_divide(const Poly& num, const Poly& den,
                                        const MonomialOrder& ord) {
    if (den.is_zero()) return std::nullopt;
    Poly q(num.table());
    Poly r = num;
    const Monomial dl = den.leading_monomial(ord);
    const Rational dc = den.coefficient(dl);
    while (!r.is_zero()) {
        Monomial rl = r.leading_monomial(ord);
        if (!dl.divides(rl)) return std::nullopt;
        Poly t = Poly::term(r.table(), r.coefficient(rl) / dc, rl.divide(dl));
        q += t;
        r -= t * den;
    }
    return q;
}

struct MagicFit {
    bool found = false;
    bool underdetermined = false; // residual and basis both vanish; c defaulted to 0
    AlgebraElement constant;      // parameter-only element of the algebra
    AlgebraElement residual;      // a·δ²a - 3/2·(δa)², reduced
};

// Solve a·δ²(a) - 3/2·(δa)² = c·(a² - a⁴) for a parameter-only c, exactly.
// Grouping by main-variable monomials turns this into one exact division of
// parameter polynomials, re-verified by a zero normal form.
inline MagicFit fit_magic_constant(const Derivation& d, const AlgebraElement& a) {
    const AlgebraPtr& alg = d.algebra();
    if (a.algebra() != alg) throw AlgebraMismatch("a outside the derivation's algebra");
    AlgebraElement da = d(a);
    AlgebraElement rho = a * d(da) - rat(3, 2) * da * da;
    AlgebraElement b = a * a - (a * a * a * a);

    MagicFit fit;
    fit.residual = rho;
    if (b.is_zero()) {
        if (rho.is_zero()) {
            fit.found = true;
            fit.underdetermined = true;
            fit.constant = AlgebraElement::zero(alg);
        }
        return fit;
    }
    if (rho.is_zero()) {
        fit.found = true;
        fit.constant = AlgebraElement::zero(alg);
        return fit;
    }

    auto is_param = [&](int v) { return alg->table()->is_parameter(v); };
    auto split = [&](const Poly& p) {
        // main monomial -> parameter-polynomial coefficient
        std::map<Monomial, Poly> groups;
        for (auto& [m, c] : p.terms()) {
            Monomial main, par;
            for (auto& [v, e] : m.exponents()) {
                if (is_param(v)) par = par * Monomial::var(v, e);
                else main = main * Monomial::var(v, e);
            }
            auto [it, fresh] = groups.try_emplace(main, Poly::zero(alg->table()));
            it->second += Poly::term(alg->table(), c, par);
        }
        return groups;
    };
    auto rho_groups = split(rho.rep());
    auto b_groups = split(b.rep());

    // candidate c from the structurally largest main monomial of the basis
    const auto& [lead_main, lead_coeff] = *b_groups.rbegin();
    auto it = rho_groups.find(lead_main);
    Poly num = it == rho_groups.end() ? Poly::zero(alg->table()) : it->second;
    auto quotient = exact_divide(num, lead_coeff, alg->order());
    if (!quotient) return fit;

    AlgebraElement c(alg, *quotient);
    if ((rho - c * b).is_zero()) {
        fit.found = true;
        fit.constant = c;
    }
    return fit;
}

} // namespace dk
