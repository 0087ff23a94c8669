#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace dk {

// Ideal of a presented algebra, held as raw generators over the ambient table.
// Membership and bases always work with the effective generating set
// raw generators ∪ ambient relations, i.e. with the ideal of the coordinate ring.
// raw_basis()/raw_contains() ignore the relations; prolongation checks use them to
// test literal containments over the free ring.
class Ideal {
public:
    Ideal() = default;

    static Ideal make(AlgebraPtr alg, std::vector<Poly> gens) {
        auto impl = std::make_shared<Impl>();
        impl->alg = std::move(alg);
        for (Poly& g : gens) {
            Poly a = g.with_table(impl->alg->table());
            if (!a.is_zero()) impl->gens.push_back(std::move(a));
        }
        Ideal i;
        i.impl_ = std::move(impl);
        return i;
    }

    static Ideal make(const AlgebraPtr& alg, const std::vector<AlgebraElement>& gens) {
        std::vector<Poly> ps;
        for (auto& g : gens) {
            if (g.algebra() != alg) throw AlgebraMismatch("generator outside the ambient algebra");
            ps.push_back(g.rep());
        }
        return make(alg, std::move(ps));
    }

    const AlgebraPtr& algebra() const { return impl_->alg; }
    const std::vector<Poly>& generators() const { return impl_->gens; }

    const std::vector<Poly>& basis() const {
        std::call_once(impl_->basis_once, [this] {
            std::vector<Poly> gens = impl_->gens;
            for (const Poly& r : impl_->alg->relations())
                gens.push_back(r.with_table(impl_->alg->table()));
            impl_->basis = buchberger(gens, impl_->alg->order(), impl_->alg->options());
        });
        return impl_->basis;
    }

    const std::vector<Poly>& raw_basis() const {
        std::call_once(impl_->raw_once, [this] {
            impl_->raw = buchberger(impl_->gens, impl_->alg->order(), impl_->alg->options());
        });
        return impl_->raw;
    }

    bool contains(const Poly& p) const {
        return normal_form(p.with_table(impl_->alg->table()), basis(), impl_->alg->order(),
                           impl_->alg->options())
            .is_zero();
    }
    bool contains(const AlgebraElement& e) const { return contains(e.rep()); }

    bool raw_contains(const Poly& p) const {
        return normal_form(p.with_table(impl_->alg->table()), raw_basis(),
                           impl_->alg->order(), impl_->alg->options())
            .is_zero();
    }

    bool is_proper() const { return !basis_is_unit_ideal(basis()); }

    bool contains_ideal(const Ideal& other) const {
        for (const Poly& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    bool equals(const Ideal& other) const {
        return contains_ideal(other) && other.contains_ideal(*this);
    }

    // Proper containment this ⊊ other, as ideals of the coordinate ring.
    bool strictly_inside(const Ideal& other) const {
        return other.contains_ideal(*this) && !contains_ideal(other);
    }

    Ideal intersect(const Ideal& other) const {
        if (impl_->alg != other.impl_->alg)
            throw AlgebraMismatch("intersection of ideals in different algebras");
        std::vector<Poly> gens =
            intersect_ideals(basis(), other.basis(), impl_->alg->table(), impl_->alg->options());
        return make(impl_->alg, std::move(gens));
    }

    // Generators of the contraction to the subring on `keep` (parameters always kept).
    Ideal eliminate(const std::vector<std::string>& keep) const {
        const VarTablePtr& t = impl_->alg->table();
        std::vector<bool> kept(t->size(), false);
        for (int v = 0; v < t->size(); ++v)
            if (t->is_parameter(v)) kept[v] = true;
        for (auto& name : keep) kept[t->require(name)] = true;
        std::vector<Poly> gens = impl_->gens;
        for (const Poly& r : impl_->alg->relations()) gens.push_back(r.with_table(t));
        std::vector<Poly> out = eliminate_vars(
            gens, t, [&](int v) { return !kept[v]; }, impl_->alg->options());
        return make(impl_->alg, std::move(out));
    }

    bool radical_contains(const Poly& p) const {
        std::vector<Poly> gens = impl_->gens;
        for (const Poly& r : impl_->alg->relations())
            gens.push_back(r.with_table(impl_->alg->table()));
        return radical_member(p.with_table(impl_->alg->table()), gens, impl_->alg->table(),
                              impl_->alg->options());
    }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < impl_->gens.size(); ++i) {
            if (i) s += ", ";
            s += impl_->gens[i].to_string();
        }
        if (impl_->gens.empty()) s += "0";
        return s + ")";
    }

private:
    struct Impl {
        AlgebraPtr alg;
        std::vector<Poly> gens;
        mutable std::once_flag basis_once, raw_once;
        mutable std::vector<Poly> basis, raw;
    };

    std::shared_ptr<Impl> impl_;
};

} // namespace dk
