#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groebner.hpp"

namespace dk {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A declared invertible element: `element * inverse_var - 1` is among the relations.
struct Unit {
    Poly element;
    int inverse_var;
};

// Finitely presented commutative algebra k[vars]/(relations), k = Q extended by the
// formal parameters in the table.  Immutable after construction; the reduced Groebner
// basis of the relation ideal is computed once, on first use, under a grevlex order.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraPtr make(VarTablePtr table, std::vector<Poly> relations,
                           std::vector<Unit> units = {}, GroebnerOptions opts = {}) {
        auto a = AlgebraPtr(new Algebra(std::move(table), std::move(relations),
                                        std::move(units), opts));
        if (basis_is_unit_ideal(a->basis()))
            throw DomainError("relations generate the unit ideal");
        return a;
    }

    // Free polynomial ring on `vars` with formal parameters `params`.
    static AlgebraPtr free_ring(const std::vector<std::string>& vars,
                                const std::vector<std::string>& params = {},
                                GroebnerOptions opts = {}) {
        std::vector<VarTable::Entry> entries;
        for (auto& v : vars) entries.push_back({v, false});
        for (auto& p : params) entries.push_back({p, true});
        return make(VarTable::make(entries), {}, {}, opts);
    }

    const VarTablePtr& table() const { return table_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const std::vector<Unit>& units() const { return units_; }
    const GroebnerOptions& options() const { return opts_; }
    const MonomialOrder& order() const { return order_; }

    const std::vector<Poly>& basis() const {
        std::call_once(basis_once_, [this] {
            std::vector<Poly> aligned;
            for (const Poly& r : relations_) aligned.push_back(r.with_table(table_));
            basis_ = buchberger(aligned, order_, opts_);
        });
        return basis_;
    }

    Poly reduce(const Poly& p) const {
        return normal_form(p.with_table(table_), basis(), order_, opts_);
    }

    std::vector<int> main_vars() const {
        std::vector<int> vs;
        for (int v = 0; v < table_->size(); ++v)
            if (!table_->is_parameter(v)) vs.push_back(v);
        return vs;
    }

    std::vector<int> parameters() const {
        std::vector<int> vs;
        for (int v = 0; v < table_->size(); ++v)
            if (table_->is_parameter(v)) vs.push_back(v);
        return vs;
    }

    bool is_inverse_var(int v) const {
        for (auto& u : units_)
            if (u.inverse_var == v) return true;
        return false;
    }

    // Main generators that are not declared inverses; maps and derivations are
    // specified on these, with inverse images derived.
    std::vector<int> primary_vars() const {
        std::vector<int> vs;
        for (int v : main_vars())
            if (!is_inverse_var(v)) vs.push_back(v);
        return vs;
    }

private:
    Algebra(VarTablePtr table, std::vector<Poly> relations, std::vector<Unit> units,
            GroebnerOptions opts)
        : table_(std::move(table)), relations_(std::move(relations)),
          units_(std::move(units)), opts_(opts),
          order_(MonomialOrder::grevlex(table_->size())) {}

    VarTablePtr table_;
    std::vector<Poly> relations_;
    std::vector<Unit> units_;
    GroebnerOptions opts_;
    MonomialOrder order_;
    mutable std::once_flag basis_once_;
    mutable std::vector<Poly> basis_;
    mutable std::once_flag params_once_;
    mutable AlgebraPtr params_;

    friend AlgebraPtr parameter_algebra(const AlgebraPtr& a);
};

// Residue class in an Algebra; the representative is always the Groebner normal form,
// so equality of elements is representative equality.
class AlgebraElement {
public:
    AlgebraElement() = default;

    AlgebraElement(AlgebraPtr alg, const Poly& rep)
        : alg_(std::move(alg)), rep_(alg_->reduce(rep)) {}

    static AlgebraElement zero(const AlgebraPtr& a) {
        return AlgebraElement(a, Poly::zero(a->table()));
    }
    static AlgebraElement one(const AlgebraPtr& a) { return constant(a, 1); }
    static AlgebraElement constant(const AlgebraPtr& a, const Rational& c) {
        return AlgebraElement(a, Poly::constant(a->table(), c));
    }
    static AlgebraElement variable(const AlgebraPtr& a, int v) {
        return AlgebraElement(a, Poly::variable(a->table(), v));
    }
    static AlgebraElement variable(const AlgebraPtr& a, const std::string& name) {
        return variable(a, a->table()->require(name));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const Poly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_scalar() const { return rep_.is_constant(); }
    Rational scalar_value() const { return rep_.constant_value(); }

    AlgebraElement operator-() const { return raw(alg_, -rep_); }
    AlgebraElement operator+(const AlgebraElement& o) const {
        require_same(o);
        return AlgebraElement(alg_, rep_ + o.rep_);
    }
    AlgebraElement operator-(const AlgebraElement& o) const {
        require_same(o);
        return AlgebraElement(alg_, rep_ - o.rep_);
    }
    AlgebraElement operator*(const AlgebraElement& o) const {
        require_same(o);
        return AlgebraElement(alg_, rep_ * o.rep_);
    }
    AlgebraElement operator*(const Rational& c) const { return raw(alg_, rep_ * c); }
    AlgebraElement operator+(const Rational& c) const {
        return AlgebraElement(alg_, rep_ + Poly::constant(alg_->table(), c));
    }
    AlgebraElement operator-(const Rational& c) const { return *this + (-c); }

    AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }
    AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

    AlgebraElement pow(unsigned e) const {
        AlgebraElement acc = one(alg_);
        AlgebraElement b = *this;
        while (e) {
            if (e & 1u) acc *= b;
            if (e >>= 1u) b *= b;
        }
        return acc;
    }

    bool operator==(const AlgebraElement& o) const {
        require_same(o);
        return rep_ == o.rep_;
    }

    std::string to_string() const { return rep_.to_string(); }

private:
    static AlgebraElement raw(const AlgebraPtr& a, Poly p) {
        // already-reduced representative; skips one redundant normal form
        AlgebraElement e;
        e.alg_ = a;
        e.rep_ = std::move(p);
        return e;
    }

    void require_same(const AlgebraElement& o) const {
        if (alg_ != o.alg_) throw AlgebraMismatch("elements of different algebras");
    }

    AlgebraPtr alg_;
    Poly rep_;
};

inline AlgebraElement operator*(const Rational& c, const AlgebraElement& e) { return e * c; }

inline AlgebraElement element(const AlgebraPtr& a, const Poly& p) {
    return AlgebraElement(a, p);
}

// Move an element (or poly) into another algebra whose table contains the same-named
// variables; the result is reduced there.
inline AlgebraElement transport(const AlgebraElement& e, const AlgebraPtr& target) {
    return AlgebraElement(target, e.rep().transport(target->table()));
}

// A := A[1/f].  Appends an inverse variable and the relation f*inv - 1.  Localizing
// twice at the same f returns the original algebra unchanged.
inline AlgebraPtr localize(const AlgebraPtr& a, const Poly& f, const std::string& inv_name) {
    Poly fr = a->reduce(f);
    if (fr.is_zero()) throw DomainError("cannot invert zero");
    for (auto& u : a->units())
        if (a->reduce(u.element) == fr) return a;
    bool param_only = true;
    for (auto& [m, c] : fr.terms())
        if (!m.uses_only([&](int v) { return a->table()->is_parameter(v); }))
            param_only = false;
    VarTablePtr ext = a->table()->extended({{inv_name, param_only}});
    int inv = ext->size() - 1;
    std::vector<Poly> rels;
    for (const Poly& r : a->relations()) rels.push_back(r.with_table(ext));
    rels.push_back(fr.with_table(ext) * Poly::variable(ext, inv) - Poly::constant(ext, 1));
    std::vector<Unit> units = a->units();
    units.push_back({fr.with_table(ext), inv});
    return Algebra::make(ext, std::move(rels), std::move(units), a->options());
}

// Inverse of a reduced element when one is evident: a nonzero scalar, a single term
// whose variables all have declared reciprocal partners, or a scalar multiple of a
// declared unit.  Returns nothing otherwise; this is a syntactic certificate search,
// not a unit test.
inline std::optional<AlgebraElement> try_invert(const AlgebraElement& e) {
    const AlgebraPtr& a = e.algebra();
    const Poly& p = e.rep();
    if (p.is_zero()) return std::nullopt;
    if (p.is_constant())
        return AlgebraElement::constant(a, 1 / p.constant_value());

    // reciprocal partners induced by units whose element is a bare variable
    std::map<int, int> partner;
    for (auto& u : a->units()) {
        const Poly ur = a->reduce(u.element);
        if (ur.term_count() == 1 && ur.terms().begin()->second == 1) {
            const Monomial& m = ur.terms().begin()->first;
            if (m.exponents().size() == 1 && m.exponents()[0].second == 1) {
                partner[m.exponents()[0].first] = u.inverse_var;
                partner[u.inverse_var] = m.exponents()[0].first;
            }
        }
    }
    if (p.term_count() == 1) {
        auto& [m, c] = *p.terms().begin();
        Poly inv = Poly::constant(a->table(), 1 / c);
        bool ok = true;
        for (auto& [v, ex] : m.exponents()) {
            auto it = partner.find(v);
            if (it == partner.end()) { ok = false; break; }
            inv *= Poly::variable(a->table(), it->second, ex);
        }
        if (ok) return AlgebraElement(a, inv);
    }
    for (auto& u : a->units()) {
        Poly ur = a->reduce(u.element);
        if (ur.is_zero()) continue;
        // e == c * u.element for a rational c?
        const Rational c = p.terms().begin()->second / ur.terms().begin()->second;
        if (p.terms().begin()->first == ur.terms().begin()->first && p == ur * c)
            return AlgebraElement(a, Poly::variable(a->table(), u.inverse_var) * (1 / c));
    }
    return std::nullopt;
}

// Parameter-only subalgebra: the scalars of A.  Contains every parameter variable and
// the parameter-only relations (and parameter units).  Cached per algebra, so scalars
// recovered through different routes live in one instance and compare directly.
inline AlgebraPtr parameter_algebra(const AlgebraPtr& a) {
    if (a->main_vars().empty()) return a;
    std::call_once(a->params_once_, [&] {
        std::vector<VarTable::Entry> entries;
        for (int v : a->parameters()) entries.push_back({a->table()->name(v), true});
        VarTablePtr table = VarTable::make(entries);
        auto param_only = [&](const Poly& p) {
            for (auto& [m, c] : p.terms())
                if (!m.uses_only([&](int v) { return a->table()->is_parameter(v); }))
                    return false;
            return true;
        };
        std::vector<Poly> rels;
        for (const Poly& r : a->relations())
            if (param_only(r)) rels.push_back(r.transport(table));
        std::vector<Unit> units;
        for (auto& u : a->units())
            if (a->table()->is_parameter(u.inverse_var) && param_only(u.element))
                units.push_back({u.element.transport(table),
                                 table->require(a->table()->name(u.inverse_var))});
        a->params_ = Algebra::make(table, std::move(rels), std::move(units), a->options());
    });
    return a->params_;
}

// m-fold tensor power over the parameter scalars.  Main variables are copied once per
// factor with an @k suffix; parameters (and parameter-only relations) are shared.
struct TensorPower {
    AlgebraPtr algebra;
    // var_maps[k][v] = id in the tensor algebra of factor k's copy of source var v;
    // parameters map to themselves (same name).
    std::vector<std::map<int, int>> var_maps;
};

inline TensorPower tensor_power(const AlgebraPtr& a, int m) {
    if (m < 1) throw DomainError("tensor power needs at least one factor");
    std::vector<VarTable::Entry> entries;
    for (int k = 1; k <= m; ++k)
        for (int v : a->main_vars())
            entries.push_back({a->table()->name(v) + "@" + std::to_string(k), false});
    for (int v : a->parameters()) entries.push_back({a->table()->name(v), true});
    VarTablePtr table = VarTable::make(entries);

    std::vector<std::map<int, int>> var_maps(m);
    for (int k = 0; k < m; ++k) {
        for (int v : a->main_vars())
            var_maps[k][v] =
                table->require(a->table()->name(v) + "@" + std::to_string(k + 1));
        for (int v : a->parameters())
            var_maps[k][v] = table->require(a->table()->name(v));
    }

    auto param_only = [&](const Poly& p) {
        for (auto& [mono, c] : p.terms())
            if (!mono.uses_only([&](int v) { return a->table()->is_parameter(v); }))
                return false;
        return true;
    };
    auto relocate = [&](const Poly& p, int k) {
        Poly r(table);
        for (auto& [mono, c] : p.terms()) {
            Monomial n;
            for (auto& [v, e] : mono.exponents())
                n = n * Monomial::var(var_maps[k].at(v), e);
            r += Poly::term(table, c, n);
        }
        return r;
    };

    std::vector<Poly> rels;
    std::vector<Unit> units;
    for (const Poly& r : a->relations()) {
        if (param_only(r)) { rels.push_back(r.transport(table)); continue; }
        for (int k = 0; k < m; ++k) rels.push_back(relocate(r, k));
    }
    for (auto& u : a->units()) {
        if (a->table()->is_parameter(u.inverse_var)) {
            units.push_back({u.element.transport(table),
                             table->require(a->table()->name(u.inverse_var))});
            continue;
        }
        for (int k = 0; k < m; ++k)
            units.push_back({relocate(u.element, k), var_maps[k].at(u.inverse_var)});
    }
    return {Algebra::make(table, std::move(rels), std::move(units), a->options()),
            std::move(var_maps)};
}

} // namespace dk
