#pragma once

#include <map>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "ideal.hpp"

namespace dk {

// Coordinate ring of the prolongation: the base table extended by one primed variable
// per main variable, carrying the base relations together with their formal
// derivatives Σ ∂P/∂v · v'.  Units survive (their defining relations come along).
struct ProlongedRing {
    AlgebraPtr algebra;
    std::map<int, int> prime_of; // base main var id -> primed var id (ids shared tables)
};

inline std::string prime_name(const std::string& base) { return base + "'"; }

inline std::vector<Poly> prolong_generators(const std::vector<Poly>& gens,
                                            const VarTablePtr& base_table,
                                            const VarTablePtr& ext_table,
                                            const std::map<int, int>& prime_of) {
    std::vector<Poly> out;
    for (const Poly& g : gens) {
        Poly gx = g.with_table(ext_table);
        out.push_back(gx);
        Poly dg(ext_table);
        for (auto& [v, pv] : prime_of)
            dg += gx.derivative(v) * Poly::variable(ext_table, pv);
        out.push_back(dg);
    }
    return out;
}

inline ProlongedRing prolong_ring(const AlgebraPtr& a) {
    std::vector<VarTable::Entry> primes;
    for (int v : a->main_vars()) primes.push_back({prime_name(a->table()->name(v)), false});
    VarTablePtr ext = a->table()->extended(primes);
    std::map<int, int> prime_of;
    for (int v : a->main_vars()) prime_of[v] = ext->require(prime_name(a->table()->name(v)));

    std::vector<Poly> rels =
        prolong_generators(a->relations(), a->table(), ext, prime_of);
    std::vector<Unit> units;
    for (auto& u : a->units()) units.push_back({u.element.with_table(ext), u.inverse_var});
    return {Algebra::make(ext, std::move(rels), std::move(units), a->options()), prime_of};
}

// Prolongation ideal of an ideal J of k[X]: generators {P, Σ ∂P/∂X_i·X'_i} over the
// free ring on (X, X'), taking the effective generators (raw ∪ ambient relations).
inline Ideal prolongation_ideal(const Ideal& J) {
    const AlgebraPtr& a = J.algebra();
    std::vector<VarTable::Entry> primes;
    for (int v : a->main_vars()) primes.push_back({prime_name(a->table()->name(v)), false});
    VarTablePtr ext = a->table()->extended(primes);
    std::map<int, int> prime_of;
    for (int v : a->main_vars()) prime_of[v] = ext->require(prime_name(a->table()->name(v)));

    std::vector<Poly> gens = J.generators();
    for (const Poly& r : a->relations()) gens.push_back(r);
    AlgebraPtr free_ext = Algebra::make(ext, {}, {}, a->options());
    return Ideal::make(free_ext, prolong_generators(gens, a->table(), ext, prime_of));
}

// Affine D-variety: a presented coordinate ring together with a polynomial section of
// the prolongation, i.e. one coordinate s_v per main variable.  Constructing one
// demands the induced derivation be well defined — that is precisely s(V) ⊆ τV.
struct AffineDVariety {
    AlgebraPtr algebra;
    Derivation induced;

    static AffineDVariety from_derivation(const Derivation& d) {
        CheckResult wd = d.well_defined();
        if (!wd.ok)
            throw DomainError("section does not map the variety into its prolongation: " +
                              wd.certificate);
        return {d.algebra(), d};
    }

    static AffineDVariety from_section(const AlgebraPtr& a,
                                       const std::map<std::string, Poly>& section) {
        std::map<int, AlgebraElement> images;
        for (auto& [name, p] : section)
            images[a->table()->require(name)] = AlgebraElement(a, p);
        return from_derivation(Derivation::make(a, std::move(images)));
    }

    Poly section_of(int v) const { return induced.image(v).rep(); }
};

// Direct route: W = V(J) is a D-subvariety iff δ_s(g) ∈ J for every generator g.
// Precondition J ⊇ I(V) is checked literally on the raw generators.
inline CheckResult is_d_subvariety(const AffineDVariety& V, const Ideal& J) {
    if (J.algebra() != V.algebra) throw AlgebraMismatch("candidate over a different ring");
    for (const Poly& r : V.algebra->relations())
        if (!J.raw_contains(r))
            return CheckResult::fail("candidate does not contain defining relation " +
                                     r.to_string());
    if (!J.is_proper()) return CheckResult::fail("candidate is the unit ideal");
    for (const Poly& g : J.generators())
        if (!J.contains(V.induced.apply(AlgebraElement(V.algebra, g))))
            return CheckResult::fail(g.to_string());
    return CheckResult::pass();
}

// Oracle route via the prolongation: s(W) ⊆ τW, i.e. substituting X' ↦ s(X) into each
// generator of the prolongation ideal of J lands back in J.
inline CheckResult is_d_subvariety_oracle(const AffineDVariety& V, const Ideal& J) {
    if (J.algebra() != V.algebra) throw AlgebraMismatch("candidate over a different ring");
    for (const Poly& r : V.algebra->relations())
        if (!J.raw_contains(r))
            return CheckResult::fail("candidate does not contain defining relation " +
                                     r.to_string());
    if (!J.is_proper()) return CheckResult::fail("candidate is the unit ideal");

    Ideal tau = prolongation_ideal(J);
    const VarTablePtr& ext = tau.algebra()->table();
    std::map<int, Poly> back;
    for (int v : V.algebra->main_vars()) {
        int pv = ext->require(prime_name(V.algebra->table()->name(v)));
        back[pv] = V.section_of(v).with_table(ext);
    }
    for (const Poly& q : tau.generators()) {
        Poly image = q.substitute(back, ext).transport(V.algebra->table());
        if (!J.contains(image)) return CheckResult::fail(q.to_string());
    }
    return CheckResult::pass();
}

// Evaluate a poly of A at a point: main variables get their coordinate values in the
// parameter algebra, parameters stay themselves.
inline AlgebraElement evaluate_at(const Poly& p, const std::map<int, AlgebraElement>& value,
                                  const AlgebraPtr& a, const AlgebraPtr& params) {
    AlgebraElement acc = AlgebraElement::zero(params);
    for (auto& [m, c] : p.terms()) {
        AlgebraElement t = AlgebraElement::constant(params, c);
        for (auto& [v, e] : m.exponents()) {
            if (a->table()->is_parameter(v))
                t *= AlgebraElement::variable(params, a->table()->name(v))
                         .pow(static_cast<unsigned>(e));
            else
                t *= value.at(v).pow(static_cast<unsigned>(e));
        }
        acc += t;
    }
    return acc;
}

// A point with scalar (parameter-algebra) coordinates: one per primary variable;
// coordinates of declared inverses are derived from the unit values.
struct PointOnVariety {
    std::map<int, AlgebraElement> value; // main var id -> coordinate in params
    AlgebraPtr params;
};

inline PointOnVariety complete_point(const AlgebraPtr& a,
                                     const std::map<std::string, AlgebraElement>& coords) {
    AlgebraPtr params = parameter_algebra(a);
    std::map<int, AlgebraElement> value;
    for (auto& [name, val] : coords) {
        AlgebraElement v = val.algebra() == params ? val : transport(val, params);
        value[a->table()->require(name)] = v;
    }
    for (int v : a->primary_vars())
        if (!value.count(v))
            throw DomainError("point misses coordinate '" + a->table()->name(v) + "'");
    for (auto& u : a->units()) {
        if (value.count(u.inverse_var)) continue;
        AlgebraElement fv = evaluate_at(u.element, value, a, params);
        auto inv = try_invert(fv);
        if (!inv)
            throw DomainError("unit " + u.element.to_string() +
                              " is not invertible at the point");
        value[u.inverse_var] = *inv;
    }
    return {std::move(value), std::move(params)};
}

struct ConstantPointReport {
    bool on_variety = false;
    bool constant = false;
    std::string certificate;
};

inline ConstantPointReport is_constant_d_point(const AffineDVariety& V,
                                               const std::map<std::string, AlgebraElement>& coords) {
    const AlgebraPtr& a = V.algebra;
    PointOnVariety p = complete_point(a, coords);
    for (const Poly& r : a->relations())
        if (!evaluate_at(r, p.value, a, p.params).is_zero())
            return {false, false, "relation " + r.to_string() + " does not vanish at the point"};
    for (int v : a->main_vars())
        if (!evaluate_at(V.section_of(v), p.value, a, p.params).is_zero())
            return {true, false,
                    "section coordinate for '" + a->table()->name(v) + "' does not vanish"};
    return {true, true, ""};
}

} // namespace dk
