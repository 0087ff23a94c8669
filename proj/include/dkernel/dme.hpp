#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "ideal.hpp"

namespace dk {

// A candidate prime δ-ideal.  Primality is trusted input, recorded and echoed in
// every report; all verdicts are relative to the supplied family.
struct DeltaIdealCandidate {
    std::string name;
    Ideal ideal;
    bool claimed_prime = false;
};

// δ(I) ⊆ I, checked on generators.  For a twisted δ the twist must preserve I as
// well, otherwise stability of the generated ideal does not follow.
inline CheckResult is_delta_ideal(const Ideal& I, const Derivation& d) {
    if (I.algebra() != d.algebra())
        throw AlgebraMismatch("ideal and derivation live on different algebras");
    if (d.twisted())
        for (const Poly& g : I.generators())
            if (!I.contains(d.twist()->apply_poly(g)))
                return CheckResult::fail("twist image of " + g.to_string() +
                                         " leaves the ideal");
    for (const Poly& g : I.generators())
        if (!I.contains(d.apply(AlgebraElement(I.algebra(), g))))
            return CheckResult::fail(g.to_string());
    return CheckResult::pass();
}

inline CheckResult is_sigma_delta_ideal(const Ideal& I, const AlgebraMap& sigma,
                                        const Derivation& d) {
    if (I.algebra() != sigma.source() || sigma.source() != sigma.target())
        throw AlgebraMismatch("sigma must be an endomorphism of the ideal's algebra");
    if (I.algebra() != d.algebra())
        throw AlgebraMismatch("ideal and derivation live on different algebras");
    for (const Poly& g : I.generators()) {
        if (!I.contains(sigma.apply_poly(g)))
            return CheckResult::fail("sigma(" + g.to_string() + ") leaves the ideal");
        if (!I.contains(d.apply(AlgebraElement(I.algebra(), g))))
            return CheckResult::fail("delta(" + g.to_string() + ") leaves the ideal");
    }
    return CheckResult::pass();
}

struct LocallyClosedReport {
    bool verdict = false;
    bool empty_family = false;      // no candidate strictly contains P; true by convention
    std::optional<Ideal> intersection;
    std::string witness;            // a generator of the intersection outside P
    std::vector<std::string> used;  // candidates that entered the intersection
};

// Definition-level check of local closedness relative to the supplied family:
// ∩{Q ∈ candidates : Q ⊋ P} strictly contains P.  Every candidate (and P) must be
// δ-stable; an unstable one is a usage error, not a verdict.
inline LocallyClosedReport check_locally_closed_among(
    const DeltaIdealCandidate& P, const std::vector<DeltaIdealCandidate>& candidates,
    const Derivation& d) {
    CheckResult st = is_delta_ideal(P.ideal, d);
    if (!st.ok)
        throw DomainError("candidate '" + P.name + "' is not a delta-ideal: " + st.certificate);
    LocallyClosedReport rep;
    std::vector<const DeltaIdealCandidate*> above;
    for (auto& Q : candidates) {
        CheckResult qs = is_delta_ideal(Q.ideal, d);
        if (!qs.ok)
            throw DomainError("candidate '" + Q.name + "' is not a delta-ideal: " +
                              qs.certificate);
        if (P.ideal.strictly_inside(Q.ideal)) above.push_back(&Q);
    }
    if (above.empty()) {
        rep.verdict = true;
        rep.empty_family = true;
        return rep;
    }
    Ideal meet = above.front()->ideal;
    rep.used.push_back(above.front()->name);
    for (size_t i = 1; i < above.size(); ++i) {
        meet = meet.intersect(above[i]->ideal);
        rep.used.push_back(above[i]->name);
    }
    rep.intersection = meet;
    for (const Poly& g : meet.generators())
        if (!P.ideal.contains(g)) {
            rep.verdict = true;
            rep.witness = g.to_string();
            break;
        }
    return rep;
}

enum class RationalityVerdict {
    NotConstant,       // q·δp − p·δq ∉ P: the fraction is not a δ-constant
    ConstantScalar,    // constant and equal to a scalar mod P: no refutation
    ConstantNonScalar, // constant and provably not a scalar: δ-rationality refuted
    ConstantAmbiguous  // constant; scalarity undecided over this coefficient model
};

struct RationalityReport {
    RationalityVerdict verdict = RationalityVerdict::NotConstant;
    bool refutes = false; // exactly the ConstantNonScalar case
    std::string lambda;   // the matched scalar, when one is found
    std::string detail;
};

namespace detail {

// total degree in the main (non-parameter) variables
inline int main_degree(const Poly& p, const AlgebraPtr& a) {
    int deg = 0;
    for (auto& [m, c] : p.terms()) {
        int d = 0;
        for (auto& [v, e] : m.exponents())
            if (!a->table()->is_parameter(v)) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

// main-variable monomial -> parameter-polynomial coefficient
inline std::map<Monomial, Poly> split_by_main(const Poly& p, const AlgebraPtr& a) {
    std::map<Monomial, Poly> groups;
    for (auto& [m, c] : p.terms()) {
        Monomial main, par;
        for (auto& [v, e] : m.exponents()) {
            if (a->table()->is_parameter(v)) par = par * Monomial::var(v, e);
            else main = main * Monomial::var(v, e);
        }
        auto [it, fresh] = groups.try_emplace(main, Poly::zero(a->table()));
        it->second += Poly::term(a->table(), c, par);
    }
    return groups;
}

} // namespace detail

// δ(p/q) = 0 in Frac(R/P) iff q·δp − p·δq ∈ P (quotient rule).  A constant that is
// no scalar refutes δ-rationality of P.  Scalars are ratios of parameter polynomials
// here; proportionality of the normal forms decides that exactly, but constants
// algebraic over the parameters are beyond this coefficient model, so a positive
// proportionality that membership cannot confirm is reported as ambiguous.
inline RationalityReport check_rationality_witness(const DeltaIdealCandidate& P,
                                                   const AlgebraElement& p,
                                                   const AlgebraElement& q,
                                                   const Derivation& d) {
    const AlgebraPtr& A = d.algebra();
    if (P.ideal.algebra() != A || p.algebra() != A || q.algebra() != A)
        throw AlgebraMismatch("rationality data spread over different algebras");
    if (P.ideal.contains(q)) throw DomainError("denominator lies in the candidate ideal");

    RationalityReport rep;
    if (!P.ideal.contains(q * d(p) - p * d(q))) {
        rep.verdict = RationalityVerdict::NotConstant;
        rep.detail = "q*delta(p) - p*delta(q) is not in the ideal";
        return rep;
    }

    Poly pbar = normal_form(p.rep(), P.ideal.basis(), A->order(), A->options());
    Poly qbar = normal_form(q.rep(), P.ideal.basis(), A->order(), A->options());
    if (pbar.is_zero()) {
        rep.verdict = RationalityVerdict::ConstantScalar;
        rep.lambda = "0";
        return rep;
    }

    auto pg = detail::split_by_main(pbar, A);
    auto qg = detail::split_by_main(qbar, A);

    // p̄ = λ·q̄ for a scalar λ forces the main-monomial coefficient vectors to be
    // proportional over the parameters.
    bool proportional = pg.size() == qg.size();
    if (proportional)
        for (auto it = pg.begin(), jt = qg.begin(); it != pg.end(); ++it, ++jt)
            if (!(it->first == jt->first)) { proportional = false; break; }
    if (proportional) {
        auto it = pg.begin();
        auto jt = qg.begin();
        const Poly &A0 = it->second, &B0 = jt->second;
        for (++it, ++jt; it != pg.end(); ++it, ++jt)
            if (!(A0 * jt->second == it->second * B0)) { proportional = false; break; }
        if (proportional) {
            auto quotient = exact_divide(A0, B0, A->order());
            if (quotient) {
                AlgebraElement lam(A, *quotient);
                if (P.ideal.contains(p - lam * q)) {
                    rep.verdict = RationalityVerdict::ConstantScalar;
                    rep.lambda = lam.to_string();
                    return rep;
                }
            } else {
                AlgebraElement a0(A, A0), b0(A, B0);
                if (P.ideal.contains(b0 * p - a0 * q)) {
                    rep.verdict = RationalityVerdict::ConstantScalar;
                    rep.lambda = "(" + A0.to_string() + ") / (" + B0.to_string() + ")";
                    return rep;
                }
            }
            rep.verdict = RationalityVerdict::ConstantAmbiguous;
            rep.detail = "leading proportionality found but membership does not confirm it";
            return rep;
        }
    }

    // Non-proportionality over Frac(Q[params]) refutes scalarity only when the
    // quotient field is purely transcendental over the parameters.  An algebraic
    // quotient (a relation of main degree >= 2, in P or in the ambient ring beyond
    // its localizations) can hide scalars algebraic over the constants, e.g. u/v
    // with u^2 = 2v^2; there we report ambiguity instead of a refutation.
    bool pure = A->relations().size() == A->units().size();
    if (pure)
        for (const Poly& g : P.ideal.raw_basis())
            if (detail::main_degree(g, A) > 1) { pure = false; break; }
    if (!pure) {
        rep.verdict = RationalityVerdict::ConstantAmbiguous;
        rep.detail = "p is no parameter-rational multiple of q, but the quotient is "
                     "algebraic over the parameters, so an algebraic scalar remains possible";
        return rep;
    }
    rep.verdict = RationalityVerdict::ConstantNonScalar;
    rep.refutes = true;
    rep.detail = "p is no scalar multiple of q modulo the ideal "
                 "(scalars rational in the parameters)";
    return rep;
}

struct PrimitivityReport {
    bool verdict = false;
    std::string intervening; // the candidate witnessing failure, when there is one
};

// Definition-level primitivity relative to the family: P is maximal among the
// supplied δ-ideals inside m, i.e. no candidate Q has P ⊊ Q ⊆ m.
inline PrimitivityReport check_primitivity_witness(const DeltaIdealCandidate& P,
                                                   const Ideal& m,
                                                   const std::vector<DeltaIdealCandidate>& candidates,
                                                   const Derivation& d) {
    if (!m.is_proper()) throw DomainError("the maximal ideal is the unit ideal");
    if (!m.contains_ideal(P.ideal))
        throw DomainError("candidate '" + P.name + "' is not contained in the maximal ideal");
    CheckResult st = is_delta_ideal(P.ideal, d);
    if (!st.ok)
        throw DomainError("candidate '" + P.name + "' is not a delta-ideal: " + st.certificate);
    PrimitivityReport rep;
    rep.verdict = true;
    for (auto& Q : candidates) {
        CheckResult qs = is_delta_ideal(Q.ideal, d);
        if (!qs.ok)
            throw DomainError("candidate '" + Q.name + "' is not a delta-ideal: " +
                              qs.certificate);
        if (P.ideal.strictly_inside(Q.ideal) && m.contains_ideal(Q.ideal)) {
            rep.verdict = false;
            rep.intervening = Q.name;
            break;
        }
    }
    return rep;
}

} // namespace dk
