#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "poly.hpp"

namespace dk {

struct GroebnerOptions {
    int max_degree = 40;        // cap on the degree of any basis element or reductum
    size_t max_basis = 4096;    // cap on basis size
    size_t max_terms = 200000;  // cap on term count of any intermediate poly
};

namespace detail {

inline void guard(const Poly& p, const GroebnerOptions& opts, const char* where) {
    if (p.degree() > opts.max_degree)
        throw ResourceExhausted(std::string(where) + ": degree cap " +
                                std::to_string(opts.max_degree) + " exceeded");
    if (p.term_count() > opts.max_terms)
        throw ResourceExhausted(std::string(where) + ": term cap exceeded");
}

} // namespace detail

// Full normal form: every monomial of the result is reducible by no element of
// `basis`.  Deterministic for any fixed basis order; unique when the basis is a
// Groebner basis.
inline Poly normal_form(Poly p, const std::vector<Poly>& basis, const MonomialOrder& ord,
                        const GroebnerOptions& opts = {}) {
    Poly remainder(p.table());
    while (!p.is_zero()) {
        detail::guard(p, opts, "normal_form");
        const Monomial lead = p.leading_monomial(ord);
        const Rational lc = p.coefficient(lead);
        bool reduced = false;
        for (const Poly& g0 : basis) {
            if (g0.is_zero()) continue;
            const Monomial& gl = g0.leading_monomial(ord);
            if (!gl.divides(lead)) continue;
            Poly g = g0.table() == p.table() ? g0 : g0.with_table(p.table());
            Rational factor = lc / g.coefficient(gl);
            p -= g * factor * Poly::term(p.table(), 1, lead.divide(gl));
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder += Poly::term(p.table(), lc, lead);
            p -= Poly::term(p.table(), lc, lead);
        }
    }
    return remainder;
}

// Buchberger's algorithm with the normal selection strategy (smallest lcm degree
// first) and both classical skip criteria; the result is the unique reduced Groebner
// basis, monic, sorted by ascending leading monomial.
inline std::vector<Poly> buchberger(const std::vector<Poly>& gens, const MonomialOrder& ord,
                                    const GroebnerOptions& opts = {}) {
    VarTablePtr table;
    for (const Poly& g : gens)
        if (!table || (g.table() && g.table()->size() > table->size())) table = g.table();
    std::vector<Poly> basis;
    for (const Poly& g : gens) {
        if (g.is_zero()) continue;
        detail::guard(g, opts, "buchberger");
        Poly m = (g.table() == table ? g : g.with_table(table)).monic(ord);
        if (std::find(basis.begin(), basis.end(), m) == basis.end())
            basis.push_back(std::move(m));
    }

    // pair key: (lcm degree, lcm, i, j) — the set iterates in processing order
    using PairKey = std::tuple<int, Monomial, size_t, size_t>;
    auto make_key = [&](size_t i, size_t j) {
        Monomial l = Monomial::lcm(basis[i].leading_monomial(ord),
                                   basis[j].leading_monomial(ord));
        return PairKey{l.degree(), l, i, j};
    };

    std::set<PairKey> queue;
    std::set<std::pair<size_t, size_t>> handled;
    for (size_t j = 1; j < basis.size(); ++j)
        for (size_t i = 0; i < j; ++i)
            queue.insert(make_key(i, j));

    auto spoly = [&](const Poly& f, const Poly& g) {
        const Monomial& lf = f.leading_monomial(ord);
        const Monomial& lg = g.leading_monomial(ord);
        Monomial l = Monomial::lcm(lf, lg);
        Poly a = f * Poly::term(f.table(), 1 / f.coefficient(lf), l.divide(lf));
        Poly b = g * Poly::term(g.table(), 1 / g.coefficient(lg), l.divide(lg));
        return a - b;
    };

    while (!queue.empty()) {
        auto [deg, l, i, j] = *queue.begin();
        queue.erase(queue.begin());
        handled.insert({i, j});

        const Monomial& li = basis[i].leading_monomial(ord);
        const Monomial& lj = basis[j].leading_monomial(ord);
        if (Monomial::disjoint(li, lj)) continue; // product criterion
        bool chained = false;                     // chain criterion
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == i || k == j) continue;
            if (!basis[k].leading_monomial(ord).divides(l)) continue;
            auto key1 = std::minmax(i, k);
            auto key2 = std::minmax(j, k);
            if (handled.count({key1.first, key1.second}) &&
                handled.count({key2.first, key2.second}))
                chained = true;
        }
        if (chained) continue;

        Poly r = normal_form(spoly(basis[i], basis[j]), basis, ord, opts);
        if (r.is_zero()) continue;
        detail::guard(r, opts, "buchberger");
        r = r.monic(ord);
        basis.push_back(r);
        if (basis.size() > opts.max_basis)
            throw ResourceExhausted("buchberger: basis size cap exceeded");
        size_t n = basis.size() - 1;
        for (size_t k = 0; k < n; ++k) queue.insert(make_key(k, n));
    }

    // minimalize: drop elements whose leading monomial another element divides
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial& li = basis[i].leading_monomial(ord);
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = basis[j].leading_monomial(ord);
            if (lj.divides(li) && !(li == lj && j > i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // interreduce tails
    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = normal_form(minimal[i], others, ord, opts);
        if (!r.is_zero()) reduced.push_back(r.monic(ord));
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        int c = ord.compare(a.leading_monomial(ord), b.leading_monomial(ord));
        return c < 0;
    });
    return reduced;
}

inline bool basis_is_unit_ideal(const std::vector<Poly>& basis) {
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

// Generators of I ∩ k[kept variables], via a Groebner basis for a block order that
// eliminates the complement.
inline std::vector<Poly> eliminate_vars(const std::vector<Poly>& gens, const VarTablePtr& table,
                                        const std::function<bool(int)>& drop,
                                        const GroebnerOptions& opts = {}) {
    MonomialOrder ord = MonomialOrder::elimination(table->size(), drop);
    std::vector<Poly> basis = buchberger(gens, ord, opts);
    std::vector<Poly> kept;
    for (const Poly& g : basis) {
        bool ok = true;
        for (auto& [m, c] : g.terms())
            if (!m.uses_only([&](int v) { return !drop(v); })) { ok = false; break; }
        if (ok) kept.push_back(g);
    }
    return kept;
}

inline std::string fresh_name(const VarTablePtr& table, const std::string& stem) {
    if (!table->find(stem)) return stem;
    for (int k = 0;; ++k) {
        std::string candidate = stem + "#" + std::to_string(k);
        if (!table->find(candidate)) return candidate;
    }
}

// I ∩ J = (t·I + (1−t)·J) ∩ k[X] for a fresh variable t.
inline std::vector<Poly> intersect_ideals(const std::vector<Poly>& gensI,
                                          const std::vector<Poly>& gensJ,
                                          const VarTablePtr& table,
                                          const GroebnerOptions& opts = {}) {
    VarTablePtr ext = table->extended({{fresh_name(table, "t"), false}});
    int t = ext->size() - 1;
    Poly tp = Poly::variable(ext, t);
    Poly omt = Poly::constant(ext, 1) - tp;
    std::vector<Poly> mixed;
    for (const Poly& g : gensI) mixed.push_back(tp * g.with_table(ext));
    for (const Poly& g : gensJ) mixed.push_back(omt * g.with_table(ext));
    std::vector<Poly> kept =
        eliminate_vars(mixed, ext, [&](int v) { return v == t; }, opts);
    std::vector<Poly> out;
    for (const Poly& g : kept) out.push_back(g.transport(table));
    return out;
}

// p ∈ √I  iff  1 ∈ I + (1 − t·p) for a fresh t.
inline bool radical_member(const Poly& p, const std::vector<Poly>& gens,
                           const VarTablePtr& table, const GroebnerOptions& opts = {}) {
    VarTablePtr ext = table->extended({{fresh_name(table, "t"), false}});
    int t = ext->size() - 1;
    std::vector<Poly> mixed;
    for (const Poly& g : gens) mixed.push_back(g.with_table(ext));
    mixed.push_back(Poly::constant(ext, 1) - Poly::variable(ext, t) * p.with_table(ext));
    return basis_is_unit_ideal(buchberger(mixed, MonomialOrder::grevlex(ext->size()), opts));
}

} // namespace dk
