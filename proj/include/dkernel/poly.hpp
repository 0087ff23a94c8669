#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "scalar.hpp"
#include "vartable.hpp"

namespace dk {

// Sparse multivariate polynomial over the rationals.  Terms live in a std::map keyed
// by the structural monomial order, so representation and printing are deterministic;
// leading terms with respect to an actual monomial order are computed on demand.
class Poly {
public:
    Poly() = default;

    explicit Poly(VarTablePtr table) : table_(std::move(table)) {}

    static Poly zero(VarTablePtr table) { return Poly(std::move(table)); }

    static Poly constant(VarTablePtr table, const Rational& c) {
        Poly p(std::move(table));
        if (c != 0) p.terms_[Monomial::one()] = c;
        return p;
    }

    static Poly variable(VarTablePtr table, int v, int e = 1) {
        Poly p(std::move(table));
        p.check_var(v);
        Monomial m = Monomial::var(v, e);
        if (e == 0) p.terms_[Monomial::one()] = 1;
        else p.terms_[m] = 1;
        return p;
    }

    static Poly term(VarTablePtr table, const Rational& c, const Monomial& m) {
        Poly p(std::move(table));
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const VarTablePtr& table() const { return table_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.begin()->second;
    }

    int degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly operator-() const {
        Poly r(table_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        require_same_table(o);
        Poly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        require_same_table(o);
        Poly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Poly operator*(const Poly& o) const {
        require_same_table(o);
        Poly r(table_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_)
                r.add_term(m1 * m2, c1 * c2);
        return r;
    }

    Poly operator*(const Rational& c) const {
        Poly r(table_);
        if (c == 0) return r;
        for (auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const {
        Poly acc = constant(table_, 1);
        Poly b = *this;
        while (e) {
            if (e & 1u) acc *= b;
            if (e >>= 1u) b *= b;
        }
        return acc;
    }

    bool operator==(const Poly& o) const {
        require_same_table(o);
        return terms_ == o.terms_;
    }

    // Leading data with respect to an actual monomial order.
    const Monomial& leading_monomial(const MonomialOrder& ord) const {
        if (terms_.empty()) throw DomainError("leading monomial of zero");
        const Monomial* best = nullptr;
        for (auto& [m, c] : terms_)
            if (!best || ord.less(*best, m)) best = &m;
        return *best;
    }

    Poly monic(const MonomialOrder& ord) const {
        if (terms_.empty()) return *this;
        Rational lc = coefficient(leading_monomial(ord));
        return *this * (Rational(1) / lc);
    }

    Poly derivative(int v) const {
        check_var(v);
        Poly r(table_);
        for (auto& [m, c] : terms_) {
            int e = m.exponent(v);
            if (e == 0) continue;
            r.add_term(m.divide(Monomial::var(v)), c * e);
        }
        return r;
    }

    // Substitute images[v] for variable v wherever an image is provided; variables
    // without an image are kept.  Images must share one table, which becomes the
    // result's table (it must extend this poly's table on the kept variables).
    Poly substitute(const std::map<int, Poly>& images, VarTablePtr target) const {
        Poly r(target);
        for (auto& [m, c] : terms_) {
            Poly t = Poly::constant(target, c);
            for (auto& [v, e] : m.exponents()) {
                auto it = images.find(v);
                if (it != images.end())
                    t *= it->second.pow(static_cast<unsigned>(e));
                else
                    t *= Poly::variable(target, v, e);
            }
            r += t;
        }
        return r;
    }

    // Rebuild this poly over `target`, translating every variable by name.
    Poly transport(const VarTablePtr& target) const {
        if (target == table_) return *this;
        Poly r(target);
        for (auto& [m, c] : terms_) {
            Monomial n;
            for (auto& [v, e] : m.exponents()) {
                int w = target->require(table_->name(v));
                n = n * Monomial::var(w, e);
            }
            r.add_term(n, c);
        }
        return r;
    }

    // Same terms, larger table (var ids unchanged); cheap view change.
    Poly with_table(const VarTablePtr& target) const {
        if (!target->extends(*table_))
            throw AlgebraMismatch("table does not extend the poly's table");
        Poly r = *this;
        r.table_ = target;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        // print in descending (degree, structural) order for readability
        std::vector<const std::pair<const Monomial, Rational>*> ts;
        for (auto& t : terms_) ts.push_back(&t);
        std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
            int da = a->first.degree(), db = b->first.degree();
            if (da != db) return da > db;
            return b->first < a->first;
        });
        std::ostringstream out;
        bool first = true;
        for (auto* t : ts) {
            Rational c = t->second;
            if (first) {
                if (c < 0) { out << "-"; c = -c; }
            } else {
                out << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            out << term_string(c, t->first);
        }
        return out.str();
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::string term_string(const Rational& c, const Monomial& m) const {
        std::ostringstream out;
        bool printed = false;
        if (m.is_one() || c != 1) {
            out << dk::to_string(c);
            printed = true;
        }
        for (auto& [v, e] : m.exponents()) {
            if (printed) out << "*";
            out << table_->name(v);
            if (e > 1) out << "^" << e;
            printed = true;
        }
        return out.str();
    }

    void require_same_table(const Poly& o) const {
        if (table_ != o.table_)
            throw AlgebraMismatch("polynomials over different variable tables");
    }

    void check_var(int v) const {
        if (!table_ || v < 0 || v >= table_->size())
            throw DomainError("variable id outside table");
    }

    VarTablePtr table_;
    std::map<Monomial, Rational> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

} // namespace dk
