#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "vartable.hpp"

namespace dk {

// Sparse monomial: (variable id, exponent) pairs sorted by id, exponents > 0.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial var(int v, int e = 1) {
        Monomial m;
        if (e < 0) throw DomainError("negative exponent");
        if (e > 0) m.exps_.emplace_back(v, e);
        return m;
    }

    bool is_one() const { return exps_.empty(); }

    int degree() const {
        int d = 0;
        for (auto& [v, e] : exps_) d += e;
        return d;
    }

    int exponent(int v) const {
        for (auto& [w, e] : exps_)
            if (w == v) return e;
        return 0;
    }

    const std::vector<std::pair<int, int>>& exponents() const { return exps_; }

    bool uses_only(const std::function<bool(int)>& allowed) const {
        for (auto& [v, e] : exps_)
            if (!allowed(v)) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.exps_.reserve(exps_.size() + o.exps_.size());
        size_t i = 0, j = 0;
        while (i < exps_.size() && j < o.exps_.size()) {
            if (exps_[i].first < o.exps_[j].first) r.exps_.push_back(exps_[i++]);
            else if (exps_[i].first > o.exps_[j].first) r.exps_.push_back(o.exps_[j++]);
            else {
                r.exps_.emplace_back(exps_[i].first, exps_[i].second + o.exps_[j].second);
                ++i; ++j;
            }
        }
        while (i < exps_.size()) r.exps_.push_back(exps_[i++]);
        while (j < o.exps_.size()) r.exps_.push_back(o.exps_[j++]);
        return r;
    }

    bool divides(const Monomial& o) const {
        size_t j = 0;
        for (auto& [v, e] : exps_) {
            while (j < o.exps_.size() && o.exps_[j].first < v) ++j;
            if (j == o.exps_.size() || o.exps_[j].first != v || o.exps_[j].second < e)
                return false;
        }
        return true;
    }

    // this / o; caller guarantees divisibility
    Monomial divide(const Monomial& o) const {
        Monomial r;
        size_t j = 0;
        for (auto& [v, e] : exps_) {
            int sub = 0;
            while (j < o.exps_.size() && o.exps_[j].first < v) ++j;
            if (j < o.exps_.size() && o.exps_[j].first == v) sub = o.exps_[j].second;
            if (e - sub < 0) throw DomainError("monomial division not exact");
            if (e - sub > 0) r.exps_.emplace_back(v, e - sub);
        }
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        size_t i = 0, j = 0;
        while (i < a.exps_.size() && j < b.exps_.size()) {
            if (a.exps_[i].first < b.exps_[j].first) r.exps_.push_back(a.exps_[i++]);
            else if (a.exps_[i].first > b.exps_[j].first) r.exps_.push_back(b.exps_[j++]);
            else {
                r.exps_.emplace_back(a.exps_[i].first,
                                     std::max(a.exps_[i].second, b.exps_[j].second));
                ++i; ++j;
            }
        }
        while (i < a.exps_.size()) r.exps_.push_back(a.exps_[i++]);
        while (j < b.exps_.size()) r.exps_.push_back(b.exps_[j++]);
        return r;
    }

    static bool disjoint(const Monomial& a, const Monomial& b) {
        size_t i = 0, j = 0;
        while (i < a.exps_.size() && j < b.exps_.size()) {
            if (a.exps_[i].first < b.exps_[j].first) ++i;
            else if (a.exps_[i].first > b.exps_[j].first) ++j;
            else return false;
        }
        return true;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

    // Structural order, used only as a deterministic container key.
    std::strong_ordering operator<=>(const Monomial& o) const {
        return exps_ <=> o.exps_;
    }

private:
    std::vector<std::pair<int, int>> exps_;
};

// Monomial orders: graded reverse lexicographic by default, with optional blocks for
// elimination.  Variables in a lower block index compare before (dominate) higher
// blocks; within a block, grevlex with smaller variable ids taken as larger variables.
class MonomialOrder {
public:
    static MonomialOrder grevlex(int nvars) {
        MonomialOrder o;
        o.block_of_.assign(nvars, 0);
        o.nblocks_ = 1;
        return o;
    }

    // Variables for which `eliminate` holds go to the leading block; a Groebner basis
    // under this order intersected with the remaining variables generates the
    // elimination ideal.
    static MonomialOrder elimination(int nvars, const std::function<bool(int)>& eliminate) {
        MonomialOrder o;
        o.block_of_.assign(nvars, 1);
        bool any = false;
        for (int v = 0; v < nvars; ++v)
            if (eliminate(v)) { o.block_of_[v] = 0; any = true; }
        o.nblocks_ = any ? 2 : 1;
        return o;
    }

    int nvars() const { return static_cast<int>(block_of_.size()); }

    // -1 if a < b, 0 if equal, +1 if a > b
    int compare(const Monomial& a, const Monomial& b) const {
        for (int blk = 0; blk < nblocks_; ++blk) {
            int da = block_degree(a, blk), db = block_degree(b, blk);
            if (da != db) return da < db ? -1 : 1;
            // grevlex tie-break: scan variables of this block from the highest id
            // down; the monomial with the smaller exponent at the first difference
            // is the larger one.
            int r = revlex_tiebreak(a, b, blk);
            if (r != 0) return r;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

private:
    int block_degree(const Monomial& m, int blk) const {
        int d = 0;
        for (auto& [v, e] : m.exponents()) {
            check_var(v);
            if (block_of_[v] == blk) d += e;
        }
        return d;
    }

    int revlex_tiebreak(const Monomial& a, const Monomial& b, int blk) const {
        const auto& ea = a.exponents();
        const auto& eb = b.exponents();
        auto ia = ea.rbegin();
        auto ib = eb.rbegin();
        auto skip = [&](auto& it, auto end) {
            while (it != end && block_of_[it->first] != blk) ++it;
        };
        while (true) {
            skip(ia, ea.rend());
            skip(ib, eb.rend());
            if (ia == ea.rend() && ib == eb.rend()) return 0;
            // A variable present on one side only: exponent 0 on the other side at
            // that position.  Highest id first.
            int va = ia == ea.rend() ? -1 : ia->first;
            int vb = ib == eb.rend() ? -1 : ib->first;
            if (va == vb) {
                if (ia->second != ib->second)
                    return ia->second > ib->second ? -1 : 1;
                ++ia; ++ib;
            } else if (va > vb) {
                // a has a positive exponent at variable va, b has 0 there
                return -1;
            } else {
                return 1;
            }
        }
    }

    void check_var(int v) const {
        if (v < 0 || v >= nvars())
            throw DomainError("monomial variable outside the order's table");
    }

    std::vector<int> block_of_;
    int nblocks_ = 1;
};

} // namespace dk
