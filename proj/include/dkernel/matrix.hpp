#pragma once

#include <vector>

#include "map.hpp"

namespace dk {

// Dense n×n matrices over an algebra; just enough linear algebra for group points:
// products, determinants and adjugates by cofactor expansion (n stays small).
class Matrix {
public:
    Matrix() = default;
    Matrix(int n, const AlgebraElement& fill) : n_(n), a_(n * n, fill) {}

    static Matrix identity(const AlgebraPtr& alg, int n) {
        Matrix m(n, AlgebraElement::zero(alg));
        for (int i = 0; i < n; ++i) m.at(i, i) = AlgebraElement::one(alg);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<AlgebraElement>>& rows) {
        int n = static_cast<int>(rows.size());
        for (auto& r : rows)
            if (static_cast<int>(r.size()) != n) throw DomainError("matrix is not square");
        Matrix m(n, rows.at(0).at(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
        return m;
    }

    int size() const { return n_; }
    AlgebraElement& at(int i, int j) { return a_.at(i * n_ + j); }
    const AlgebraElement& at(int i, int j) const { return a_.at(i * n_ + j); }

    Matrix operator*(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(n_, AlgebraElement::zero(at(0, 0).algebra()));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    r.at(i, j) += at(i, k) * o.at(k, j);
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (int i = 0; i < n_ * n_; ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (int i = 0; i < n_ * n_; ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Matrix scaled(const AlgebraElement& c) const {
        Matrix r = *this;
        for (auto& e : r.a_) e = e * c;
        return r;
    }

    bool operator==(const Matrix& o) const {
        require_same_shape(o);
        for (int i = 0; i < n_ * n_; ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }

    AlgebraElement det() const {
        if (n_ == 1) return at(0, 0);
        AlgebraElement acc = AlgebraElement::zero(at(0, 0).algebra());
        for (int j = 0; j < n_; ++j) {
            AlgebraElement term = at(0, j) * minor_det(0, j);
            acc += (j % 2 == 0) ? term : -term;
        }
        return acc;
    }

    // adj(M)_{ij} = (-1)^{i+j} · minor(M, j, i);  M · adj(M) = det(M) · Id.
    Matrix adjugate() const {
        Matrix r(n_, AlgebraElement::zero(at(0, 0).algebra()));
        if (n_ == 1) {
            r.at(0, 0) = AlgebraElement::one(at(0, 0).algebra());
            return r;
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                AlgebraElement m = minor_det(j, i);
                r.at(i, j) = ((i + j) % 2 == 0) ? m : -m;
            }
        return r;
    }

    // Inverse given a known inverse of the determinant; validated by M·M⁻¹ = Id.
    Matrix inverse_with(const AlgebraElement& det_inverse) const {
        Matrix inv = adjugate().scaled(det_inverse);
        Matrix id = identity(at(0, 0).algebra(), n_);
        if (!(*this * inv == id))
            throw DomainError("supplied determinant inverse does not invert the matrix");
        return inv;
    }

private:
    AlgebraElement minor_det(int row, int col) const {
        Matrix m(n_ - 1, AlgebraElement::zero(at(0, 0).algebra()));
        int r = 0;
        for (int i = 0; i < n_; ++i) {
            if (i == row) continue;
            int c = 0;
            for (int j = 0; j < n_; ++j) {
                if (j == col) continue;
                m.at(r, c) = at(i, j);
                ++c;
            }
            ++r;
        }
        return m.det();
    }

    void require_same_shape(const Matrix& o) const {
        if (n_ != o.n_) throw DomainError("matrix shape mismatch");
    }

    int n_ = 0;
    std::vector<AlgebraElement> a_;
};

// Entry-wise image under an algebra map.
inline Matrix map_entries(const AlgebraMap& f, const Matrix& m) {
    Matrix r(m.size(), AlgebraElement::zero(f.target()));
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r.at(i, j) = f.apply(m.at(i, j));
    return r;
}

} // namespace dk
