#pragma once

#include <optional>
#include <vector>

#include "dimers/core.hpp"

namespace dimers {

// Dense row-major matrix. Kept small on purpose: the heavy lifting for
// floating types is delegated to Eigen inside linalg.cpp.
template <class T> class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    Matrix operator*(const Matrix& b) const {
        if (cols_ != b.rows_) throw Error("matrix product: shape mismatch");
        Matrix r(rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += a * b(k, j);
            }
        return r;
    }
    Matrix operator-(const Matrix& b) const {
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }
    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix block(int r0, int c0, int nr, int nc) const {
        Matrix r(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    Matrix select(const std::vector<int>& rs, const std::vector<int>& cs) const {
        Matrix r(int(rs.size()), int(cs.size()));
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j) r(int(i), int(j)) = (*this)(rs[i], cs[j]);
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const T& x : data_) m = std::max(m, magnitude(x));
        return m;
    }
    bool is_zero() const {
        for (const T& x : data_)
            if (x != T(0)) return false;
        return true;
    }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

// Exact for Rational (fraction-free Bareiss), partially pivoted LU otherwise.
template <class T> T determinant(const Matrix<T>& a);
// Empty optional when singular (exactly, or pivot below 1e-300 in float mode).
template <class T> std::optional<Matrix<T>> inverse(const Matrix<T>& a);
// Solves x * a = b for x (row-vector convention used by the kernel identities).
template <class T> std::optional<Matrix<T>> solve_right(const Matrix<T>& a, const Matrix<T>& b);

// Generalized Laplace sign for deleting rows rs[i] and columns cs[i] in pairs:
// the terms of det(a) containing every a(rs[i], cs[i]) sum to
// prod a(rs[i],cs[i]) * laplace_sign(rs, cs) * det(a without rs, cs).
int laplace_sign(const std::vector<int>& rs, const std::vector<int>& cs);

template <class T> Matrix<T> convert(const Matrix<Rational>& a) {
    Matrix<T> r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = from_rational<T>(a(i, j));
    return r;
}

}  // namespace dimers
