#include "dimers/linalg.hpp"

#include <algorithm>

#include <Eigen/Dense>

namespace dimers {

namespace {

template <class T>
using EMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class T> Eigen::Map<const EMat<T>> view(const Matrix<T>& a) {
    return Eigen::Map<const EMat<T>>(a.data().data(), a.rows(), a.cols());
}

Rational bareiss(Matrix<Rational> m) {
    const int n = m.rows();
    if (n == 0) return Rational(1);
    int sign = 1;
    Rational prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return Rational(0);
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::optional<Matrix<Rational>> gauss_jordan(Matrix<Rational> a, Matrix<Rational> b) {
    // Solves a * x = b.
    const int n = a.rows();
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(p, j));
        }
        Rational inv = 1 / a(k, k);
        for (int j = 0; j < n; ++j) a(k, j) *= inv;
        for (int j = 0; j < b.cols(); ++j) b(k, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational f = a(i, k);
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    return b;
}

template <class T> Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

template <class T> std::optional<Matrix<T>> lu_solve(const Matrix<T>& a, const Matrix<T>& b) {
    Eigen::PartialPivLU<EMat<T>> lu(view(a));
    double pivot = 0;
    for (int i = 0; i < a.rows(); ++i) pivot = std::max(pivot, std::abs(lu.matrixLU()(i, i)));
    for (int i = 0; i < a.rows(); ++i)
        if (std::abs(lu.matrixLU()(i, i)) <= 1e-13 * pivot) return std::nullopt;
    EMat<T> x = lu.solve(view(b));
    Matrix<T> r(int(x.rows()), int(x.cols()));
    Eigen::Map<EMat<T>>(r.data().data(), r.rows(), r.cols()) = x;
    return r;
}

}  // namespace

template <> Rational determinant(const Matrix<Rational>& a) {
    if (a.rows() != a.cols()) throw Error("determinant: matrix not square");
    return bareiss(a);
}

template <class T> T determinant(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw Error("determinant: matrix not square");
    if (a.rows() == 0) return T(1);
    return view(a).partialPivLu().determinant();
}

template <> std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& a) {
    if (a.rows() != a.cols()) throw Error("inverse: matrix not square");
    return gauss_jordan(a, Matrix<Rational>::identity(a.rows()));
}

template <class T> std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw Error("inverse: matrix not square");
    return lu_solve(a, Matrix<T>::identity(a.rows()));
}

template <> std::optional<Matrix<Rational>> solve_right(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    auto xt = gauss_jordan(transpose(a), transpose(b));
    if (!xt) return std::nullopt;
    return transpose(*xt);
}

template <class T> std::optional<Matrix<T>> solve_right(const Matrix<T>& a, const Matrix<T>& b) {
    auto xt = lu_solve(transpose(a), transpose(b));
    if (!xt) return std::nullopt;
    return transpose(*xt);
}

int laplace_sign(const std::vector<int>& rs, const std::vector<int>& cs) {
    const size_t m = rs.size();
    // Rank of each deleted row/column among the deleted ones.
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return rs[i] < rs[j]; });
    std::vector<int> col_rank(m);
    {
        std::vector<size_t> co(m);
        std::iota(co.begin(), co.end(), 0);
        std::sort(co.begin(), co.end(), [&](size_t i, size_t j) { return cs[i] < cs[j]; });
        for (size_t r = 0; r < m; ++r) col_rank[co[r]] = int(r);
    }
    // Permutation taking the i-th smallest deleted row to its paired column rank.
    std::vector<int> perm(m);
    for (size_t r = 0; r < m; ++r) perm[r] = col_rank[order[r]];
    int parity = 0;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (perm[i] > perm[j]) parity ^= 1;
    long s = 0;
    for (size_t i = 0; i < m; ++i) s += rs[i] + cs[i];
    // Block sign of the generalized Laplace expansion times the pairing parity.
    return ((s + parity) % 2 == 0) ? 1 : -1;
}

template double determinant(const Matrix<double>&);
template Complex determinant(const Matrix<Complex>&);
template std::optional<Matrix<double>> inverse(const Matrix<double>&);
template std::optional<Matrix<Complex>> inverse(const Matrix<Complex>&);
template std::optional<Matrix<double>> solve_right(const Matrix<double>&, const Matrix<double>&);
template std::optional<Matrix<Complex>> solve_right(const Matrix<Complex>&, const Matrix<Complex>&);

}  // namespace dimers
