#include "slicescale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicescale {

std::vector<double> Matrix::col(int j) const {
    std::vector<double> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(int j, const std::vector<double>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.cols(), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) y[j] += m(i, j) * x[i];
    return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

Matrix nullspace_basis(Matrix m) {
    const int r = m.rows(), n = m.cols();
    double max_abs = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(m(i, j)));

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < r; ++col) {
        int best = row;
        for (int i = row + 1; i < r; ++i)
            if (std::abs(m(i, col)) > std::abs(m(best, col))) best = i;
        if (std::abs(m(best, col)) <= 1e-12 * max_abs) continue;
        if (best != row)
            for (int j = 0; j < n; ++j) std::swap(m(row, j), m(best, j));
        double piv = m(row, col);
        for (int j = 0; j < n; ++j) m(row, j) /= piv;
        for (int i = 0; i < r; ++i) {
            if (i == row) continue;
            double f = m(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) m(i, j) -= f * m(row, j);
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(m(i, j)));
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    int nfree = n - static_cast<int>(pivot_col.size());
    Matrix basis(n, nfree);
    int bc = 0;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis(f, bc) = 1.0;
        for (std::size_t p = 0; p < pivot_col.size(); ++p)
            basis(pivot_col[p], bc) = -m(static_cast<int>(p), f);
        ++bc;
    }
    return orthonormalize(basis);
}

Matrix orthonormalize(const Matrix& m, double drop_tol) {
    const int n = m.rows();
    std::vector<std::vector<double>> kept;
    for (int j = 0; j < m.cols(); ++j) {
        std::vector<double> v = m.col(j);
        double orig = norm2(v);
        if (orig == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : kept) {
                double c = dot(q, v);
                for (int i = 0; i < n; ++i) v[i] -= c * q[i];
            }
        double nv = norm2(v);
        if (nv <= drop_tol * orig) continue;
        for (int i = 0; i < n; ++i) v[i] /= nv;
        kept.push_back(std::move(v));
    }
    Matrix q(n, static_cast<int>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) q.set_col(static_cast<int>(j), kept[j]);
    return q;
}

bool cholesky_solve(Matrix h, std::vector<double> rhs, std::vector<double>& x) {
    const int p = h.rows();
    if (h.cols() != p || static_cast<int>(rhs.size()) != p)
        throw std::invalid_argument("cholesky_solve: shape mismatch");
    // In-place lower Cholesky.
    for (int j = 0; j < p; ++j) {
        double d = h(j, j);
        for (int k = 0; k < j; ++k) d -= h(j, k) * h(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        d = std::sqrt(d);
        h(j, j) = d;
        for (int i = j + 1; i < p; ++i) {
            double v = h(i, j);
            for (int k = 0; k < j; ++k) v -= h(i, k) * h(j, k);
            h(i, j) = v / d;
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < p; ++i) {
        double v = rhs[i];
        for (int k = 0; k < i; ++k) v -= h(i, k) * rhs[k];
        rhs[i] = v / h(i, i);
    }
    for (int i = p - 1; i >= 0; --i) {
        double v = rhs[i];
        for (int k = i + 1; k < p; ++k) v -= h(k, i) * rhs[k];
        rhs[i] = v / h(i, i);
    }
    x = std::move(rhs);
    return true;
}

}  // namespace slicescale
