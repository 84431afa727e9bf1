#pragma once

#include <cstddef>
#include <vector>

namespace slicescale {

/// Row-major dense matrix, sized for the small systems that arise here
/// (a few dozen rows/columns).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    std::vector<double> col(int j) const;
    void set_col(int j, const std::vector<double>& v);

private:
    int rows_, cols_;
    std::vector<double> a_;
};

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);
std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& x);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
double norm_inf(const std::vector<double>& a);

/// Orthonormal basis (columns) for the nullspace of m, via Gaussian
/// elimination with partial pivoting. Pivot tolerance is
/// 1e-12 x (max absolute entry of the row-reduced matrix). Column order
/// is deterministic (free columns in ascending index order).
Matrix nullspace_basis(Matrix m);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns with
/// remaining norm below drop_tol x (their original norm) are dropped.
/// Returns a column-orthonormal matrix.
Matrix orthonormalize(const Matrix& m, double drop_tol = 1e-10);

/// Solves h x = rhs for symmetric positive definite h by Cholesky.
/// Returns false if a nonpositive pivot is met.
bool cholesky_solve(Matrix h, std::vector<double> rhs, std::vector<double>& x);

}  // namespace slicescale
