#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cdual {

using Vector = std::vector<double>;

/// Dense square matrix, row-major. Sizes here are the problem dimension
/// (or dimension + 1), so no attempt is made at blocking or BLAS.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  Matrix transposed() const;
  /// Returns M + shift * I.
  Matrix shifted(double shift) const;
  Vector multiply(std::span<const double> v) const;

  /// Max absolute row sum.
  double inf_norm() const;
  /// Largest |M(i,j) - M(j,i)|.
  double asymmetry() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double inf_norm(std::span<const double> v);
double norm2(std::span<const double> v);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);

/// LU factorization with partial pivoting. A pivot whose magnitude is at or
/// below `relative_pivot_tol * ||A||_inf` marks the matrix singular; the
/// factorization still completes so the determinant can be reported.
class LuFactorization {
 public:
  explicit LuFactorization(const Matrix& a, double relative_pivot_tol = 1e-12);

  bool singular() const noexcept { return singular_; }
  double determinant() const;
  /// Smallest pivot magnitude encountered.
  double min_pivot() const noexcept { return min_pivot_; }
  /// Solve A y = b. Returns nullopt when the factorization is singular.
  std::optional<Vector> solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
  double min_pivot_ = 0.0;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Throws InvalidInput when the asymmetry exceeds 1e-12 (absolute).
Vector symmetric_eigenvalues(const Matrix& m);

double min_eig_sym(const Matrix& m);
double max_eig_sym(const Matrix& m);

}  // namespace cdual
