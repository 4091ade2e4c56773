#include "cdual/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdual/error.hpp"

namespace cdual {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kSingular:
      return "singular";
    case FailureKind::kDiverged:
      return "diverged";
    case FailureKind::kSingularShiftedHessian:
      return "singular-shifted-hessian";
  }
  return "unknown";
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::shifted(double shift) const {
  Matrix m = *this;
  for (std::size_t i = 0; i < n_; ++i) m(i, i) += shift;
  return m;
}

Vector Matrix::multiply(std::span<const double> v) const {
  if (v.size() != n_) throw InvalidInput("matrix-vector dimension mismatch");
  Vector out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

double Matrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("axpy: dimension mismatch");
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

LuFactorization::LuFactorization(const Matrix& a, double relative_pivot_tol)
    : lu_(a), perm_(a.size()) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  const double threshold = relative_pivot_tol * a.inf_norm();
  min_pivot_ = n == 0 ? 0.0 : INFINITY;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const double pivot = lu_(k, k);
    min_pivot_ = std::min(min_pivot_, std::abs(pivot));
    if (!(std::abs(pivot) > threshold)) {
      singular_ = true;
      if (pivot == 0.0) continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

double LuFactorization::determinant() const {
  double det = sign_;
  for (std::size_t i = 0; i < lu_.size(); ++i) det *= lu_(i, i);
  return det;
}

std::optional<Vector> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.size();
  if (b.size() != n) throw InvalidInput("LU solve: dimension mismatch");
  if (singular_) return std::nullopt;
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Vector symmetric_eigenvalues(const Matrix& m) {
  const std::size_t n = m.size();
  if (m.asymmetry() > 1e-12) {
    throw InvalidInput("symmetric eigensolver: matrix asymmetry " +
                       std::to_string(m.asymmetry()) + " exceeds 1e-12");
  }
  // Work on the symmetrized copy so that rounding-level asymmetry is ignored.
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off == 0.0 || off <= 1e-32 * diag) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p,q); see Golub & Van Loan 8.5.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  Vector eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double min_eig_sym(const Matrix& m) {
  if (m.size() == 0) throw InvalidInput("min_eig_sym: empty matrix");
  return symmetric_eigenvalues(m).front();
}

double max_eig_sym(const Matrix& m) {
  if (m.size() == 0) throw InvalidInput("max_eig_sym: empty matrix");
  return symmetric_eigenvalues(m).back();
}

}  // namespace cdual
