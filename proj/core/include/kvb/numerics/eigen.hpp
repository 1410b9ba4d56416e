#pragma once

#include <cstddef>

#include "kvb/numerics/matrix.hpp"

namespace kvb::num {

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k belongs to values[k]
};

/// Cyclic Jacobi rotations on a dense symmetric matrix.
SymmetricEigen eig_sym_full(const SymmetricMatrix& a);

/// A v = λ B v, reduced to standard form with the Cholesky factor of B.
/// Eigenvectors are B-orthonormal.
SymmetricEigen eig_sym_full(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// The `count` smallest eigenvalues, ascending.
Vector eig_sym(const SymmetricMatrix& a, std::size_t count);
Vector eig_sym(const SymmetricMatrix& a, const SymmetricMatrix& b, std::size_t count);

double min_eigenvalue(const SymmetricMatrix& a);

/// min eig(A) ≥ −tol·‖A‖_F.
bool is_psd(const SymmetricMatrix& a, double tol);
/// min eig(A) ≥ −tol·scale, for matrices that are differences of larger
/// quantities and whose own norm is not a meaningful yardstick.
bool is_psd(const SymmetricMatrix& a, double tol, double scale);

/// Symmetric tridiagonal matrix with one extra coupling between the first
/// and last rows. This is the sparsity pattern of 1D linear-element matrices
/// under periodic, anti-periodic, or coupled two-point boundary conditions.
class CyclicTridiagonal {
 public:
  CyclicTridiagonal() = default;
  explicit CyclicTridiagonal(std::size_t dim);

  std::size_t dim() const noexcept { return diag_.size(); }

  double diag(std::size_t i) const { return diag_[i]; }
  /// Entry (i, i+1).
  double off(std::size_t i) const { return off_[i]; }
  /// Entry (0, dim-1); zero for a plain tridiagonal matrix.
  double corner() const noexcept { return corner_; }

  /// Adds `value` to (i,j) and (j,i); (i,j) must be on the pattern.
  void add(std::size_t i, std::size_t j, double value);
  double at(std::size_t i, std::size_t j) const;

  double quadratic_form(std::span<const double> x) const;
  SymmetricMatrix dense() const;

 private:
  Vector diag_;
  Vector off_;
  double corner_ = 0.0;
};

/// Number of eigenvalues of the pencil (A, B) strictly below `shift`, from the
/// inertia of A − shift·B (Sylvester). B must be positive definite.
std::size_t count_below(const CyclicTridiagonal& a, const CyclicTridiagonal& b, double shift);

/// The `count` smallest eigenvalues of A v = λ B v by spectrum slicing:
/// bisection on `count_below`, each value to abs_tol + rel_tol·|λ|.
/// Throws ErrorKind::Factorization when B is not positive definite.
Vector lowest_pencil_eigenvalues(const CyclicTridiagonal& a, const CyclicTridiagonal& b,
                                 std::size_t count, double abs_tol = 1e-13,
                                 double rel_tol = 1e-15);

}  // namespace kvb::num
