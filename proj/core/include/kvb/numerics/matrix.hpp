#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kvb::num {

using Vector = std::vector<double>;

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// Dense row-major rectangular matrix. Used for coefficient bases
/// (columns express vectors in a fixed basis) and eigenvector blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector col(std::size_t j) const;
  Matrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// Real symmetric matrix; every write goes to both (i,j) and (j,i), so the
/// stored entries are symmetric bit for bit.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim);
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymmetricMatrix identity(std::size_t dim);
  static SymmetricMatrix scalar(double value) { return SymmetricMatrix{{value}}; }
  /// (A + Aᵀ)/2 of a square dense matrix.
  static SymmetricMatrix symmetrized(const Matrix& a);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);

  Matrix dense() const;
  double frobenius_norm() const;
  Vector apply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;
  /// Cᵀ A C, the matrix of the same form in the basis given by the columns of C.
  SymmetricMatrix congruence(const Matrix& c) const;

  SymmetricMatrix& operator+=(const SymmetricMatrix& other);
  SymmetricMatrix& operator-=(const SymmetricMatrix& other);
  SymmetricMatrix& operator*=(double s);

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b);
SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double s, SymmetricMatrix a);

/// A = L Lᵀ. Throws ErrorKind::Factorization when A is not positive definite.
class Cholesky {
 public:
  explicit Cholesky(const SymmetricMatrix& a);

  const Matrix& lower() const noexcept { return lower_; }
  Vector solve(std::span<const double> b) const;
  Vector forward(std::span<const double> b) const;   // L⁻¹ b
  Vector backward(std::span<const double> y) const;  // L⁻ᵀ y

 private:
  Matrix lower_;
};

/// Numerical rank of the columns of `a`, relative to its largest singular value.
std::size_t column_rank(const Matrix& a, double rel_tol);

/// Least-squares coefficients c minimising ‖basis·c − target‖ column by column,
/// with the residual norm of each column.
struct LeastSquares {
  Matrix coefficients;
  Vector residuals;
};
LeastSquares least_squares(const Matrix& basis, const Matrix& target);

}  // namespace kvb::num
