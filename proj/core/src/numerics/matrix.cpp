#include "kvb/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kvb/error.hpp"

namespace kvb::num {

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::Model, "dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::Model, "Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Model, "Matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::Model, "Matrix-vector product: shape mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

SymmetricMatrix::SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymmetricMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != dim_) throw Error(ErrorKind::Model, "SymmetricMatrix: initializer is not square");
    std::size_t j = 0;
    for (double v : r) {
      if (j >= i) {
        set(i, j, v);
      } else if ((*this)(i, j) != v) {
        throw Error(ErrorKind::Model, "SymmetricMatrix: initializer is not symmetric");
      }
      ++j;
    }
    ++i;
  }
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
  SymmetricMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::symmetrized(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::Model, "symmetrized: matrix is not square");
  SymmetricMatrix s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  data_[i * dim_ + j] = value;
  data_[j * dim_ + i] = value;
}

void SymmetricMatrix::add(std::size_t i, std::size_t j, double value) {
  data_[i * dim_ + j] += value;
  if (i != j) data_[j * dim_ + i] += value;
}

Matrix SymmetricMatrix::dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vector SymmetricMatrix::apply(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(ErrorKind::Model, "SymmetricMatrix::apply: size mismatch");
  Vector y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double SymmetricMatrix::quadratic_form(std::span<const double> x) const {
  return dot(x, apply(x));
}

SymmetricMatrix SymmetricMatrix::congruence(const Matrix& c) const {
  if (c.rows() != dim_) throw Error(ErrorKind::Model, "congruence: shape mismatch");
  const Matrix ac = dense() * c;
  SymmetricMatrix r(c.cols());
  for (std::size_t i = 0; i < c.cols(); ++i)
    for (std::size_t j = i; j < c.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) s += c(k, i) * ac(k, j);
      r.set(i, j, s);
    }
  return r;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::Model, "SymmetricMatrix +: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::Model, "SymmetricMatrix -: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
SymmetricMatrix operator*(double s, SymmetricMatrix a) { return a *= s; }

Cholesky::Cholesky(const SymmetricMatrix& a) : lower_(a.dim(), a.dim()) {
  const std::size_t n = a.dim();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
    if (!(d > 0.0) || !std::isfinite(d))
      throw Error(ErrorKind::Factorization,
                  "Cholesky: matrix is not positive definite (pivot " + std::to_string(j) + ")");
    const double ljj = std::sqrt(d);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
  }
}

Vector Cholesky::forward(std::span<const double> b) const {
  const std::size_t n = lower_.rows();
  if (b.size() != n) throw Error(ErrorKind::Model, "Cholesky::forward: size mismatch");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
    y[i] /= lower_(i, i);
  }
  return y;
}

Vector Cholesky::backward(std::span<const double> y) const {
  const std::size_t n = lower_.rows();
  if (y.size() != n) throw Error(ErrorKind::Model, "Cholesky::backward: size mismatch");
  Vector x(y.begin(), y.end());
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= lower_(k, ii) * x[k];
    x[ii] /= lower_(ii, ii);
  }
  return x;
}

Vector Cholesky::solve(std::span<const double> b) const { return backward(forward(b)); }

std::size_t column_rank(const Matrix& a, double rel_tol) {
  // Modified Gram–Schmidt with column pivoting on a working copy.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<Vector> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = a.col(j);
  double first = 0.0;
  std::size_t rank = 0;
  for (std::size_t step = 0; step < std::min(m, n); ++step) {
    std::size_t best = step;
    double best_norm = -1.0;
    for (std::size_t j = step; j < n; ++j) {
      const double nj = norm2(cols[j]);
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (step == 0) first = best_norm;
    if (first == 0.0 || best_norm <= rel_tol * first) break;
    std::swap(cols[step], cols[best]);
    for (double& v : cols[step]) v /= best_norm;
    for (std::size_t j = step + 1; j < n; ++j)
      for (int pass = 0; pass < 2; ++pass) {
        const double p = dot(cols[step], cols[j]);
        for (std::size_t i = 0; i < m; ++i) cols[j][i] -= p * cols[step][i];
      }
    ++rank;
  }
  return rank;
}

LeastSquares least_squares(const Matrix& basis, const Matrix& target) {
  if (basis.rows() != target.rows()) throw Error(ErrorKind::Model, "least_squares: row mismatch");
  const Matrix bt = basis.transpose();
  const Cholesky normal(SymmetricMatrix::symmetrized(bt * basis));
  LeastSquares out{Matrix(basis.cols(), target.cols()), Vector(target.cols(), 0.0)};
  for (std::size_t j = 0; j < target.cols(); ++j) {
    const Vector rhs = bt * target.col(j);
    const Vector c = normal.solve(rhs);
    for (std::size_t i = 0; i < c.size(); ++i) out.coefficients(i, j) = c[i];
    Vector r = basis * c;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= target(i, j);
    out.residuals[j] = norm2(r);
  }
  return out;
}

}  // namespace kvb::num
