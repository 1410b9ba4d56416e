#include "kvb/numerics/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kvb/error.hpp"

namespace kvb::num {
namespace {

constexpr int kMaxSweeps = 100;

void sort_ascending(SymmetricEigen& e) {
  const std::size_t n = e.values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return e.values[i] < e.values[j]; });
  SymmetricEigen sorted{Vector(n), Matrix(e.vectors.rows(), n)};
  for (std::size_t k = 0; k < n; ++k) {
    sorted.values[k] = e.values[order[k]];
    for (std::size_t i = 0; i < e.vectors.rows(); ++i) sorted.vectors(i, k) = e.vectors(i, order[k]);
  }
  e = std::move(sorted);
}

}  // namespace

SymmetricEigen eig_sym_full(const SymmetricMatrix& input) {
  const std::size_t n = input.dim();
  Matrix a = input.dense();
  Matrix v = Matrix::identity(n);
  const double scale = input.frobenius_norm();
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= eps * scale || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    if (sweep == kMaxSweeps - 1)
      throw Error(ErrorKind::Convergence, "Jacobi eigensolver: sweep budget exhausted");
  }

  SymmetricEigen out{Vector(n), std::move(v)};
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  sort_ascending(out);
  return out;
}

SymmetricEigen eig_sym_full(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::Model, "eig_sym: A and B differ in dimension");
  const std::size_t n = a.dim();
  const Cholesky chol(b);

  // C = L⁻¹ A L⁻ᵀ, built as L⁻¹ (L⁻¹ A)ᵀ since A is symmetric.
  Matrix x(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
    const Vector y = chol.forward(col);
    for (std::size_t i = 0; i < n; ++i) x(j, i) = y[i];  // stores (L⁻¹A)ᵀ
  }
  Matrix c(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector y = chol.forward(x.col(j));
    for (std::size_t i = 0; i < n; ++i) c(i, j) = y[i];
  }

  SymmetricEigen std_eig = eig_sym_full(SymmetricMatrix::symmetrized(c));
  for (std::size_t k = 0; k < n; ++k) {
    const Vector vk = chol.backward(std_eig.vectors.col(k));
    for (std::size_t i = 0; i < n; ++i) std_eig.vectors(i, k) = vk[i];
  }
  return std_eig;
}

Vector eig_sym(const SymmetricMatrix& a, std::size_t count) {
  Vector values = eig_sym_full(a).values;
  values.resize(std::min(count, values.size()));
  return values;
}

Vector eig_sym(const SymmetricMatrix& a, const SymmetricMatrix& b, std::size_t count) {
  Vector values = eig_sym_full(a, b).values;
  values.resize(std::min(count, values.size()));
  return values;
}

double min_eigenvalue(const SymmetricMatrix& a) {
  if (a.dim() == 0) return 0.0;
  if (a.dim() == 1) return a(0, 0);
  return eig_sym_full(a).values.front();
}

bool is_psd(const SymmetricMatrix& a, double tol) { return is_psd(a, tol, a.frobenius_norm()); }

bool is_psd(const SymmetricMatrix& a, double tol, double scale) {
  if (a.dim() == 0) return true;
  return min_eigenvalue(a) >= -tol * scale;
}

CyclicTridiagonal::CyclicTridiagonal(std::size_t dim)
    : diag_(dim, 0.0), off_(dim > 0 ? dim - 1 : 0, 0.0) {}

void CyclicTridiagonal::add(std::size_t i, std::size_t j, double value) {
  const std::size_t n = dim();
  if (i >= n || j >= n) throw Error(ErrorKind::Model, "CyclicTridiagonal::add: index out of range");
  if (i > j) std::swap(i, j);
  if (i == j) {
    diag_[i] += value;
  } else if (j == i + 1) {
    off_[i] += value;
  } else if (i == 0 && j == n - 1) {
    corner_ += value;
  } else {
    throw Error(ErrorKind::Model, "CyclicTridiagonal::add: (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is off the sparsity pattern");
  }
}

double CyclicTridiagonal::at(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  if (i > j) std::swap(i, j);
  if (i == j) return diag_[i];
  if (j == i + 1) return off_[i];
  if (i == 0 && j == n - 1) return corner_;
  return 0.0;
}

double CyclicTridiagonal::quadratic_form(std::span<const double> x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw Error(ErrorKind::Model, "CyclicTridiagonal::quadratic_form: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += diag_[i] * x[i] * x[i];
  for (std::size_t i = 0; i + 1 < n; ++i) s += 2.0 * off_[i] * x[i] * x[i + 1];
  if (n > 2) s += 2.0 * corner_ * x[0] * x[n - 1];
  return s;
}

SymmetricMatrix CyclicTridiagonal::dense() const {
  const std::size_t n = dim();
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, diag_[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, off_[i]);
  if (n > 2) m.set(0, n - 1, corner_);
  return m;
}

namespace {

struct Inertia {
  std::size_t negative = 0;
  bool singular = false;
};

// Solves the tridiagonal system T x = r by Gaussian elimination with partial
// pivoting. lower[i] is T(i+1,i), upper[i] is T(i,i+1).
Vector tridiagonal_solve(Vector lower, Vector diag, Vector upper, Vector r, double pivmin) {
  const std::size_t m = diag.size();
  Vector fill(m, 0.0);  // T(i,i+2) created by row swaps
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(diag[i]) >= std::abs(lower[i])) {
      if (std::abs(diag[i]) < pivmin) diag[i] = -pivmin;
      const double f = lower[i] / diag[i];
      diag[i + 1] -= f * upper[i];
      r[i + 1] -= f * r[i];
    } else {
      const double f = diag[i] / lower[i];
      diag[i] = lower[i];
      const double t = diag[i + 1];
      diag[i + 1] = upper[i] - f * t;
      if (i + 2 < m) {
        fill[i] = upper[i + 1];
        upper[i + 1] = -f * fill[i];
      }
      upper[i] = t;
      const double ri = r[i];
      r[i] = r[i + 1];
      r[i + 1] = ri - f * r[i];
    }
  }
  if (std::abs(diag[m - 1]) < pivmin) diag[m - 1] = -pivmin;
  Vector x(m);
  for (std::size_t k = m; k-- > 0;) {
    double v = r[k];
    if (k + 1 < m) v -= upper[k] * x[k + 1];
    if (k + 2 < m) v -= fill[k] * x[k + 2];
    x[k] = v / diag[k];
  }
  return x;
}

// Inertia of the cyclic tridiagonal matrix A − shift·B. The leading block T
// of order n−1 is counted by a Sturm sequence; the last row adds the sign of
// its Schur complement d − cᵀT⁻¹c, with T⁻¹c from a pivoted solve.
Inertia inertia(const CyclicTridiagonal& a, const CyclicTridiagonal& b, double shift) {
  const std::size_t n = a.dim();
  Inertia out;
  if (n == 0) return out;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(a.diag(i) - shift * b.diag(i)));
  const double pivmin = std::max(scale, 1.0) * std::numeric_limits<double>::epsilon() * 1e-6;

  auto pivot = [&](double p) {
    if (std::abs(p) < pivmin) {
      out.singular = true;
      p = -pivmin;
    }
    if (p < 0.0) ++out.negative;
    return p;
  };

  const double last = a.diag(n - 1) - shift * b.diag(n - 1);
  if (n == 1) {
    pivot(last);
    return out;
  }
  const std::size_t m = n - 1;
  Vector lower(m > 1 ? m - 1 : 0), diag(m), upper(m > 1 ? m - 1 : 0), c(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) diag[i] = a.diag(i) - shift * b.diag(i);
  for (std::size_t i = 0; i + 1 < m; ++i) lower[i] = upper[i] = a.off(i) - shift * b.off(i);
  c[m - 1] += a.off(m - 1) - shift * b.off(m - 1);
  if (n > 2) c[0] += a.corner() - shift * b.corner();

  double d = diag[0];
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double p = pivot(d);
    d = diag[i + 1] - lower[i] * lower[i] / p;
  }
  pivot(d);

  const Vector x = tridiagonal_solve(lower, diag, upper, c, pivmin);
  double schur = last;
  for (std::size_t i = 0; i < m; ++i) schur -= c[i] * x[i];
  pivot(schur);
  return out;
}

}  // namespace

std::size_t count_below(const CyclicTridiagonal& a, const CyclicTridiagonal& b, double shift) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::Model, "count_below: A and B differ in dimension");
  return inertia(a, b, shift).negative;
}

Vector lowest_pencil_eigenvalues(const CyclicTridiagonal& a, const CyclicTridiagonal& b,
                                 std::size_t count, double abs_tol, double rel_tol) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::Model, "lowest_pencil_eigenvalues: dimension mismatch");
  if (count > a.dim()) throw Error(ErrorKind::Model, "lowest_pencil_eigenvalues: count exceeds dimension");

  const CyclicTridiagonal zero(a.dim());
  const Inertia b_inertia = inertia(zero, b, -1.0);  // inertia of B itself
  if (b_inertia.negative > 0 || b_inertia.singular)
    throw Error(ErrorKind::Factorization, "lowest_pencil_eigenvalues: B is not positive definite");

  auto below = [&](double s) { return count_below(a, b, s); };

  double lo = -1.0;
  for (int k = 0; below(lo) > 0; ++k) {
    if (k > 1100) throw Error(ErrorKind::Convergence, "spectrum slicing: no lower bound found");
    lo *= 2.0;
  }
  double hi = 1.0;
  for (int k = 0; below(hi) < count; ++k) {
    if (k > 1100) throw Error(ErrorKind::Convergence, "spectrum slicing: no upper bound found");
    hi *= 2.0;
  }

  Vector values(count);
  for (std::size_t j = 0; j < count; ++j) {
    double l = lo;
    double h = hi;
    for (int it = 0; it < 400; ++it) {
      if (h - l <= abs_tol + rel_tol * std::max(std::abs(l), std::abs(h))) break;
      const double m = 0.5 * (l + h);
      if (m <= l || m >= h) break;
      if (below(m) > j) {
        h = m;
      } else {
        l = m;
      }
    }
    values[j] = 0.5 * (l + h);
    lo = l;  // eigenvalue j+1 is not below eigenvalue j
  }
  return values;
}

}  // namespace kvb::num
