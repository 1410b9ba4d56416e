#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kvb/error.hpp"
#include "kvb/interval/laplacian.hpp"
#include "kvb/numerics/digamma.hpp"
#include "kvb/numerics/eigen.hpp"
#include "kvb/numerics/quadrature.hpp"
#include "kvb/numerics/roots.hpp"

using namespace kvb;
using namespace kvb::num;

namespace {

constexpr double kPi = std::numbers::pi;

SymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, normal(rng));
  return a;
}

SymmetricMatrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(rng);
  SymmetricMatrix a = SymmetricMatrix::symmetrized(g.transpose() * g);
  for (std::size_t i = 0; i < n; ++i) a.add(i, i, 0.5);
  return a;
}

Matrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  // Eigenvectors of a random symmetric matrix.
  return eig_sym_full(random_symmetric(rng, n)).vectors;
}

}  // namespace

TEST(Bisect, SquareRootOfTwo) {
  const double r = bisect([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-12);
}

TEST(Bisect, OddFunctionRoot) {
  EXPECT_NEAR(bisect([](double x) { return x; }, -1.0, 1.0, 1e-12), 0.0, 1e-12);
}

TEST(Bisect, SecularRootAtPiSquared) {
  auto f = [](double l) { return interval::secular_F(l) - 12.0; };
  const double r = bisect(f, 1e-6, 4 * kPi * kPi - 1e-6, 1e-12);
  EXPECT_NEAR(r, kPi * kPi, 1e-10);
}

TEST(Bisect, SameSignsIsBracketError) {
  try {
    bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Bracket);
  }
}

TEST(Bisect, NonFiniteValueIsEvaluationError) {
  auto f = [](double x) { return x < 0.3 ? -1.0 : std::nan(""); };
  try {
    bisect(f, Bracket{0.0, 1.0, -1.0, 1.0}, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Evaluation);
  }
}

TEST(Bisect, OnlyEvaluatesInsideBracketAndKeepsSignChange) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double root = u(rng);
    const double lo = root - 1.0 - std::abs(u(rng));
    const double hi = root + 0.5 + std::abs(u(rng));
    double seen_lo = hi, seen_hi = lo;
    auto f = [&](double x) {
      seen_lo = std::min(seen_lo, x);
      seen_hi = std::max(seen_hi, x);
      return std::tanh(x - root);
    };
    const double tol = 1e-9;
    const double x = bisect(f, lo, hi, tol);
    EXPECT_GE(seen_lo, lo);
    EXPECT_LE(seen_hi, hi);
    EXPECT_LT(std::tanh(x - tol - root), 0.0 + 1e-300);
    EXPECT_GT(std::tanh(x + tol - root), 0.0 - 1e-300);
  }
}

TEST(Integrate, SquareOfVBasisVector) {
  const double v = integrate([](double x) { return (1 - 2 * x) * (1 - 2 * x); }, 0, 1,
                             QuadratureRule::gauss_legendre(4));
  EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(Integrate, Constant) {
  EXPECT_NEAR(integrate([](double) { return 1.0; }, 0, 1, QuadratureRule::simpson(3)), 1.0, 1e-15);
}

TEST(Integrate, SineIsOrthogonalToVBasisVector) {
  // ∫ sin(πx)(1 − 2x) dx = 2/π − 2/π = 0.
  const double v = integrate([](double x) { return std::sin(kPi * x) * (1 - 2 * x); }, 0, 1,
                             QuadratureRule::gauss_legendre(8, 10));
  EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Integrate, RejectsBadInput) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1, 0, QuadratureRule::simpson(2)), Error);
  EXPECT_THROW(QuadratureRule::gauss_legendre(4, 17), Error);
  EXPECT_THROW(QuadratureRule::gauss_legendre(0), Error);
  try {
    integrate([](double x) { return 1.0 / (x - 0.5); }, 0, 1, QuadratureRule::simpson(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Evaluation);
  }
}

TEST(Integrate, GaussLegendreFiveNodeOrder) {
  auto f = [](double x) { return std::exp(std::sin(3 * x)); };
  const double exact = integrate_adaptive(f, 0, 2, 1e-15, 1e-15).value;
  double prev_err = std::abs(integrate(f, 0, 2, QuadratureRule::gauss_legendre(2)) - exact);
  for (std::size_t p = 4; p <= 16; p *= 2) {
    const double err = std::abs(integrate(f, 0, 2, QuadratureRule::gauss_legendre(p)) - exact);
    if (err < 1e-13) break;  // rounding floor
    EXPECT_GE(std::log2(prev_err / err), 8.0) << "panels " << p;
    prev_err = err;
  }
}

TEST(Integrate, SimpsonIsFourthOrder) {
  auto f = [](double x) { return std::cos(x); };
  const double exact = std::sin(1.0);
  const double e1 = std::abs(integrate(f, 0, 1, QuadratureRule::simpson(8)) - exact);
  const double e2 = std::abs(integrate(f, 0, 1, QuadratureRule::simpson(16)) - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.1);
}

TEST(Integrate, GaussLegendreNodesAreExactForPolynomials) {
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto gl = gauss_legendre_nodes(n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], double(k));
      const double exact = k % 2 ? 0.0 : 2.0 / double(k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Integrate, AdaptiveBudgetExhaustionIsConvergenceError) {
  try {
    integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0, 1, 1e-14, 0, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Convergence);
  }
}

TEST(Digamma, AtOneIsMinusEulerGamma) {
  EXPECT_NEAR(digamma(1.0), -0.57721566490153286, 1e-15);
}

TEST(Digamma, AtTwo) { EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-15); }

TEST(Digamma, AtTenFromHarmonicNumber) {
  // ψ(10) = H₉ − γ with H₉ = 7129/2520.
  EXPECT_NEAR(digamma(10.0), 7129.0 / 2520.0 - kEulerGamma, 1e-14);
  EXPECT_NEAR(digamma(10.0), 2.2517525890667211, 1e-14);
}

TEST(Digamma, HalfIntegerOracles) {
  // ψ(1/2) = −γ − 2 ln 2, ψ(n + 1/2) = ψ(1/2) + Σ 2/(2k − 1).
  double psi = -kEulerGamma - 2.0 * std::log(2.0);
  EXPECT_NEAR(digamma(0.5), psi, 1e-14);
  for (int n = 1; n <= 40; ++n) {
    psi += 2.0 / (2.0 * n - 1.0);
    EXPECT_NEAR(digamma(n + 0.5), psi, 1e-12 * std::abs(psi) + 1e-15) << n;
  }
}

TEST(Digamma, LargeArgumentAsymptotics) {
  for (double z : {1e3, 1e4, 1e6}) {
    const double approx = std::log(z) - 1.0 / (2 * z) - 1.0 / (12 * z * z);
    EXPECT_NEAR(digamma(z), approx, 1e-12 * std::log(z));
  }
}

TEST(Digamma, SmallArgumentPole) {
  // ψ(z) = −1/z − γ + ζ(2)z − ζ(3)z² + ζ(4)z³ + O(z⁴).
  const double z = 1e-3;
  const double expected = -1 / z - kEulerGamma + 1.6449340668482264 * z -
                          1.2020569031595942 * z * z + 1.0823232337111382 * z * z * z;
  EXPECT_NEAR(digamma(z), expected, 1e-11);
}

TEST(Digamma, RecurrenceProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 500; ++i) {
    const double z = u(rng);
    EXPECT_NEAR(digamma(z + 1) - digamma(z) - 1.0 / z, 0.0, 1e-12) << z;
  }
}

TEST(Digamma, DomainErrors) {
  for (double z : {0.0, -1.0, std::nan("")}) {
    try {
      digamma(z);
      FAIL() << z;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
  }
}

TEST(EigSym, TridiagonalClosedForm) {
  const std::size_t n = 12;
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, 2.0);
    if (i + 1 < n) a.set(i, i + 1, -1.0);
  }
  const Vector ev = eig_sym(a, n);
  for (std::size_t k = 1; k <= n; ++k) {
    EXPECT_NEAR(ev[k - 1], 2.0 - 2.0 * std::cos(k * kPi / (n + 1)), 1e-13);
  }
}

TEST(EigSym, IdentityAndTwoByTwo) {
  for (double v : eig_sym(SymmetricMatrix::identity(5), 5)) EXPECT_DOUBLE_EQ(v, 1.0);
  const Vector ev = eig_sym(SymmetricMatrix{{1, 2}, {2, 1}}, 2);
  EXPECT_NEAR(ev[0], -1.0, 1e-15);
  EXPECT_NEAR(ev[1], 3.0, 1e-15);
}

TEST(EigSym, GeneralizedResiduals) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SymmetricMatrix a = random_symmetric(rng, 8);
    const SymmetricMatrix b = random_spd(rng, 8);
    const SymmetricEigen e = eig_sym_full(a, b);
    for (std::size_t k = 0; k < 8; ++k) {
      const Vector v = e.vectors.col(k);
      const Vector av = a.apply(v);
      const Vector bv = b.apply(v);
      Vector r(8);
      for (std::size_t i = 0; i < 8; ++i) r[i] = av[i] - e.values[k] * bv[i];
      EXPECT_LE(norm2(r) / norm2(v), 1e-10 * a.frobenius_norm());
    }
    for (std::size_t k = 1; k < 8; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
  }
}

TEST(EigSym, NonDefiniteBIsFactorizationError) {
  try {
    eig_sym(SymmetricMatrix::identity(2), SymmetricMatrix{{1, 2}, {2, 1}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Factorization);
  }
}

TEST(EigSym, InvariantUnderOrthogonalCongruence) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6;
    const SymmetricMatrix a = random_symmetric(rng, n);
    const SymmetricMatrix b = random_spd(rng, n);
    const Matrix q = random_orthogonal(rng, n);
    const Vector e1 = eig_sym(a, b, n);
    const Vector e2 = eig_sym(a.congruence(q), b.congruence(q), n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(e1[k], e2[k], 1e-10 * std::max(1.0, std::abs(e1[k])));
    }
  }
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(SymmetricMatrix::identity(3), 0.0));
  EXPECT_FALSE(is_psd(SymmetricMatrix{{1, 2}, {2, 1}}, 1e-10));
  EXPECT_TRUE(is_psd(SymmetricMatrix(4), 0.0));
}

TEST(IsPsd, AgreesWithMinEigenvalue) {
  std::mt19937_64 rng(9);
  int psd_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    SymmetricMatrix a = random_symmetric(rng, 4);
    // Shift half the samples to be clearly positive definite.
    if (trial % 2) a += 5.0 * SymmetricMatrix::identity(4);
    const bool expected = eig_sym(a, 1)[0] >= 0.0;
    psd_count += expected;
    EXPECT_EQ(is_psd(a, 0.0), expected);
  }
  EXPECT_GT(psd_count, 50);
  EXPECT_LT(psd_count, 300);
}

TEST(PencilSlicing, MatchesDenseJacobi) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + trial;
    CyclicTridiagonal a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a.add(i, i, 3.0 * u(rng));
      b.add(i, i, 4.0);
      if (i + 1 < n) {
        a.add(i, i + 1, u(rng));
        b.add(i, i + 1, 0.5 * u(rng));
      }
    }
    a.add(0, n - 1, u(rng));
    b.add(0, n - 1, 0.5 * u(rng));
    const Vector dense = eig_sym(a.dense(), b.dense(), 5);
    const Vector sliced = lowest_pencil_eigenvalues(a, b, 5);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(sliced[k], dense[k], 1e-11);
  }
}

TEST(PencilSlicing, CountBelowMatchesDense) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::size_t n = 15;
  CyclicTridiagonal a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.add(i, i, u(rng));
    b.add(i, i, 1.0);
    if (i + 1 < n) a.add(i, i + 1, u(rng));
  }
  a.add(0, n - 1, u(rng));
  const Vector all = eig_sym(a.dense(), n);
  for (double shift : {-3.0, -1.0, 0.0, 0.7, 2.5, 6.0}) {
    const auto expected = static_cast<std::size_t>(
        std::count_if(all.begin(), all.end(), [shift](double v) { return v < shift; }));
    EXPECT_EQ(count_below(a, b, shift), expected) << shift;
  }
}

TEST(PencilSlicing, OffPatternAddIsRejected) {
  CyclicTridiagonal a(6);
  EXPECT_THROW(a.add(0, 3, 1.0), Error);
  EXPECT_NO_THROW(a.add(5, 0, 1.0));
  EXPECT_DOUBLE_EQ(a.at(0, 5), 1.0);
}

TEST(Matrix, CholeskySolveAndRank) {
  const SymmetricMatrix a{{4, 2}, {2, 3}};
  const Cholesky c(a);
  const Vector x = c.solve(Vector{2, 1});
  const Vector ax = a.apply(x);
  EXPECT_NEAR(ax[0], 2, 1e-15);
  EXPECT_NEAR(ax[1], 1, 1e-15);
  EXPECT_EQ(column_rank(Matrix{{1, 2}, {-2, -4}}, 1e-10), 1u);
  EXPECT_EQ(column_rank(Matrix{{1, 0}, {0, 1}}, 1e-10), 2u);
  EXPECT_THROW(SymmetricMatrix({{1, 2}, {3, 1}}), Error);
}

TEST(SpectrumSlicing, PeriodicLinearElementsMatchClosedForm) {
  // Periodic P1 on n cells: λ_k = (6/h²)(1 − cos θ)/(2 + cos θ), θ = 2πk/n,
  // double for 0 < k < n/2.
  for (std::size_t n : {std::size_t{40}, std::size_t{41}, std::size_t{400}}) {
    const double h = 1.0 / static_cast<double>(n);
    CyclicTridiagonal a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      a.add(i, i, 1 / h);
      a.add(j, j, 1 / h);
      a.add(i, j, -1 / h);
      b.add(i, i, h / 3);
      b.add(j, j, h / 3);
      b.add(i, j, h / 6);
    }
    std::vector<double> expected;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = std::cos(2 * std::numbers::pi * static_cast<double>(k) * h);
      expected.push_back(6 / (h * h) * (1 - c) / (2 + c));
    }
    std::sort(expected.begin(), expected.end());
    const Vector sliced = lowest_pencil_eigenvalues(a, b, 9);
    for (std::size_t k = 0; k < 9; ++k)
      EXPECT_NEAR(sliced[k], expected[k], 1e-9 * (1 + expected[k])) << "n=" << n << " k=" << k;
  }
}
