#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kvb/error.hpp"
#include "kvb/extension/extension.hpp"
#include "kvb/fem/fd_oracle.hpp"
#include "kvb/interval/laplacian.hpp"
#include "kvb/numerics/quadrature.hpp"

using namespace kvb;
using namespace kvb::interval;

namespace {

double gl(const std::function<double(double)>& f) {
  return num::integrate(f, 0.0, 1.0, num::QuadratureRule::gauss_legendre(32, 10));
}

// W(μ) = Σ_{n even} 8/(n²π²(n²π² − μ)) summed directly to a fixed depth,
// independent of resolvent_series.
double w_direct(double mu, int pairs) {
  long double s = 0;
  for (int k = pairs; k >= 1; --k) {
    const long double e = 4.0L * k * k * kPiSq;
    s += 8.0L / (e * (e - mu));
  }
  return static_cast<double>(s);
}

}  // namespace

TEST(SfInverse, Examples) {
  const Cubic u = sf_inverse_on_kernel(1.0, 0.0);
  EXPECT_EQ(u.c[1], Complex(0.5));
  EXPECT_EQ(u.c[2], Complex(-0.5));
  EXPECT_EQ(u.c[3], Complex(0.0));
  const Cubic z = sf_inverse_on_kernel(0.0, 0.0);
  for (const Complex& c : z.c) EXPECT_EQ(c, Complex(0.0));
  const Cubic w = sf_inverse_on_kernel(0.0, 6.0);  // x − x³
  EXPECT_EQ(w.c[1], Complex(1.0));
  EXPECT_EQ(w.c[3], Complex(-1.0));
}

TEST(SfInverse, SolvesDirichletProblem) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a(n(rng), n(rng)), b(n(rng), n(rng));
    const Cubic u = sf_inverse_on_kernel(a, b);
    EXPECT_EQ(u.value(0.0), Complex(0.0));
    EXPECT_LE(std::abs(u.value(1.0)), 1e-15 * (std::abs(a) + std::abs(b)));
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      EXPECT_LE(std::abs(-u.second_derivative(x) - (a + b * x)), 1e-10);
    }
  }
}

TEST(Resolvent, PointValues) {
  EXPECT_DOUBLE_EQ(resolvent_at_bottom(0.0), 0.0);
  EXPECT_NEAR(resolvent_at_bottom(0.5), 0.0, 1e-16);
  EXPECT_NEAR(resolvent_at_bottom(1.0), 0.0, 1e-16);
}

TEST(Resolvent, SolvesShiftedEquationAndIsMinimalNorm) {
  // u = π⁻²(cos πx − 1 + 2x): −u″ − π²u = 1 − 2x, orthogonal to sin πx.
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const double u2 = -std::cos(kPi * x);  // π² · u″ · π⁻² collapsed
    EXPECT_NEAR(-u2 - kPiSq * resolvent_at_bottom(x), 1 - 2 * x, 1e-14);
  }
  EXPECT_NEAR(gl([](double x) { return std::sin(kPi * x) * resolvent_at_bottom(x); }), 0.0, 1e-15);
}

TEST(Resolvent, ClosedFormQIsFour) { EXPECT_NEAR(q_closed_form(), 4.0, 1e-8); }

TEST(Resolvent, InnerProductWithCosine) {
  EXPECT_NEAR(gl([](double x) { return (1 - 2 * x) * std::cos(kPi * x); }), 4.0 / kPiSq, 1e-14);
}

TEST(Deficiency, EigenfunctionCoefficients) {
  for (int n = 1; n <= 12; ++n) {
    const double c = gl([n](double x) { return (1 - 2 * x) * std::sqrt(2.0) * std::sin(n * kPi * x); });
    const double expected = n % 2 ? 0.0 : 2 * std::sqrt(2.0) / (n * kPi);
    EXPECT_NEAR(c, expected, 1e-13) << n;
  }
}

TEST(Deficiency, GramMatrix) {
  const DeficiencyModel m = deficiency_model();
  EXPECT_NEAR(m.gram()(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(m.gram()(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(m.gram()(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.m_s(), kPiSq);
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_NEAR(m.gram_v()(0, 0), 1.0 / 3.0, 1e-15);
}

TEST(Deficiency, WeightedGramAtBottom) {
  const double expected = (4.0 - kPiSq / 3.0) / (kPiSq * kPiSq);
  const DeficiencyModel m = deficiency_model();
  EXPECT_NEAR(m.weighted_gram(kPiSq)(0, 0), expected, 1e-14);
  EXPECT_NEAR(kPiSq / 3.0 + kPiSq * kPiSq * expected, 4.0, 1e-14);
}

TEST(Deficiency, SeriesMatchesIndependentSum) {
  for (double mu : {-100.0, -1.0, 0.0, 3.0, kPiSq, 30.0}) {
    const SeriesValue s = resolvent_series(mu, 2000);
    // 2000 terms leave a tail of about 2e-13; the reported bound must cover it.
    const double diff = std::abs(s.value - w_direct(mu, 200000));
    EXPECT_LE(diff, s.tail_bound + 1e-15) << mu;
    EXPECT_LE(s.tail_bound, 3e-13) << mu;
  }
}

TEST(Deficiency, TailToleranceFailureIsConvergenceError) {
  const DeficiencyModel m = deficiency_model(10, 1e-9);
  try {
    m.weighted_gram(1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Convergence);
  }
}

TEST(Deficiency, TqAtTenThousandTerms) {
  const TqResult tq = build_q(deficiency_model(10000));
  EXPECT_NEAR(*tq.t_q_scalar, kTq, 1e-6);
}

TEST(Parameters, BToT) {
  EXPECT_DOUBLE_EQ(b_to_t(0.0), 12.0);
  EXPECT_DOUBLE_EQ(t_to_b(0.0), -4.0);
  EXPECT_DOUBLE_EQ(b_to_t(100.0), 312.0);
  for (double b : {-7.5, -0.1, 3.25, 1e4}) EXPECT_NEAR(t_to_b(b_to_t(b)), b, 1e-12 * (1 + std::abs(b)));
}

TEST(Secular, Values) {
  EXPECT_NEAR(secular_F(kPiSq), 12.0, 1e-14);
  EXPECT_DOUBLE_EQ(secular_F(0.0), 0.0);
  EXPECT_NEAR(secular_F(9 * kPiSq), 12.0, 1e-12);
  EXPECT_NEAR(secular_F(25 * kPiSq), 12.0, 1e-12);
}

TEST(Secular, UnsimplifiedFormAwayFromRemovableSingularities) {
  for (double l : {-50.0, -3.0, 0.5, 5.0, 20.0, 60.0, 200.0, 1000.0}) {
    double expected;
    if (l > 0) {
      const double s = std::sqrt(l);
      expected = 12 - 6 * s * (1 + std::cos(s)) / std::sin(s);
    } else {
      const double k = std::sqrt(-l);
      expected = 12 - 6 * k * (1 + std::cosh(k)) / std::sinh(k);
    }
    EXPECT_NEAR(secular_F(l), expected, 1e-11 * std::max(1.0, std::abs(expected))) << l;
  }
}

TEST(Secular, ResolventSeriesIdentity) {
  // F(λ) = λ + 3λ²W(λ), from the eigenfunction expansion of the resolvent on V.
  for (double l : {-200.0, -20.0, -1e-4, 2e-4, 1.0, kPiSq, 25.0, 39.0}) {
    const double w = w_direct(l, 200000);
    EXPECT_NEAR(secular_F(l), l + 3 * l * l * w, 1e-9 * std::max(1.0, std::abs(l))) << l;
  }
}

TEST(Secular, SmallLambdaBranchIsContinuous) {
  for (double l : {-1e-3, 1e-3}) {
    const double below = secular_F(l * (1 - 1e-12));
    const double above = secular_F(l * (1 + 1e-12));
    EXPECT_NEAR(below, above, 1e-12);
  }
}

TEST(Secular, PolesRaisePoleError) {
  for (int n = 1; n <= 3; ++n) {
    try {
      secular_F(pole(n) + 1e-10);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Pole);
    }
  }
}

TEST(Secular, IncreasingOnEveryInterval) {
  std::mt19937_64 rng(37);
  for (int n = 0; n <= 4; ++n) {
    const double lo = n == 0 ? -500.0 : pole(n) + 1e-6;
    const double hi = pole(n + 1) - 1e-6;
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 200; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-9) continue;
      EXPECT_LT(secular_F(a), secular_F(b)) << a << " " << b;
    }
  }
}

TEST(Secular, DefinitionInterval) {
  EXPECT_EQ(definition_interval(-10.0), 0);
  EXPECT_EQ(definition_interval(kPiSq), 0);
  EXPECT_EQ(definition_interval(5 * kPiSq), 1);
  EXPECT_EQ(definition_interval(17 * kPiSq), 2);
}

TEST(Spectrum, Examples) {
  EXPECT_NEAR(spectrum(12.0, 100.0).bottom, kPiSq, 1e-13);
  const IntervalSpectrum zero = spectrum(0.0, 100.0);
  EXPECT_NEAR(zero.bottom, 0.0, 1e-12);
  const IntervalSpectrum three = spectrum(3.0, 100.0);
  EXPECT_LT(three.bottom, kPiSq);
  EXPECT_GT(three.bottom, 0.0);
  EXPECT_NEAR(secular_F(three.bottom), 3.0, 1e-10);
}

TEST(Spectrum, SinFamilyAlwaysPresent) {
  for (double t : {-40.0, 0.0, 12.0, 77.0}) {
    const IntervalSpectrum s = spectrum(t, 300.0);
    ASSERT_EQ(s.sin_family.size(), 3u);  // π², 9π², 25π²
    for (std::size_t n = 0; n < 3; ++n) {
      EXPECT_DOUBLE_EQ(s.sin_family[n], (2.0 * n + 1) * (2.0 * n + 1) * kPiSq);
    }
    // At most one secular root per definition interval, each solving F = t.
    ASSERT_GE(s.secular_roots.size(), 2u);
    for (std::size_t i = 0; i < s.secular_roots.size(); ++i) {
      const double r = s.secular_roots[i];
      EXPECT_EQ(definition_interval(r), static_cast<int>(i));
      EXPECT_LE(r, 300.0);
      EXPECT_NEAR(secular_F(r), t, 1e-8 * std::max(1.0, r));
    }
  }
}

TEST(Spectrum, AntiPeriodicSecularRootsAreOddSquares) {
  const IntervalSpectrum s = spectrum(12.0, 600.0);
  for (std::size_t i = 0; i < s.secular_roots.size(); ++i) {
    const double n = 2.0 * i + 1;
    EXPECT_NEAR(s.secular_roots[i], n * n * kPiSq, 1e-9 * n * n);
  }
}

TEST(Spectrum, ThresholdAndOrdering) {
  double prev = -1e300;
  for (int i = 0; i < 200; ++i) {
    const double t = -50.0 + 350.0 * i / 199.0;
    const double bottom = spectrum(t, kPiSq).bottom;
    EXPECT_EQ(bottom >= kPiSq, t >= 12.0) << t;
    EXPECT_GE(bottom, prev) << t;
    prev = bottom;
  }
}

TEST(Spectrum, MatchesFiniteElementsForSeveralEigenvalues) {
  for (double b : {-3.0, 0.0, 2.0}) {
    const IntervalSpectrum s = spectrum(b_to_t(b), 200.0);
    const std::vector<double> exact = s.eigenvalues();
    const fem::DiscreteOperator op = fem::assemble(1000, fem::AntiPeriodicRobin{b});
    const std::vector<double> approx = fem::lowest_eigenvalues(op, exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
      EXPECT_NEAR(approx[k], exact[k], 2e-4 * std::max(1.0, exact[k])) << "b=" << b << " k=" << k;
    }
  }
}

TEST(Spectrum, RejectsNonPositiveCutoff) { EXPECT_THROW(spectrum(12.0, 0.0), Error); }

TEST(Classify, Examples) {
  const IntervalClassification zero = classify(0.0);
  EXPECT_EQ(zero.classification, Classification::Top);
  EXPECT_DOUBLE_EQ(zero.t, 12.0);
  EXPECT_NEAR(zero.bottom, kPiSq, 1e-13);
  const IntervalClassification neg = classify(-0.5);
  EXPECT_EQ(neg.classification, Classification::NotTop);
  EXPECT_LT(neg.bottom, kPiSq);
  EXPECT_EQ(classify(7.0).classification, Classification::Top);
  EXPECT_DOUBLE_EQ(classify(7.0).t, 33.0);
  EXPECT_DOUBLE_EQ(classify(-2.0).margin, -2.0);
}

TEST(Classify, AgreesWithKvbCriterion) {
  const DeficiencyModel m = deficiency_model();
  const TqResult tq = build_q(m);
  for (double b = -5.0; b <= 5.0; b += 0.25) {
    const auto p = ExtensionParameter::multiplication(m.v_basis(), b_to_t(b), m.gram());
    EXPECT_EQ(classify(b).classification == Classification::Top, is_top_extension(p, tq)) << b;
  }
}

TEST(Named, ClosedFormBottoms) {
  EXPECT_DOUBLE_EQ(named_extension_spectrum(NamedExtension::Periodic, 100).bottom, 0.0);
  EXPECT_DOUBLE_EQ(named_extension_spectrum(NamedExtension::AntiPeriodic, 100).bottom, kPiSq);
  EXPECT_DOUBLE_EQ(named_extension_spectrum(NamedExtension::Dirichlet, 100).bottom, kPiSq);
}

TEST(Named, ListsMatchFiniteElements) {
  using fem::OracleBc;
  const std::pair<NamedExtension, OracleBc> cases[] = {
      {NamedExtension::Periodic, fem::Periodic{}},
      {NamedExtension::AntiPeriodic, fem::AntiPeriodicRobin{0.0}},
      {NamedExtension::Dirichlet, Dirichlet{}},
  };
  for (const auto& [name, bc] : cases) {
    const std::vector<double> exact = named_extension_spectrum(name, 30 * kPiSq).eigenvalues();
    const std::vector<double> approx = fem::lowest_eigenvalues(fem::assemble(1000, bc), exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
      EXPECT_NEAR(approx[k], exact[k], 1e-8 + 2e-4 * exact[k]) << k;
    }
  }
}

TEST(Named, AntiPeriodicIsTheTqMember) {
  const auto a = named_extension_spectrum(NamedExtension::AntiPeriodic, 400.0).eigenvalues();
  const auto s = spectrum(12.0, 400.0).eigenvalues();
  ASSERT_EQ(a.size(), s.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], s[k], 1e-9 * a[k]);
}

TEST(DomainVector, Examples) {
  const Cubic z = domain_vector(7.0, 0.0, 0.0);
  for (const Complex& c : z.c) EXPECT_EQ(c, Complex(0.0));
  const Cubic g = domain_vector(12.0, 1.0, 0.0);
  EXPECT_NEAR(std::abs(g.value(0) + g.value(1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.derivative(0) + g.derivative(1)), 0.0, 1e-14);
  const Cubic h = domain_vector(15.0, 1.0, 2.0);
  EXPECT_NEAR(std::abs(h.derivative(0) + h.derivative(1) - 1.0), 0.0, 1e-14);
}

TEST(DomainVector, BoundaryValuesAndDecomposition) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    const double t = 20.0 * n(rng);
    const Complex a(n(rng), n(rng)), b(n(rng), n(rng));
    const Cubic g = domain_vector(t, a, b);
    EXPECT_LE(std::abs(g.value(0) - a), 1e-14);
    EXPECT_LE(std::abs(g.value(1) + a), 1e-12 * (1 + std::abs(t)));
    EXPECT_LE(std::abs(g.derivative(0) - (t * a / 6.0 + b / 2.0 - 2.0 * a)), 1e-12 * (1 + std::abs(t)));
    EXPECT_LE(std::abs(g.derivative(1) - (t * a / 6.0 - b / 2.0 - 2.0 * a)), 1e-12 * (1 + std::abs(t)));
    EXPECT_LE(std::abs(g.derivative(0) + g.derivative(1) - t_to_b(t) * g.value(0)), 1e-12 * (1 + std::abs(t)));
    // g = S_F⁻¹(tα(1 − 2x) + β) + α(1 − 2x).
    const Cubic u = sf_inverse_on_kernel(t * a + b, -2.0 * t * a);
    for (double x : {0.1, 0.4, 0.9}) {
      EXPECT_LE(std::abs(g.value(x) - (u.value(x) + a * (1 - 2 * x))), 1e-12 * (1 + std::abs(t)));
    }
  }
}

TEST(FormValue, Examples) {
  const SampledFunction s{[](double x) { return std::sin(kPi * x); },
                          [](double x) { return kPi * std::cos(kPi * x); }};
  EXPECT_NEAR(form_value_direct(s, 123.0), kPiSq / 2, 1e-12);
  const SampledFunction zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  EXPECT_DOUBLE_EQ(form_value_direct(zero, 5.0), 0.0);
  const SampledFunction bad{[](double) { return 1.0; }, [](double) { return 0.0; }};
  try {
    form_value_direct(bad, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(FormValue, MatchesDecomposition) {
  // g = f + α(1 − 2x), f = Σ c_k sin(kπx): ∫|g′|² + b g(0)² = ∫|f′|² + (4 + b)α².
  const DeficiencyModel m = deficiency_model();
  std::mt19937_64 rng(43);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = n(rng), c2 = n(rng), c3 = n(rng), alpha = n(rng), b = 5.0 * n(rng);
    auto f = [=](double x) {
      return c1 * std::sin(kPi * x) + c2 * std::sin(2 * kPi * x) + c3 * std::sin(3 * kPi * x);
    };
    auto fp = [=](double x) {
      return kPi * (c1 * std::cos(kPi * x) + 2 * c2 * std::cos(2 * kPi * x) + 3 * c3 * std::cos(3 * kPi * x));
    };
    const SampledFunction g{[=](double x) { return f(x) + alpha * (1 - 2 * x); },
                            [=](double x) { return fp(x) - 2 * alpha; }};
    const double sf = kPiSq / 2 * (c1 * c1 + 4 * c2 * c2 + 9 * c3 * c3);
    const auto p = ExtensionParameter::multiplication(m.v_basis(), b_to_t(b), m.gram());
    const std::vector<double> v{alpha, -2 * alpha};
    EXPECT_NEAR(form_value_direct(g, b), form_decomposition_value(sf, p, v), 1e-10 * (1 + sf));
  }
}

TEST(SecularCurve, SkipsPolesAndAnnotates) {
  const auto curve = secular_curve(-20.0, 100.0, 500);
  EXPECT_GT(curve.size(), 490u);
  bool has_pi_sq_row = false;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) EXPECT_LT(curve[i - 1].lambda, curve[i].lambda);
    EXPECT_EQ(curve[i].interval_index, definition_interval(curve[i].lambda));
    if (i > 0 && curve[i - 1].interval_index == curve[i].interval_index) {
      EXPECT_LT(curve[i - 1].f_value, curve[i].f_value);
    }
    for (int n = 1; n <= 3; ++n) EXPECT_GE(std::abs(curve[i].lambda - pole(n)), 1e-6);
  }
  for (const CurveSample& c : curve) {
    if (c.lambda == kPiSq) has_pi_sq_row = std::abs(c.f_value - 12.0) < 1e-13;
  }
  EXPECT_TRUE(has_pi_sq_row);
  EXPECT_EQ(secular_curve(kPiSq, 100.0, 3).size(), 3u);
  EXPECT_EQ(secular_curve(20.0, 30.0, 3).size(), 3u);
}

TEST(SecularCurve, DropsSamplesOnAPole) {
  const double p = pole(1);
  const auto curve = secular_curve(p - 1.0, p + 1.0, 3);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0].interval_index, 0);
  EXPECT_EQ(curve[1].interval_index, 1);
}
