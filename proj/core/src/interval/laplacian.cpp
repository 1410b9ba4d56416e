#include "kvb/interval/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kvb/error.hpp"
#include "kvb/numerics/quadrature.hpp"
#include "kvb/numerics/roots.hpp"

namespace kvb::interval {
namespace {

constexpr double kPoleTol = 1e-9;
constexpr double kTwoPi = 2.0 * kPi;

// Index n ≥ 1 of the pole 4n²π² nearest to λ > 0.
int nearest_pole_index(double lambda) {
  const int n = static_cast<int>(std::lround(std::sqrt(lambda) / kTwoPi));
  return std::max(n, 1);
}

double pole_distance(double lambda) {
  if (lambda <= 0.0) return pole(1) - lambda;
  return std::abs(lambda - pole(nearest_pole_index(lambda)));
}

}  // namespace

Cubic sf_inverse_on_kernel(Complex a, Complex b) {
  Cubic u;
  u.c[0] = 0.0;
  u.c[1] = a / 2.0 + b / 6.0;
  u.c[2] = -a / 2.0;
  u.c[3] = -b / 6.0;
  return u;
}

double resolvent_at_bottom(double x) { return (std::cos(kPi * x) - 1.0 + 2.0 * x) / kPiSq; }

double q_closed_form() {
  const auto rule = num::QuadratureRule::gauss_legendre(16, 10);
  const double norm_sq = num::integrate([](double x) { return (1 - 2 * x) * (1 - 2 * x); }, 0, 1, rule);
  const double weighted =
      num::integrate([](double x) { return (1 - 2 * x) * resolvent_at_bottom(x); }, 0, 1, rule);
  return kPiSq * norm_sq + kPiSq * kPiSq * weighted;
}

SeriesValue resolvent_series(double mu, std::size_t terms) {
  if (terms == 0) throw Error(ErrorKind::Domain, "series needs at least one term");
  if (!(mu < pole(1))) {
    throw Error(ErrorKind::Domain, "resolvent series requires mu < 4 pi^2, got " + to_text(mu));
  }
  double sum = 0.0;
  for (std::size_t k = terms; k >= 1; --k) {
    const double n = 2.0 * static_cast<double>(k);
    const double e = n * n * kPiSq;
    sum += 8.0 / (e * (e - mu));
  }
  const double kk = static_cast<double>(terms);
  return {sum, 2.0 / (9.0 * kPiSq * kPiSq * kk * kk * kk)};
}

num::Matrix v_basis() { return num::Matrix{{1.0}, {-2.0}}; }

DeficiencyModel deficiency_model(std::size_t terms, double tail_tol) {
  const auto rule = num::QuadratureRule::gauss_legendre(1, 5);
  const double g00 = num::integrate([](double) { return 1.0; }, 0, 1, rule);
  const double g01 = num::integrate([](double x) { return x; }, 0, 1, rule);
  const double g11 = num::integrate([](double x) { return x * x; }, 0, 1, rule);
  num::SymmetricMatrix gram{{g00, g01}, {g01, g11}};

  auto weighted = [terms, tail_tol](double mu) {
    const SeriesValue s = resolvent_series(mu, terms);
    if (s.tail_bound > tail_tol) {
      throw Error(ErrorKind::Convergence, "series tail bound " + to_text(s.tail_bound) +
                                              " exceeds " + to_text(tail_tol) + " with " +
                                              std::to_string(terms) + " terms");
    }
    return num::SymmetricMatrix::scalar(s.value);
  };
  return DeficiencyModel(kBottom, std::move(gram), v_basis(), weighted);
}

double pole(int n) { return 4.0 * n * n * kPiSq; }

double secular_F(double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorKind::Evaluation, "non-finite lambda");
  if (lambda > 0.0 && pole_distance(lambda) < kPoleTol) {
    throw Error(ErrorKind::Pole, "F has a pole at 4n^2 pi^2 near " + std::to_string(lambda));
  }
  if (std::abs(lambda) < 1e-3) {
    const double l = lambda;
    return l * (1.0 + l * (1.0 / 60.0 + l * (1.0 / 2520.0 + l / 100800.0)));
  }
  if (lambda > 0.0) {
    const double s = std::sqrt(lambda);
    return 12.0 - 6.0 * s / std::tan(s / 2.0);
  }
  const double kappa = std::sqrt(-lambda);
  return 12.0 - 6.0 * kappa / std::tanh(kappa / 2.0);
}

int definition_interval(double lambda) {
  if (lambda < pole(1)) return 0;
  return static_cast<int>(std::floor(std::sqrt(lambda) / kTwoPi));
}

std::vector<double> IntervalSpectrum::eigenvalues() const {
  std::vector<double> all(sin_family);
  all.insert(all.end(), secular_roots.begin(), secular_roots.end());
  std::sort(all.begin(), all.end());
  return all;
}

double secular_root(double t, int n) {
  if (n < 0) throw Error(ErrorKind::Domain, "interval index must be non-negative");
  if (!std::isfinite(t)) throw Error(ErrorKind::Domain, "t must be finite");
  auto g = [t](double lambda) { return secular_F(lambda) - t; };

  const double right = pole(n + 1);
  const double left = n == 0 ? -std::numeric_limits<double>::infinity() : pole(n);
  const double width = n == 0 ? right : right - left;

  // Upper end: approach the right pole until F exceeds t.
  double hi = 0.0;
  bool found_hi = false;
  for (double d = width / 4.0; d >= 2.0 * kPoleTol * std::max(1.0, right / 1e3); d /= 4.0) {
    hi = right - d;
    if (g(hi) > 0.0) {
      found_hi = true;
      break;
    }
  }
  // Lower end: approach the left pole, or walk to −∞ on the hyperbolic branch.
  double lo = 0.0;
  bool found_lo = false;
  if (n == 0) {
    for (double x = -1.0; x > -1e300; x *= 2.0) {
      if (g(x) < 0.0) {
        lo = x;
        found_lo = true;
        break;
      }
    }
  } else {
    for (double d = width / 4.0; d >= 2.0 * kPoleTol * std::max(1.0, left / 1e3); d /= 4.0) {
      lo = left + d;
      if (g(lo) < 0.0) {
        found_lo = true;
        break;
      }
    }
  }
  if (!found_lo || !found_hi || !(lo < hi)) {
    throw Error(ErrorKind::Search, "no bracket for F(lambda) = " + std::to_string(t) +
                                       " in interval " + std::to_string(n));
  }
  return num::bisect(g, lo, hi, std::numeric_limits<double>::min());
}

IntervalSpectrum spectrum(double t, double cutoff) {
  if (!(cutoff > 0.0)) throw Error(ErrorKind::Domain, "cutoff must be positive");
  IntervalSpectrum out;
  for (int n = 0;; ++n) {
    const double e = (2.0 * n + 1) * (2.0 * n + 1) * kPiSq;
    if (e > cutoff) break;
    out.sin_family.push_back(e);
  }
  const double first = secular_root(t, 0);
  if (first <= cutoff) out.secular_roots.push_back(first);
  for (int n = 1; pole(n) < cutoff; ++n) {
    const double r = secular_root(t, n);
    if (r <= cutoff) out.secular_roots.push_back(r);
  }
  out.bottom = std::min(kBottom, first);
  return out;
}

IntervalClassification classify(double b) {
  if (!std::isfinite(b)) throw Error(ErrorKind::Domain, "b must be finite");
  const double t = b_to_t(b);
  return {b >= 0.0 ? Classification::Top : Classification::NotTop, t, b,
          std::min(kBottom, secular_root(t, 0))};
}

IntervalSpectrum named_extension_spectrum(NamedExtension name, double cutoff) {
  IntervalSpectrum out;
  auto squares = [cutoff](int first, int step, std::vector<double>& dst) {
    for (int k = first;; k += step) {
      const double e = static_cast<double>(k) * k * kPiSq;
      if (e > cutoff) break;
      dst.push_back(e);
    }
  };
  switch (name) {
    case NamedExtension::Periodic:
      squares(2, 2, out.sin_family);
      squares(0, 2, out.secular_roots);
      out.bottom = 0.0;
      break;
    case NamedExtension::AntiPeriodic:
      squares(1, 2, out.sin_family);
      squares(1, 2, out.secular_roots);
      out.bottom = kBottom;
      break;
    case NamedExtension::Dirichlet:
      squares(1, 1, out.sin_family);
      out.bottom = kBottom;
      break;
  }
  return out;
}

Cubic domain_vector(double t, Complex alpha, Complex beta) {
  Cubic g;
  g.c[0] = alpha;
  g.c[1] = (t * alpha + 3.0 * beta) / 6.0 - 2.0 * alpha;
  g.c[2] = -(t * alpha + beta) / 2.0;
  g.c[3] = t * alpha / 3.0;
  return g;
}

double form_value_direct(const SampledFunction& g, double b) {
  const double g0 = g.value(0.0);
  const double g1 = g.value(1.0);
  if (std::abs(g0 + g1) > 1e-8) {
    throw Error(ErrorKind::Precondition,
                "g(0) + g(1) = " + std::to_string(g0 + g1) + " violates the boundary condition");
  }
  const auto dsq = [&g](double x) {
    const double d = g.derivative(x);
    return d * d;
  };
  return num::integrate_adaptive(dsq, 0.0, 1.0, 1e-13, 1e-13).value + b * g0 * g0;
}

std::vector<CurveSample> secular_curve(double lo, double hi, std::size_t samples) {
  if (!(lo < hi) || samples < 2) {
    throw Error(ErrorKind::Domain, "secular curve needs lo < hi and at least two samples");
  }
  std::vector<double> grid;
  grid.reserve(samples + 1);
  const double step = (hi - lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) grid.push_back(i + 1 == samples ? hi : lo + step * static_cast<double>(i));
  // The anchor F(π²) = 12 is always sampled when in range.
  if (lo <= kPiSq && kPiSq <= hi) {
    const auto at = std::lower_bound(grid.begin(), grid.end(), kPiSq);
    if (at == grid.end() || *at != kPiSq) grid.insert(at, kPiSq);
  }
  std::vector<CurveSample> out;
  out.reserve(grid.size());
  for (double lambda : grid) {
    if (pole_distance(lambda) < 1e-6) continue;
    out.push_back({lambda, secular_F(lambda), definition_interval(lambda)});
  }
  return out;
}

}  // namespace kvb::interval
