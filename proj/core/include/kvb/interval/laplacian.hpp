#pragma once

// −d²/dx² on L²(0,1), minimally defined on C₀^∞(0,1). m(S) = π²,
// ker S* = span{1, x}, V = span{1 − 2x}, and the one-parameter family of
// extensions with boundary conditions g(0) + g(1) = 0, g′(0) + g′(1) = b·g(0).

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <variant>
#include <vector>

#include "kvb/extension/classification.hpp"
#include "kvb/extension/deficiency_model.hpp"
#include "kvb/numerics/matrix.hpp"

namespace kvb::interval {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPiSq = kPi * kPi;
/// Lower bound of S and of the Dirichlet (Friedrichs) Laplacian.
inline constexpr double kBottom = kPiSq;
/// Threshold of the extension parameter on V for top extensions.
inline constexpr double kTq = 12.0;

using Complex = std::complex<double>;

// Self-adjoint boundary conditions, one struct per class.

/// g′(0) = b1 g(0) + c g(1),  g′(1) = −c̄ g(0) − b2 g(1).
struct TwoDim {
  double b1;
  double b2;
  Complex c;
};
/// g′(0) = b1 g(0) + c̄ g′(1),  g(1) = c g(0).
struct OneDimA {
  double b1;
  Complex c;
};
/// g′(1) = −b1 g(1),  g(0) = 0.
struct OneDimB {
  double b1;
};
/// g(0) = 0 = g(1).
struct Dirichlet {};

using BoundaryCondition = std::variant<TwoDim, OneDimA, OneDimB, Dirichlet>;

/// c0 + c1 x + c2 x² + c3 x³ with complex coefficients.
struct Cubic {
  std::array<Complex, 4> c{};

  Complex value(double x) const { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); }
  Complex derivative(double x) const { return c[1] + x * (2.0 * c[2] + x * 3.0 * c[3]); }
  Complex second_derivative(double x) const { return 2.0 * c[2] + 6.0 * x * c[3]; }
};

/// u = S_F⁻¹(a + b x): the solution of −u″ = a + b x with u(0) = u(1) = 0.
Cubic sf_inverse_on_kernel(Complex a, Complex b);

/// (S_F − π²)⁻¹(1 − 2x) = π⁻²(cos πx − 1 + 2x), the minimal-norm solution.
double resolvent_at_bottom(double x);

/// q[1 − 2x] = π²‖1 − 2x‖² + π⁴⟨1 − 2x, (S_F − π²)⁻¹(1 − 2x)⟩ evaluated by
/// quadrature with the closed-form resolvent. Equals 4.
double q_closed_form();

struct SeriesValue {
  double value;
  double tail_bound;
};

/// ⟨1 − 2x, (S_F − μ)⁻¹(1 − 2x)⟩ = Σ_{n even} 8 / (n²π² (n²π² − μ)),
/// summed over the first `terms` even modes. Valid for μ < 4π²; at μ = π²
/// it is ‖(S_F − π²)^{-1/2}(1 − 2x)‖² (the n = 1 mode is orthogonal to V).
SeriesValue resolvent_series(double mu, std::size_t terms);

inline constexpr std::size_t kDefaultSeriesTerms = 10000;
inline constexpr double kDefaultTailTol = 1e-9;

/// Basis {1, x} of ker S*, V-basis (1, −2), weighted Gram by the eigenfunction
/// series. weighted_gram throws ErrorKind::Convergence when the tail bound
/// exceeds tail_tol.
DeficiencyModel deficiency_model(std::size_t terms = kDefaultSeriesTerms,
                                 double tail_tol = kDefaultTailTol);

/// Coefficients of 1 − 2x in the {1, x} basis.
num::Matrix v_basis();

/// t = 3b + 12 relates the boundary parameter b to the multiplication
/// parameter t on V.
constexpr double b_to_t(double b) noexcept { return 3.0 * b + 12.0; }
constexpr double t_to_b(double t) noexcept { return (t - 12.0) / 3.0; }

/// F(λ) = 12 − 6√λ cot(√λ/2), with the hyperbolic form for λ < 0 and the
/// continuous value 0 at λ = 0. Poles at 4n²π², n ≥ 1; throws ErrorKind::Pole
/// within 1e-9 of one.
double secular_F(double lambda);

/// 0 on (−∞, 4π²), n on (4n²π², 4(n+1)²π²).
int definition_interval(double lambda);
/// Left pole of interval n (n ≥ 1).
double pole(int n);

struct IntervalSpectrum {
  std::vector<double> sin_family;     // eigenvalues of sine modes, ≤ cutoff
  std::vector<double> secular_roots;  // remaining eigenvalues, ≤ cutoff
  double bottom;                      // lowest eigenvalue (independent of cutoff)

  /// Union of both lists with multiplicity, ascending.
  std::vector<double> eigenvalues() const;
};

/// Spectrum of the extension with parameter t: {(2n+1)²π²} plus one root of
/// F(λ) = t in every definition interval.
IntervalSpectrum spectrum(double t, double cutoff);

/// Root of F(λ) = t in definition interval n, found by bracket scan + bisection.
double secular_root(double t, int n);

struct IntervalClassification {
  Classification classification;
  double t;
  double margin;  // = b; non-negative exactly for top extensions
  double bottom;
};

IntervalClassification classify(double b);

enum class NamedExtension { Periodic, AntiPeriodic, Dirichlet };

/// Closed-form spectra. sin_family holds the sine modes, secular_roots the
/// cosine modes; Dirichlet has no cosine modes.
IntervalSpectrum named_extension_spectrum(NamedExtension name, double cutoff);

/// The polynomial part α + ((tα + 3β)/6 − 2α)x − ((tα + β)/2)x² + (tα/3)x³ of a
/// domain element S_F⁻¹(tα(1 − 2x) + β) + α(1 − 2x).
Cubic domain_vector(double t, Complex alpha, Complex beta);

struct SampledFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// ∫₀¹|g′|² + b|g(0)|² by quadrature. Requires the essential condition
/// g(0) + g(1) = 0 to 1e-8 (ErrorKind::Precondition otherwise); the
/// derivative condition is natural for the form and is not checked.
double form_value_direct(const SampledFunction& g, double b);

struct CurveSample {
  double lambda;
  double f_value;
  int interval_index;
};

/// Uniform λ grid on [lo, hi], plus λ = π² when in range; samples within 1e-6
/// of a pole are dropped.
std::vector<CurveSample> secular_curve(double lo, double hi, std::size_t samples);

}  // namespace kvb::interval
