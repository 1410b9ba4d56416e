#pragma once

// −Δ on L²(ℝ³), minimally defined on C₀^∞(ℝ³ ∖ {0}), shifted by the
// identity so that m(S) = 1. ker S* = span{G₁} with Ĝ₁(p) = 1/(p² + 1)
// (up to normalisation) and V = span{G₁}. Extensions are the point
// interactions −Δ_α, α ∈ ℝ ∪ {∞}.

#include <numbers>
#include <optional>

#include "kvb/extension/classification.hpp"
#include "kvb/extension/deficiency_model.hpp"
#include "kvb/extension/extension.hpp"

namespace kvb::point {

/// Shift applied to −Δ before building the model.
inline constexpr double kShift = 1.0;
inline constexpr double kTq = 2.0;
inline constexpr double kDefaultQuadTol = 1e-12;

/// 4π∫₀^∞ r²/(r² + 1)² dr = ‖G₁‖², evaluated with r = tan θ.
double gram_integral(double quad_tol = kDefaultQuadTol);

/// 4π∫₀^∞ r²/((r² + 1)²(r² + 1 − μ)) dr for μ < 1, and 4π∫₀^∞ dr/(r² + 1)²
/// = ‖(S_F − 1)^{-1/2} G₁‖² at μ = 1. Throws ErrorKind::Domain for μ > 1.
double weighted_gram_integral(double mu, double quad_tol = kDefaultQuadTol);

DeficiencyModel deficiency_model(double quad_tol = kDefaultQuadTol);

/// t = 8πα + 2.
constexpr double alpha_to_t(double alpha) noexcept { return 8.0 * std::numbers::pi * alpha + 2.0; }
constexpr double t_to_alpha(double t) noexcept { return (t - 2.0) / (8.0 * std::numbers::pi); }

/// Multiplication by alpha_to_t(α) on span{G₁}; the Friedrichs marker for α = ∞.
ExtensionParameter extension_parameter(Coupling alpha, const DeficiencyModel& model);

/// Spectrum of the unshifted −Δ_α: essential spectrum [0, ∞) and the simple
/// eigenvalue −(4πα)² for α < 0.
struct PointSpectrum {
  std::optional<double> eigenvalue;
  double essential_min = 0.0;
  double bottom = 0.0;
};

PointSpectrum point_spectrum(Coupling alpha);

struct PointClassification {
  Classification classification;  // Friedrichs marker reports Top
  std::optional<double> t;        // absent for the Friedrichs marker
  double bottom;                  // unshifted
};

/// Top iff α ≥ 0 or α = ∞.
PointClassification classify_point(Coupling alpha);

}  // namespace kvb::point
