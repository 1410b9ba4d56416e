#pragma once

// −d²/dx² + ν/x on L²(ℝ⁺), ν > 0. Extensions S_ν^{(α)} are labelled by
// α ∈ ℝ ∪ {∞} through g₁ = 4πα g₀, where g₀ = lim g(r) and
// g₁ = lim r⁻¹(g(r) − g₀(1 + νr ln r)).

#include <cstddef>
#include <optional>

#include "kvb/extension/classification.hpp"

namespace kvb::coulomb {

/// α_ν = (ν/4π)(ln ν + 2γ − 1). Throws ErrorKind::Domain for ν ≤ 0.
double alpha_threshold(double nu);

/// 𝔉_ν(E) = (ν/4π)(ψ(1 + ν/(2√|E|)) + ln(2√|E|) + 2γ − 1 − √|E|/ν), E < 0.
double script_F(double nu, double energy);

/// Scan grid in s = √|E|: 200 points per decade over [1e-10, 1e10].
struct ScanGrid {
  double s_min = 1e-10;
  double s_max = 1e10;
  std::size_t per_decade = 200;
};

/// The negative eigenvalue E₊ with 𝔉_ν(E₊) = α, present iff α < α_ν.
/// Throws ErrorKind::Search when α < α_ν but no sign change shows on the grid.
std::optional<double> coulomb_eigenvalue(double nu, double alpha, const ScanGrid& grid = {});

/// Sign changes of 𝔉_ν(E) − α over a geometric grid of E in [−e_max, −e_min].
std::size_t count_sign_changes(double nu, double alpha, double e_min = 1e-12, double e_max = 1e8,
                               std::size_t per_decade = 200);

struct CoulombClassification {
  Classification classification;  // Friedrichs marker reports Top
  double threshold;
  std::optional<double> eigenvalue;
  double bottom;  // eigenvalue when NotTop, 0 otherwise
};

CoulombClassification classify_coulomb(double nu, Coupling alpha);

}  // namespace kvb::coulomb
