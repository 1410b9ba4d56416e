#pragma once

#include <numbers>

namespace kvb::num {

inline constexpr double kEulerGamma = std::numbers::egamma;

/// ψ(z) = Γ′(z)/Γ(z) for z > 0.
///
/// Shifts the argument above 10 with ψ(z) = ψ(z+1) − 1/z, then sums the
/// asymptotic expansion ln z − 1/(2z) − Σ_{k=1..8} B_{2k}/(2k z^{2k}).
/// Relative accuracy is about 1e-15 away from the positive root near 1.4616.
/// Throws ErrorKind::Domain for z ≤ 0 or non-finite z.
double digamma(double z);

}  // namespace kvb::num
