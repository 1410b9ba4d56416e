#include "kvb/point/point_interaction.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "kvb/error.hpp"
#include "kvb/numerics/quadrature.hpp"

namespace kvb::point {
namespace {

constexpr double kPi = std::numbers::pi;

// ∫₀^{π/2} f(θ) dθ, multiplied by the solid-angle factor 4π.
double radial(const std::function<double(double)>& f, double quad_tol) {
  if (!(quad_tol > 0.0)) throw Error(ErrorKind::Domain, "quadrature tolerance must be positive");
  return 4.0 * kPi * num::integrate_adaptive(f, 0.0, kPi / 2.0, quad_tol, quad_tol).value;
}

}  // namespace

double gram_integral(double quad_tol) {
  return radial(
      [](double th) {
        const double s = std::sin(th);
        return s * s;
      },
      quad_tol);
}

double weighted_gram_integral(double mu, double quad_tol) {
  if (!(mu <= kShift)) {
    throw Error(ErrorKind::Domain, "weighted Gram needs mu <= 1, got " + to_text(mu));
  }
  if (mu == kShift) {
    return radial(
        [](double th) {
          const double c = std::cos(th);
          return c * c;
        },
        quad_tol);
  }
  return radial(
      [mu](double th) {
        const double s2 = std::sin(th) * std::sin(th);
        const double c2 = std::cos(th) * std::cos(th);
        return s2 * c2 / ((1.0 - mu) + mu * s2);
      },
      quad_tol);
}

DeficiencyModel deficiency_model(double quad_tol) {
  auto weighted = [quad_tol](double mu) {
    return num::SymmetricMatrix::scalar(weighted_gram_integral(mu, quad_tol));
  };
  return DeficiencyModel(kShift, num::SymmetricMatrix::scalar(gram_integral(quad_tol)),
                         num::Matrix{{1.0}}, weighted);
}

ExtensionParameter extension_parameter(Coupling alpha, const DeficiencyModel& model) {
  if (alpha.is_friedrichs()) return ExtensionParameter::friedrichs();
  return ExtensionParameter::multiplication(model.v_basis(), alpha_to_t(alpha.value()),
                                            model.gram());
}

PointSpectrum point_spectrum(Coupling alpha) {
  PointSpectrum out;
  if (!alpha.is_friedrichs() && alpha.value() < 0.0) {
    const double k = 4.0 * kPi * alpha.value();
    out.eigenvalue = -k * k;
    out.bottom = -k * k;
  }
  return out;
}

PointClassification classify_point(Coupling alpha) {
  if (!alpha.is_friedrichs() && !std::isfinite(alpha.value())) {
    throw Error(ErrorKind::Domain, "alpha must be finite or the Friedrichs marker");
  }
  const PointSpectrum s = point_spectrum(alpha);
  PointClassification out{s.eigenvalue ? Classification::NotTop : Classification::Top,
                          std::nullopt, s.bottom};
  if (!alpha.is_friedrichs()) out.t = alpha_to_t(alpha.value());
  return out;
}

}  // namespace kvb::point
