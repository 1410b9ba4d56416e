#include "kvb/coulomb/radial_coulomb.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kvb/error.hpp"
#include "kvb/numerics/digamma.hpp"
#include "kvb/numerics/roots.hpp"

namespace kvb::coulomb {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_nu(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorKind::Domain, "nu must be positive and finite, got " + std::to_string(nu));
  }
}

// 𝔉_ν as a function of s = √|E| > 0.
double script_F_of_s(double nu, double s) {
  return nu / kFourPi *
         (num::digamma(1.0 + nu / (2.0 * s)) + std::log(2.0 * s) + 2.0 * num::kEulerGamma - 1.0 -
          s / nu);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t per_decade) {
  if (!(lo > 0.0 && lo < hi) || per_decade == 0) {
    throw Error(ErrorKind::Domain, "invalid geometric grid");
  }
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade)));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n));
  }
  out.back() = hi;
  return out;
}

}  // namespace

double alpha_threshold(double nu) {
  require_nu(nu);
  return nu / kFourPi * (std::log(nu) + 2.0 * num::kEulerGamma - 1.0);
}

double script_F(double nu, double energy) {
  require_nu(nu);
  if (!(energy < 0.0)) {
    throw Error(ErrorKind::Domain, "script F needs E < 0, got " + std::to_string(energy));
  }
  return script_F_of_s(nu, std::sqrt(-energy));
}

std::optional<double> coulomb_eigenvalue(double nu, double alpha, const ScanGrid& grid) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Domain, "alpha must be finite");
  if (alpha >= alpha_threshold(nu)) return std::nullopt;

  auto h = [nu, alpha](double s) { return script_F_of_s(nu, s) - alpha; };
  const std::vector<double> s = geometric_grid(grid.s_min, grid.s_max, grid.per_decade);
  double prev = h(s.front());
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double cur = h(s[i]);
    if (prev > 0.0 && cur <= 0.0) {
      if (cur == 0.0) return -s[i] * s[i];
      const double root = num::bisect(h, num::Bracket{s[i - 1], s[i], prev, cur},
                                     std::numeric_limits<double>::min());
      return -root * root;
    }
    prev = cur;
  }
  throw Error(ErrorKind::Search, "no sign change of F_nu(E) - alpha on the scan grid (nu=" +
                                     std::to_string(nu) + ", alpha=" + std::to_string(alpha) + ")");
}

std::size_t count_sign_changes(double nu, double alpha, double e_min, double e_max,
                               std::size_t per_decade) {
  require_nu(nu);
  const std::vector<double> e = geometric_grid(e_min, e_max, per_decade);
  std::size_t changes = 0;
  double prev = script_F(nu, -e.front()) - alpha;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double cur = script_F(nu, -e[i]) - alpha;
    if ((prev > 0.0) != (cur > 0.0)) ++changes;
    prev = cur;
  }
  return changes;
}

CoulombClassification classify_coulomb(double nu, Coupling alpha) {
  const double threshold = alpha_threshold(nu);
  if (alpha.is_friedrichs()) return {Classification::Top, threshold, std::nullopt, 0.0};
  const std::optional<double> e = coulomb_eigenvalue(nu, alpha.value());
  if (!e) return {Classification::Top, threshold, std::nullopt, 0.0};
  return {Classification::NotTop, threshold, e, *e};
}

}  // namespace kvb::coulomb
