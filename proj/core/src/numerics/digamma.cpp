#include "kvb/numerics/digamma.hpp"

#include <cmath>

#include "kvb/error.hpp"

namespace kvb::num {

double digamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(ErrorKind::Domain, "digamma requires finite z > 0");

  double shift = 0.0;
  while (z < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  // Σ_{k=1..8} B_{2k} / (2k z^{2k}) in Horner form.
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 -
                                                      inv2 * (1.0 / 12 - inv2 * 3617.0 / 8160)))))));
  return shift + std::log(z) - 0.5 * inv - series;
}

}  // namespace kvb::num
