#include "kvb/numerics/roots.hpp"

#include <cmath>
#include <string>

#include "kvb/error.hpp"

namespace kvb::num {
namespace {

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y))
    throw Error(ErrorKind::Evaluation, "non-finite function value at x = " + to_text(x));
  return y;
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

Bracket make_bracket(const RealFunction& f, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorKind::Bracket, "bracket requires lo < hi");
  Bracket b{lo, hi, checked(f, lo), checked(f, hi)};
  if (b.f_lo == 0.0 || b.f_hi == 0.0) return b;  // root sits on an endpoint
  if (!opposite(b.f_lo, b.f_hi))
    throw Error(ErrorKind::Bracket, "f has the same sign at both ends of [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
  return b;
}

double bisect(const RealFunction& f, Bracket b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "bisect: tol must be positive");
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  if (!(b.lo < b.hi) || !opposite(b.f_lo, b.f_hi))
    throw Error(ErrorKind::Bracket, "bisect: invalid bracket");

  double lo = b.lo;
  double hi = b.hi;
  double f_lo = b.f_lo;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // adjacent doubles
    const double f_mid = checked(f, mid);
    if (f_mid == 0.0) return mid;
    if (opposite(f_lo, f_mid)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace kvb::num
